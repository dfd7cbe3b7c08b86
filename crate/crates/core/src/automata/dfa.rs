use super::names::{Names, StateId, SymbolId};

/// A complete deterministic finite automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub(crate) states: Names,
    pub(crate) input: Names,
    pub(crate) delta: Vec<StateId>,
    pub(crate) initial: Option<StateId>,
    pub(crate) finals: Vec<StateId>,
}

impl Dfa {
    /// Builds a DFA from a dense table `table[q][a]`.
    ///
    /// Panics if the table is ragged or references an undeclared state;
    /// untrusted input goes through [`crate::automata::validate`].
    pub fn from_table(states: Names, input: Names, table: &[Vec<StateId>]) -> Self {
        assert_eq!(table.len(), states.len(), "one row per state");
        let mut delta = Vec::with_capacity(states.len() * input.len());
        for row in table {
            assert_eq!(row.len(), input.len(), "one column per symbol");
            for &t in row {
                assert!(t < states.len(), "target out of range");
                delta.push(t);
            }
        }
        Dfa {
            states,
            input,
            delta,
            initial: None,
            finals: Vec::new(),
        }
    }

    /// Convenience constructor with states named `0..n` and symbols named
    /// by `letters`.
    pub fn from_indices(n: usize, letters: &[&str], table: &[Vec<StateId>]) -> Self {
        let states = Names::from_iter_unique((0..n).map(|i| i.to_string())).unwrap();
        let input = Names::from_iter_unique(letters.iter().copied()).unwrap();
        Self::from_table(states, input, table)
    }

    pub fn with_initial(mut self, q: StateId) -> Self {
        self.initial = Some(q);
        self
    }

    pub fn with_finals(mut self, finals: Vec<StateId>) -> Self {
        self.finals = finals;
        self
    }

    pub fn states(&self) -> &Names {
        &self.states
    }

    pub fn input(&self) -> &Names {
        &self.input
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.input.len()
    }

    pub fn initial(&self) -> Option<StateId> {
        self.initial
    }

    pub fn finals(&self) -> &[StateId] {
        &self.finals
    }

    #[inline]
    pub fn next(&self, q: StateId, a: SymbolId) -> StateId {
        self.delta[q * self.input.len() + a]
    }

    pub fn run(&self, q: StateId, word: &[SymbolId]) -> StateId {
        word.iter().fold(q, |q, &a| self.next(q, a))
    }

    /// Image of a state set (given as a sorted, deduplicated list).
    pub fn image(&self, set: &[StateId], word: &[SymbolId]) -> Vec<StateId> {
        let mut out: Vec<StateId> = set.iter().map(|&q| self.run(q, word)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn to_partial(&self) -> PartialDfa {
        PartialDfa {
            states: self.states.clone(),
            input: self.input.clone(),
            delta: self.delta.iter().map(|&t| Some(t)).collect(),
            initial: self.initial,
            finals: self.finals.clone(),
        }
    }
}

/// A deterministic finite automaton whose transition function may be
/// undefined on some (state, symbol) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialDfa {
    pub(crate) states: Names,
    pub(crate) input: Names,
    pub(crate) delta: Vec<Option<StateId>>,
    pub(crate) initial: Option<StateId>,
    pub(crate) finals: Vec<StateId>,
}

impl PartialDfa {
    pub fn new(states: Names, input: Names) -> Self {
        let n = states.len() * input.len();
        PartialDfa {
            states,
            input,
            delta: vec![None; n],
            initial: None,
            finals: Vec::new(),
        }
    }

    pub fn set(&mut self, q: StateId, a: SymbolId, target: StateId) {
        let k = self.input.len();
        self.delta[q * k + a] = Some(target);
    }

    pub fn states(&self) -> &Names {
        &self.states
    }

    pub fn input(&self) -> &Names {
        &self.input
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.input.len()
    }

    pub fn initial(&self) -> Option<StateId> {
        self.initial
    }

    pub fn finals(&self) -> &[StateId] {
        &self.finals
    }

    #[inline]
    pub fn next(&self, q: StateId, a: SymbolId) -> Option<StateId> {
        self.delta[q * self.input.len() + a]
    }

    pub fn run(&self, q: StateId, word: &[SymbolId]) -> Option<StateId> {
        word.iter().try_fold(q, |q, &a| self.next(q, a))
    }

    pub fn is_total(&self) -> bool {
        self.delta.iter().all(Option::is_some)
    }

    /// The complete DFA, if every transition is defined.
    pub fn to_total(&self) -> Option<Dfa> {
        let delta = self.delta.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(Dfa {
            states: self.states.clone(),
            input: self.input.clone(),
            delta,
            initial: self.initial,
            finals: self.finals.clone(),
        })
    }
}
