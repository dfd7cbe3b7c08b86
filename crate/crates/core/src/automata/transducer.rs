use super::names::{Names, StateId, SymbolId};

/// A total deterministic machine that emits a (possibly empty) output
/// word on every transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentialTransducer {
    pub(crate) states: Names,
    pub(crate) input: Names,
    pub(crate) output: Names,
    pub(crate) delta: Vec<(StateId, Vec<SymbolId>)>,
    pub(crate) initial: Option<StateId>,
    pub(crate) finals: Vec<StateId>,
}

impl SequentialTransducer {
    /// `table[q][a] = (target, output word)`. Panics on ragged tables or
    /// out-of-range indices.
    pub fn from_table(states: Names, input: Names, output: Names, table: Vec<Vec<(StateId, Vec<SymbolId>)>>) -> Self {
        assert_eq!(table.len(), states.len());
        let mut delta = Vec::with_capacity(states.len() * input.len());
        for row in table {
            assert_eq!(row.len(), input.len());
            for (t, out) in row {
                assert!(t < states.len());
                assert!(out.iter().all(|&o| o < output.len()));
                delta.push((t, out));
            }
        }
        SequentialTransducer {
            states,
            input,
            output,
            delta,
            initial: None,
            finals: Vec::new(),
        }
    }

    pub fn states(&self) -> &Names {
        &self.states
    }

    pub fn input(&self) -> &Names {
        &self.input
    }

    pub fn output(&self) -> &Names {
        &self.output
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
    pub fn next(&self, q: StateId, a: SymbolId) -> (StateId, &[SymbolId]) {
        let (t, out) = &self.delta[q * self.input.len() + a];
        (*t, out)
    }

    /// Final state and concatenated output.
    pub fn run(&self, q: StateId, word: &[SymbolId]) -> (StateId, Vec<SymbolId>) {
        let mut out = Vec::new();
        let mut q = q;
        for &a in word {
            let (t, o) = self.next(q, a);
            out.extend_from_slice(o);
            q = t;
        }
        (q, out)
    }

    /// The underlying DFA with outputs erased.
    pub fn underlying_dfa(&self) -> super::Dfa {
        super::Dfa {
            states: self.states.clone(),
            input: self.input.clone(),
            delta: self.delta.iter().map(|(t, _)| *t).collect(),
            initial: self.initial,
            finals: self.finals.clone(),
        }
    }
}

/// Free-function form of [`SequentialTransducer::run`].
pub fn run_transducer(t: &SequentialTransducer, q: StateId, word: &[SymbolId]) -> (StateId, Vec<SymbolId>) {
    t.run(q, word)
}
