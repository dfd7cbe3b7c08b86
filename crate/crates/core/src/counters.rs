//! Multi-counter machines: the product machines built by the 1-turn and
//! blind-counter procedures, and their bounded emptiness search.

use serde::{Deserialize, Serialize};

use crate::automata::{Names, SymbolId};
use crate::search::{bfs, Bfs, Limits, SearchOutcome};

/// Condition a transition places on one counter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CounterTest {
    Any,
    Zero,
    Positive,
}

impl CounterTest {
    pub fn holds(self, value: u64) -> bool {
        match self {
            CounterTest::Any => true,
            CounterTest::Zero => value == 0,
            CounterTest::Positive => value > 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McmTransition {
    /// One test per counter.
    pub guard: Vec<CounterTest>,
    pub target: usize,
    /// Change per counter; a change that would make a counter negative
    /// blocks the transition.
    pub delta: Vec<i64>,
}

/// A real-time machine with `counters` nonnegative counters.
///
/// Acceptance is reaching a final state, with all counters zero when
/// `require_zero` is set. Only the states reachable from the initial state
/// in the control graph are materialized.
#[derive(Clone, Debug)]
pub struct MultiCounterMachine {
    pub state_labels: Vec<String>,
    pub alphabet: Names,
    pub counters: usize,
    pub initial: usize,
    pub finals: Vec<bool>,
    pub require_zero: bool,
    /// Counters that may not increase after their first decrease.
    pub one_turn: Vec<bool>,
    pub nondeterministic: bool,
    /// Letters that only drive the final count-down; witnesses drop them.
    pub pad_symbols: Vec<SymbolId>,
    /// `transitions[state * |alphabet| + letter]`.
    pub transitions: Vec<Vec<McmTransition>>,
}

impl MultiCounterMachine {
    pub fn num_states(&self) -> usize {
        self.state_labels.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.iter().map(Vec::len).sum()
    }

    pub fn outgoing(&self, state: usize, letter: SymbolId) -> &[McmTransition] {
        &self.transitions[state * self.alphabet.len() + letter]
    }

    pub fn accepts_config(&self, c: &McmConfig) -> bool {
        self.finals[c.state as usize] && (!self.require_zero || c.counters.iter().all(|&v| v == 0))
    }

    /// Applies `t` to `c`, or `None` if the guard fails, a counter would
    /// go negative, or a 1-turn counter would increase after decreasing.
    pub fn fire(&self, c: &McmConfig, t: &McmTransition) -> Option<McmConfig> {
        let mut next = McmConfig {
            state: t.target as u32,
            counters: c.counters.clone(),
            decreased: c.decreased,
        };
        for i in 0..self.counters {
            if !t.guard[i].holds(c.counters[i]) {
                return None;
            }
            let d = t.delta[i];
            if d > 0 && self.one_turn[i] && c.decreased & (1 << i) != 0 {
                return None;
            }
            if d < 0 {
                next.decreased |= 1 << i;
            }
            next.counters[i] = c.counters[i].checked_add_signed(d)?;
        }
        Some(next)
    }

    /// All configurations reached by `word` (several if the machine is
    /// nondeterministic).
    pub fn run(&self, word: &[SymbolId]) -> Vec<McmConfig> {
        let mut cur = vec![self.initial_config()];
        for &a in word {
            let mut next = Vec::new();
            for c in &cur {
                for t in self.outgoing(c.state as usize, a) {
                    if let Some(n) = self.fire(c, t) {
                        next.push(n);
                    }
                }
            }
            next.sort();
            next.dedup();
            cur = next;
        }
        cur
    }

    pub fn accepts(&self, word: &[SymbolId]) -> bool {
        self.run(word).iter().any(|c| self.accepts_config(c))
    }

    pub fn initial_config(&self) -> McmConfig {
        McmConfig {
            state: self.initial as u32,
            counters: vec![0; self.counters],
            decreased: 0,
        }
    }
}

/// State, counter values, and which counters have decreased so far.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct McmConfig {
    pub state: u32,
    pub counters: Vec<u64>,
    pub decreased: u64,
}

/// An accepted word with the accepting configuration sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McmWitness {
    pub word: Vec<SymbolId>,
    pub path: Vec<McmConfig>,
}

/// Breadth-first search over configurations for a shortest accepted word.
/// Never concludes that the language is empty: absence within the caps is
/// reported as exhausted, with `frontier_exhausted` set when the reachable
/// configurations ran out.
pub fn mcm_bounded_emptiness(mcm: &MultiCounterMachine, limits: Limits) -> SearchOutcome<McmWitness> {
    assert!(mcm.counters <= 64, "at most 64 counters");
    let r = bfs(
        mcm.initial_config(),
        mcm.alphabet.len(),
        limits,
        |c: &McmConfig, a, out| {
            let mut blocked = 0;
            for t in mcm.outgoing(c.state as usize, a) {
                match mcm.fire(c, t) {
                    Some(n) => out.push(n),
                    None => blocked += 1,
                }
            }
            blocked
        },
        |c| mcm.accepts_config(c),
    );
    match r {
        Bfs::Found { word, path, .. } => SearchOutcome::Found(McmWitness { word, path }),
        Bfs::NotFound(stats) => SearchOutcome::Exhausted(stats),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_state(delta: i64, require_zero: bool) -> MultiCounterMachine {
        MultiCounterMachine {
            state_labels: vec!["s".into()],
            alphabet: Names::from_iter_unique(["x"]).unwrap(),
            counters: 1,
            initial: 0,
            finals: vec![true],
            require_zero,
            one_turn: vec![false],
            nondeterministic: false,
            pad_symbols: vec![],
            transitions: vec![vec![McmTransition {
                guard: vec![CounterTest::Any],
                target: 0,
                delta: vec![delta],
            }]],
        }
    }

    #[test]
    fn initial_accepting_state_gives_empty_word() {
        let m = one_state(1, true);
        let w = mcm_bounded_emptiness(&m, Limits::new(5, 100)).into_found().unwrap();
        assert!(w.word.is_empty());
    }

    #[test]
    fn increment_only_never_accepts_nonempty_words() {
        let mut m = one_state(1, true);
        m.finals = vec![false];
        m.state_labels.push("t".into());
        m.finals.push(true);
        // s --x/+1--> t, t --x/+1--> t
        m.transitions = vec![
            vec![McmTransition {
                guard: vec![CounterTest::Any],
                target: 1,
                delta: vec![1],
            }],
            vec![McmTransition {
                guard: vec![CounterTest::Any],
                target: 1,
                delta: vec![1],
            }],
        ];
        match mcm_bounded_emptiness(&m, Limits::new(20, 1000)) {
            SearchOutcome::Exhausted(s) => assert!(s.length_cap_hit),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn blocks_below_zero_and_after_turn() {
        let m = one_state(-1, false);
        assert!(m.run(&[0]).is_empty());
        let mut m = one_state(1, false);
        m.one_turn = vec![true];
        m.transitions[0].push(McmTransition {
            guard: vec![CounterTest::Positive],
            target: 0,
            delta: vec![-1],
        });
        m.nondeterministic = true;
        // +1 then -1 then +1 is not 1-turn
        let after = m.run(&[0, 0]);
        assert!(after.iter().any(|c| c.counters == vec![0] && c.decreased == 1));
        let c = after.iter().find(|c| c.counters == vec![0]).unwrap();
        assert!(m.fire(c, &m.transitions[0][0]).is_none());
    }
}
