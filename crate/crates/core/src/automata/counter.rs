use std::ops::Deref;

use super::dpda::{Dpda, DpdaBuilder, BOTTOM};
use super::names::{Names, StateId, SymbolId};
use super::validate::Violation;
use crate::error::{Error, Result};

/// The single non-bottom stack symbol of a counter automaton.
pub const COUNTER: usize = 1;

/// A deterministic one-counter automaton: a [`Dpda`] with exactly one
/// non-bottom stack symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dca(Dpda);

impl Dca {
    pub fn new(dpda: Dpda) -> Result<Self> {
        if dpda.counter_symbols() != 1 {
            return Err(Error::Invalid(vec![Violation::NotCounter {
                symbols: dpda.counter_symbols(),
            }]));
        }
        Ok(Dca(dpda))
    }

    /// Builds a DCA from its counter moves: `on_zero[q][a]` and
    /// `on_positive[q][a]` give the target and the counter change. A change
    /// of `-1` on a zero counter pops the bottom symbol.
    pub fn from_moves(
        states: Names,
        input: Names,
        on_zero: &[Vec<(StateId, i64)>],
        on_positive: &[Vec<(StateId, i64)>],
    ) -> Result<Self> {
        let mut b = DpdaBuilder::new(states, input, &["1"]);
        for (q, (zero, positive)) in on_zero.iter().zip(on_positive).enumerate() {
            for (a, (&(t0, d0), &(t1, d1))) in zero.iter().zip(positive).enumerate() {
                if d0 < -1 || d1 < -1 {
                    return Err(Error::Unsupported(format!("counter change below -1 at state {q}")));
                }
                let push = |base: usize, n: i64| -> Vec<usize> {
                    if n < 0 {
                        return Vec::new();
                    }
                    let mut v = vec![base];
                    v.extend(std::iter::repeat_n(COUNTER, n as usize));
                    v
                };
                let p0 = push(BOTTOM, d0);
                let p1 = push(COUNTER, d1);
                b.set(q, a, BOTTOM, t0, p0);
                b.set(q, a, COUNTER, t1, p1);
            }
        }
        Dca::new(b.build()?)
    }

    pub fn as_dpda(&self) -> &Dpda {
        &self.0
    }

    pub fn into_dpda(self) -> Dpda {
        self.0
    }

    /// Counter change and target for reading `a` in `q`, with the counter
    /// currently zero (`zero = true`) or positive.
    ///
    /// Popping the bottom symbol is reported as `None`: the run dies.
    pub fn counter_step(&self, q: StateId, a: SymbolId, zero: bool) -> Option<(StateId, i64)> {
        let top = if zero { BOTTOM } else { COUNTER };
        let t = self.0.transition(q, a, top);
        if zero && t.push.is_empty() {
            return None;
        }
        Some((t.target, t.height_delta() as i64))
    }
}

impl Deref for Dca {
    type Target = Dpda;
    fn deref(&self) -> &Dpda {
        &self.0
    }
}

/// A deterministic partially blind counter automaton: a [`Dca`] whose
/// moves never depend on whether the counter is zero; a run dies when it
/// would decrement below zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dpbca(Dca);

impl Dpbca {
    pub fn new(dca: Dca) -> Result<Self> {
        let v = blindness_violations(&dca);
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        Ok(Dpbca(dca))
    }

    pub fn as_dca(&self) -> &Dca {
        &self.0
    }

    pub fn as_dpda(&self) -> &Dpda {
        self.0.as_dpda()
    }

    /// Target and counter change of the blind move on `(q, a)`.
    pub fn blind_step(&self, q: StateId, a: SymbolId) -> (StateId, i64) {
        let t = self.0.transition(q, a, COUNTER);
        (t.target, t.height_delta() as i64)
    }
}

impl Deref for Dpbca {
    type Target = Dca;
    fn deref(&self) -> &Dca {
        &self.0
    }
}

/// Every (state, symbol) pair on which the two transitions of a DCA do not
/// agree in the way partial blindness requires.
pub fn blindness_violations(dca: &Dca) -> Vec<Violation> {
    let mut out = Vec::new();
    for q in 0..dca.num_states() {
        for a in 0..dca.num_symbols() {
            let on_bottom = dca.transition(q, a, BOTTOM);
            let on_counter = dca.transition(q, a, COUNTER);
            let ok = if on_bottom.target != on_counter.target {
                false
            } else if on_bottom.push.is_empty() && on_counter.push.is_empty() {
                true
            } else if on_bottom.push.first() == Some(&BOTTOM) && on_counter.push.first() == Some(&COUNTER) {
                on_bottom.push[1..] == on_counter.push[1..]
            } else {
                false
            };
            if !ok {
                out.push(Violation::Blindness {
                    at: format!("({}, {})", dca.states().name(q), dca.input().name(a)),
                });
            }
        }
    }
    out
}

/// A deterministic blind counter automaton: the counter ranges over all
/// integers and is never tested during a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dbca {
    pub(crate) states: Names,
    pub(crate) input: Names,
    pub(crate) delta: Vec<(StateId, i8)>,
    pub(crate) initial: Option<StateId>,
    pub(crate) finals: Vec<StateId>,
}

impl Dbca {
    /// `table[q][a] = (target, counter change)`.
    pub fn from_table(states: Names, input: Names, table: &[Vec<(StateId, i8)>]) -> Result<Self> {
        let mut v = Vec::new();
        let mut delta = Vec::new();
        for (q, row) in table.iter().enumerate() {
            for (a, &(t, d)) in row.iter().enumerate() {
                if !(-1..=1).contains(&d) {
                    v.push(Violation::CounterDelta {
                        at: format!("({}, {})", states.name(q), input.name(a)),
                        delta: d as i64,
                    });
                }
                delta.push((t, d));
            }
        }
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        assert_eq!(delta.len(), states.len() * input.len());
        Ok(Dbca {
            states,
            input,
            delta,
            initial: None,
            finals: Vec::new(),
        })
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

    pub fn next(&self, q: StateId, a: SymbolId) -> (StateId, i8) {
        self.delta[q * self.input.len() + a]
    }

    /// Final state and counter value after reading `word` from `(q, 0)`.
    pub fn run(&self, q: StateId, word: &[SymbolId]) -> (StateId, i64) {
        word.iter().fold((q, 0i64), |(q, c), &a| {
            let (t, d) = self.next(q, a);
            (t, c + d as i64)
        })
    }

    /// The state projection, forgetting the counter.
    pub fn underlying_dfa(&self) -> super::Dfa {
        super::Dfa {
            states: self.states.clone(),
            input: self.input.clone(),
            delta: self.delta.iter().map(|&(t, _)| t).collect(),
            initial: self.initial,
            finals: self.finals.clone(),
        }
    }
}
