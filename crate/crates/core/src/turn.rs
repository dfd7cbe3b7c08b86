//! Exact procedures for finite-turn synchronization.
//!
//! * 0 turns, empty and arbitrary stack models, any DPDA: reductions to
//!   careful synchronization of partial DFAs.
//! * 1 turn, counter automata, all three models: the staged automata
//!   `M_q`, their `|Q|`-fold product with one 1-turn counter per start
//!   state, and a bounded emptiness search reported against the
//!   theoretical length bound.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::automata::{Dca, Dpda, Names, PartialDfa, StackModel, StateId, SymbolId, BOTTOM, COUNTER};
use crate::counters::{mcm_bounded_emptiness, CounterTest, McmTransition, MultiCounterMachine};
use crate::dfa_sync::{careful_sync_capped, careful_sync_into_groups, DEFAULT_SUBSET_CAP};
use crate::error::{Error, Result};
use crate::pda_sync::{check_n_turn_sync_word, SyncWitness};
use crate::search::{Limits, SearchOutcome};

/// Answer of an exact procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "lowercase")]
pub enum Decision<W> {
    Yes(W),
    No,
}

impl<W> Decision<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::Yes(w) => Some(w),
            Decision::No => None,
        }
    }
}

/// The partial DFA of transitions that keep a lone bottom symbol:
/// `δ(q, σ, ⊥) = (q', ⊥)` becomes `q --σ--> q'`.
pub fn restrict_to_bottom(m: &Dpda) -> PartialDfa {
    let mut p = PartialDfa::new(m.states().clone(), m.input().clone());
    for q in 0..m.num_states() {
        for a in 0..m.num_symbols() {
            let t = m.transition(q, a, BOTTOM);
            if t.push == [BOTTOM] {
                p.set(q, a, t.target);
            }
        }
    }
    p
}

/// Exact 0-turn synchronization in the empty or arbitrary stack model.
///
/// Empty: a 0-turn run ending on an empty stack never pushes, so the
/// question is careful synchronization of [`restrict_to_bottom`].
/// Arbitrary: a 0-turn run never pops, so only its top symbol matters;
/// the search runs on the partial DFA over `Q × Γ` with pops undefined,
/// from `Q × {⊥}` into one of the sets `{q} × Γ`.
pub fn decide_0turn(m: &Dpda, model: StackModel) -> Result<Decision<SyncWitness>> {
    decide_0turn_capped(m, model, DEFAULT_SUBSET_CAP)
}

pub fn decide_0turn_capped(m: &Dpda, model: StackModel, cap: usize) -> Result<Decision<SyncWitness>> {
    let word = match model {
        StackModel::Same => {
            return Err(Error::Refused(same_0turn_message(m.counter_symbols() == 1)));
        }
        StackModel::Empty => careful_sync_capped(&restrict_to_bottom(m), cap)?,
        StackModel::Arbitrary => {
            let (pdfa, group) = top_symbol_dfa(m);
            let g = m.num_stack_symbols();
            let from: Vec<StateId> = (0..m.num_states()).map(|q| q * g + BOTTOM).collect();
            careful_sync_into_groups(&pdfa, &from, &group, cap)?
        }
    };
    Ok(match word {
        None => Decision::No,
        Some(w) => {
            Decision::Yes(check_n_turn_sync_word(m, &w, 0, model).expect("0-turn procedure returns verified words"))
        }
    })
}

fn same_0turn_message(is_dca: bool) -> String {
    if is_dca {
        "no exact procedure for 0-turn synchronization of counter automata in the same-stack model \
         is implemented; use `find-word --turns 0` for a bounded search"
            .into()
    } else {
        "0-turn synchronization of DPDAs in the same-stack model is undecidable".into()
    }
}

/// Partial DFA on `Q × Γ` (state `q * |Γ| + γ`) and the control-state
/// group of every element.
fn top_symbol_dfa(m: &Dpda) -> (PartialDfa, Vec<usize>) {
    let g = m.num_stack_symbols();
    let labels = Names::from_iter_unique(
        (0..m.num_states())
            .flat_map(|q| (0..g).map(move |s| (q, s)))
            .map(|(q, s)| format!("({}, {})", m.states().name(q), m.stack_alphabet().name(s))),
    )
    .expect("pairs are distinct");
    let mut p = PartialDfa::new(labels, m.input().clone());
    for q in 0..m.num_states() {
        for top in 0..g {
            for a in 0..m.num_symbols() {
                let t = m.transition(q, a, top);
                if let Some(&new_top) = t.push.last() {
                    p.set(q * g + top, a, t.target * g + new_top);
                }
            }
        }
    }
    let group = (0..m.num_states() * g).map(|v| v / g).collect();
    (p, group)
}

/// A state of `M_q`: base state, stage 1..=4 and parity bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StagedState {
    pub base: StateId,
    pub stage: u8,
    pub parity: u8,
}

impl StagedState {
    pub fn new(base: StateId, stage: u8, parity: u8) -> Self {
        debug_assert!((1..=4).contains(&stage) && parity <= 1);
        StagedState { base, stage, parity }
    }

    fn index(self) -> usize {
        (self.base * 4 + (self.stage as usize - 1)) * 2 + self.parity as usize
    }

    fn from_index(i: usize) -> Self {
        StagedState {
            base: i / 8,
            stage: ((i / 2) % 4) as u8 + 1,
            parity: (i % 2) as u8,
        }
    }
}

impl fmt::Display for StagedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.base, self.stage, self.parity)
    }
}

/// The deterministic 1-turn counter automaton `M_q`.
///
/// It reads spread-out words: odd letters simulate the DCA, even letters
/// only flip the parity bit and confirm the stage. Stage 1 and 4 states
/// at parity 0 certify a zero counter. Undefined moves kill the run.
#[derive(Clone, Debug)]
pub struct StagedDca {
    base_states: Names,
    input: Names,
    initial: StagedState,
    /// `delta[(s * |Σ| + a) * 2 + top]` with top 0 for a zero counter and
    /// 1 for a positive one; the value is (target, counter change).
    delta: Vec<Option<(usize, i64)>>,
}

impl StagedDca {
    pub fn num_states(&self) -> usize {
        self.base_states.len() * 8
    }

    pub fn num_symbols(&self) -> usize {
        self.input.len()
    }

    pub fn initial(&self) -> StagedState {
        self.initial
    }

    pub fn is_final(&self, s: StagedState) -> bool {
        (s.stage == 1 || s.stage == 4) && s.parity == 0
    }

    pub fn label(&self, s: StagedState) -> String {
        format!("({},{},{})", self.base_states.name(s.base), s.stage, s.parity)
    }

    /// Move on `a` with the counter zero (`zero`) or positive.
    pub fn transition(&self, s: StagedState, a: SymbolId, zero: bool) -> Option<(StagedState, i64)> {
        let top = if zero { 0 } else { 1 };
        self.delta[(s.index() * self.input.len() + a) * 2 + top].map(|(t, d)| (StagedState::from_index(t), d))
    }

    /// Final staged state and counter, or `None` if the run dies.
    pub fn run(&self, word: &[SymbolId]) -> Option<(StagedState, u64)> {
        let mut s = self.initial;
        let mut c = 0u64;
        for &a in word {
            let (t, d) = self.transition(s, a, c == 0)?;
            c = c.checked_add_signed(d)?;
            s = t;
        }
        Some((s, c))
    }

    pub fn accepts(&self, word: &[SymbolId]) -> bool {
        self.run(word).is_some_and(|(s, _)| self.is_final(s))
    }
}

/// Builds `M_q` for the DCA `dca` and start state `q`.
pub fn build_mq(dca: &Dca, q: StateId) -> StagedDca {
    let n = dca.num_states();
    let k = dca.num_symbols();
    let mut delta = vec![None; n * 8 * k * 2];
    let mut set = |s: StagedState, a: SymbolId, zero: bool, t: StagedState, d: i64| {
        delta[(s.index() * k + a) * 2 + if zero { 0 } else { 1 }] = Some((t.index(), d));
    };
    let st = StagedState::new;
    for p in 0..n {
        for a in 0..k {
            // Simulation steps on a zero counter.
            let t = dca.transition(p, a, BOTTOM);
            let l = t.push.len() as i64 - 1;
            match l {
                -1 => {}
                0 => {
                    set(st(p, 1, 0), a, true, st(t.target, 1, 1), 0);
                    set(st(p, 4, 0), a, true, st(t.target, 4, 1), 0);
                }
                _ => set(st(p, 1, 0), a, true, st(t.target, 2, 1), l),
            }
            // Simulation steps on a positive counter.
            let t = dca.transition(p, a, COUNTER);
            let l = t.push.len() as i64;
            if l > 0 {
                set(st(p, 2, 0), a, false, st(t.target, 2, 1), l - 1);
            } else {
                set(st(p, 2, 0), a, false, st(t.target, 3, 1), -1);
            }
            if l <= 1 {
                set(st(p, 3, 0), a, false, st(t.target, 3, 1), l - 1);
            }
            // Parity steps.
            set(st(p, 1, 1), a, true, st(p, 1, 0), 0);
            set(st(p, 4, 1), a, true, st(p, 4, 0), 0);
            set(st(p, 2, 1), a, false, st(p, 2, 0), 0);
            set(st(p, 3, 1), a, false, st(p, 3, 0), 0);
            set(st(p, 3, 1), a, true, st(p, 4, 0), 0);
        }
    }
    StagedDca {
        base_states: dca.states().clone(),
        input: dca.input().clone(),
        initial: st(q, 1, 0),
        delta,
    }
}

/// The canonical spread-out variant: `pad` (by default the first letter)
/// after every letter.
pub fn spread_out(word: &[SymbolId], pad: SymbolId) -> Vec<SymbolId> {
    word.iter().flat_map(|&a| [a, pad]).collect()
}

/// Default cap on materialized product states.
pub const DEFAULT_PRODUCT_CAP: usize = 400_000;

/// `(8|Q|)^|Q|`, the nominal state count of the product.
pub fn nominal_product_states(dca: &Dca) -> BigUint {
    let n = dca.num_states() as u32;
    BigUint::from(8 * n).pow(n)
}

/// The `|Q|`-fold product of the `M_q`, one 1-turn counter per start
/// state, with finals for `model`. For the same-stack model a
/// nondeterministic tail `dec` / `acc` on the first letter checks that all
/// counters are equal by decrementing them together.
pub fn build_1turn_product(dca: &Dca, model: StackModel) -> Result<MultiCounterMachine> {
    build_1turn_product_capped(dca, model, DEFAULT_PRODUCT_CAP)
}

pub fn build_1turn_product_capped(dca: &Dca, model: StackModel, cap: usize) -> Result<MultiCounterMachine> {
    let n = dca.num_states();
    let k = dca.num_symbols();
    if n > 64 {
        return Err(Error::Unsupported("at most 64 states".into()));
    }
    let mqs: Vec<StagedDca> = (0..n).map(|q| build_mq(dca, q)).collect();
    let start: Vec<StagedState> = mqs.iter().map(StagedDca::initial).collect();
    let mut index: HashMap<Vec<StagedState>, usize> = HashMap::new();
    let mut tuples = vec![start.clone()];
    index.insert(start, 0);
    let mut transitions: Vec<Vec<McmTransition>> = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        let tuple = tuples[i].clone();
        for a in 0..k {
            let mut out = Vec::new();
            // One combination of zero / positive tests per subset mask.
            let options: Vec<[Option<(StagedState, i64)>; 2]> = tuple
                .iter()
                .zip(&mqs)
                .map(|(&s, m)| [m.transition(s, a, true), m.transition(s, a, false)])
                .collect();
            'combo: for mask in 0u64..(1u64 << n) {
                let mut guard = Vec::with_capacity(n);
                let mut target = Vec::with_capacity(n);
                let mut delta = Vec::with_capacity(n);
                for (j, opt) in options.iter().enumerate() {
                    let positive = mask & (1 << j) != 0;
                    let Some((t, d)) = opt[positive as usize] else {
                        continue 'combo;
                    };
                    guard.push(if positive {
                        CounterTest::Positive
                    } else {
                        CounterTest::Zero
                    });
                    target.push(t);
                    delta.push(d);
                }
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        if tuples.len() >= cap {
                            return Err(Error::BudgetExceeded(format!(
                                "1-turn product has more than {cap} reachable states"
                            )));
                        }
                        index.insert(target.clone(), tuples.len());
                        tuples.push(target);
                        tuples.len() - 1
                    }
                };
                out.push(McmTransition {
                    guard,
                    target: id,
                    delta,
                });
            }
            transitions.push(out);
        }
        i += 1;
    }
    let diagonal = |t: &[StagedState]| t.iter().all(|s| s.base == t[0].base && s.parity == 0);
    let mut finals: Vec<bool> = tuples
        .iter()
        .map(|t| match model {
            StackModel::Empty => diagonal(t) && t.iter().all(|s| s.stage == 1 || s.stage == 4),
            StackModel::Arbitrary => diagonal(t),
            StackModel::Same => false,
        })
        .collect();
    let mut labels: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<String> = t.iter().map(|&s| mqs[0].label(s)).collect();
            format!("[{}]", parts.join(" "))
        })
        .collect();
    let nondeterministic = model == StackModel::Same;
    if nondeterministic {
        let sync = 0;
        let (dec, acc) = (tuples.len(), tuples.len() + 1);
        for (i, t) in tuples.iter().enumerate() {
            if diagonal(t) {
                transitions[i * k + sync].push(McmTransition {
                    guard: vec![CounterTest::Any; n],
                    target: dec,
                    delta: vec![0; n],
                });
            }
        }
        for state in [dec, acc] {
            for a in 0..k {
                let mut out = Vec::new();
                if state == dec && a == sync {
                    out.push(McmTransition {
                        guard: vec![CounterTest::Any; n],
                        target: dec,
                        delta: vec![-1; n],
                    });
                    out.push(McmTransition {
                        guard: vec![CounterTest::Zero; n],
                        target: acc,
                        delta: vec![0; n],
                    });
                }
                transitions.push(out);
            }
        }
        labels.push("dec".into());
        labels.push("acc".into());
        finals.push(false);
        finals.push(true);
    }
    Ok(MultiCounterMachine {
        state_labels: labels,
        alphabet: dca.input().clone(),
        counters: n,
        initial: 0,
        finals,
        require_zero: model != StackModel::Arbitrary,
        one_turn: vec![true; n],
        nondeterministic,
        pad_symbols: Vec::new(),
        transitions,
    })
}

/// The theoretical length bound `(m·s)^(c·m)` for a machine with `m`
/// 1-turn counters and `s` transitions, against the budget searched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Decimal digits of the bound.
    pub bound: String,
    pub counters: usize,
    pub transitions: usize,
    pub exponent_constant: u32,
    /// Longest product word searched.
    pub budget: usize,
    pub budget_covers_bound: bool,
}

impl BoundReport {
    pub fn new(counters: usize, transitions: usize, c: u32, budget: usize) -> Self {
        let bound = BigUint::from((counters * transitions) as u64).pow(c * counters as u32);
        let budget_covers_bound = BigUint::from(budget as u64) >= bound;
        BoundReport {
            bound: bound.to_string(),
            counters,
            transitions,
            exponent_constant: c,
            budget,
            budget_covers_bound,
        }
    }
}

/// Default exponent constant of the length bound.
pub const DEFAULT_BOUND_EXPONENT: u32 = 1;

/// Bounded search for a 1-turn synchronizing word of a DCA via the product
/// machine. The accepted spread-out word is mapped back by taking every
/// other letter and re-verified. A negative answer is proved only when the
/// searched length reaches the theoretical bound without hitting the node
/// cap.
pub fn decide_1turn_dca(
    dca: &Dca,
    model: StackModel,
    limits: Limits,
    exponent: u32,
) -> Result<(SearchOutcome<SyncWitness>, BoundReport)> {
    let product = build_1turn_product(dca, model)?;
    let report = BoundReport::new(product.counters, product.num_transitions(), exponent, limits.max_len);
    let outcome = match mcm_bounded_emptiness(&product, limits) {
        SearchOutcome::Found(w) => {
            let spread = match model {
                StackModel::Same => {
                    let dec = product.num_states() - 2;
                    let i = w
                        .path
                        .iter()
                        .position(|c| c.state as usize == dec)
                        .expect("same-model acceptance passes through the tail");
                    &w.word[..i - 1]
                }
                _ => &w.word[..],
            };
            let word: Vec<SymbolId> = spread.iter().step_by(2).copied().collect();
            let witness = check_n_turn_sync_word(dca, &word, 1, model)
                .expect("words recovered from the product synchronize within one turn");
            SearchOutcome::Found(witness)
        }
        SearchOutcome::Exhausted(stats) if report.budget_covers_bound && !stats.node_cap_hit => {
            SearchOutcome::ProvedNo {
                reason: format!(
                    "no accepted product word up to the length bound {} (exponent constant {exponent})",
                    report.bound
                ),
            }
        }
        other => other.map(|_| unreachable!("found handled above")),
    };
    Ok((outcome, report))
}
