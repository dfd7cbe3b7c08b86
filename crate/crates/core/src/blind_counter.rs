//! Synchronization of (partially) blind counter automata.
//!
//! A partially blind automaton is run as one product with a counter per
//! start state; synchronization becomes emptiness of that product, which
//! is searched with bounds. Pad letters after the diagonal count the
//! counters down for the same-stack and arbitrary models.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::automata::{Dbca, Dpbca, StackModel, StateId, SymbolId};
use crate::counters::{mcm_bounded_emptiness, CounterTest, McmTransition, MultiCounterMachine};
use crate::dfa_sync::{find_sync_word_greedy, is_synchronizable_dfa};
use crate::error::{Error, Result};
use crate::pda_sync::{check_sync_word, SyncWitness};
use crate::search::{bfs, Bfs, Limits, SearchOutcome};
use crate::turn::Decision;

/// Prefix of the fresh letters that drive the count-down phase.
pub const PAD_PREFIX: &str = "pad:";

/// Name of the pad letter decrementing counter `i` (1-based).
pub fn pad_symbol(i: usize) -> String {
    format!("{PAD_PREFIX}{i}")
}

/// Name of the pad letter decrementing all counters at once.
pub const PAD_ALL: &str = "pad:all";

/// Default cap on materialized product states.
pub const DEFAULT_BLIND_PRODUCT_CAP: usize = 400_000;

/// The `|Q|`-fold product of a partially blind automaton, one counter per
/// start state, finals on the diagonal.
///
/// Empty: accept on the diagonal with zero counters. Arbitrary: from a
/// diagonal state `q` the letter `pad:i` decrements counter `i` and enters
/// the final drain state of `q`, which keeps reading pads. Same: one letter
/// `pad:all` decrements every counter at once. Acceptance always requires
/// zero counters.
pub fn build_blind_product(m: &Dpbca, model: StackModel) -> Result<MultiCounterMachine> {
    build_blind_product_capped(m, model, DEFAULT_BLIND_PRODUCT_CAP)
}

pub fn build_blind_product_capped(m: &Dpbca, model: StackModel, cap: usize) -> Result<MultiCounterMachine> {
    let n = m.num_states();
    if n > 64 {
        return Err(Error::Unsupported("at most 64 states".into()));
    }
    if let Some(bad) = m.input().iter().find(|s| s.starts_with(PAD_PREFIX)) {
        return Err(Error::Unsupported(format!(
            "input letter `{bad}` uses the reserved prefix `{PAD_PREFIX}`"
        )));
    }
    let mut alphabet = m.input().clone();
    let pads: Vec<SymbolId> = match model {
        StackModel::Empty => Vec::new(),
        StackModel::Arbitrary => (1..=n).map(|i| alphabet.push(pad_symbol(i))).collect(),
        StackModel::Same => vec![alphabet.push(PAD_ALL)],
    };
    let k = m.num_symbols();
    let width = alphabet.len();

    let start: Vec<StateId> = (0..n).collect();
    let mut index: HashMap<Vec<StateId>, usize> = HashMap::new();
    let mut tuples = vec![start.clone()];
    index.insert(start, 0);
    let mut transitions: Vec<Vec<McmTransition>> = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        let tuple = tuples[i].clone();
        for a in 0..k {
            let (target, delta): (Vec<StateId>, Vec<i64>) = tuple.iter().map(|&q| m.blind_step(q, a)).unzip();
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    if tuples.len() >= cap {
                        return Err(Error::BudgetExceeded(format!(
                            "blind product has more than {cap} reachable states"
                        )));
                    }
                    index.insert(target.clone(), tuples.len());
                    tuples.push(target);
                    tuples.len() - 1
                }
            };
            transitions.push(vec![McmTransition {
                guard: vec![CounterTest::Any; n],
                target: id,
                delta,
            }]);
        }
        for _ in k..width {
            transitions.push(Vec::new());
        }
        i += 1;
    }
    let diagonal: Vec<Option<StateId>> = tuples
        .iter()
        .map(|t| t.iter().all(|&q| q == t[0]).then_some(t[0]))
        .collect();
    let mut labels: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().map(|&q| m.states().name(q)).collect();
            format!("[{}]", parts.join(" "))
        })
        .collect();
    let mut finals: Vec<bool> = diagonal.iter().map(Option::is_some).collect();

    if !pads.is_empty() {
        // One drain state per base state that occurs on the diagonal.
        let mut drain: HashMap<StateId, usize> = HashMap::new();
        for (i, d) in diagonal.iter().enumerate() {
            let Some(q) = *d else { continue };
            let next = tuples.len() + drain.len();
            let id = *drain.entry(q).or_insert(next);
            for (j, &pad) in pads.iter().enumerate() {
                transitions[i * width + pad].push(pad_move(n, model, j, id));
            }
        }
        let mut drains: Vec<(StateId, usize)> = drain.into_iter().collect();
        drains.sort_by_key(|&(_, id)| id);
        for (q, id) in drains {
            debug_assert_eq!(id, labels.len());
            labels.push(format!("drain({})", m.states().name(q)));
            finals.push(true);
            for a in 0..width {
                let mut out = Vec::new();
                if let Some(j) = pads.iter().position(|&p| p == a) {
                    out.push(pad_move(n, model, j, id));
                }
                transitions.push(out);
            }
        }
    }

    Ok(MultiCounterMachine {
        state_labels: labels,
        alphabet,
        counters: n,
        initial: 0,
        finals,
        require_zero: true,
        one_turn: vec![false; n],
        nondeterministic: false,
        pad_symbols: pads,
        transitions,
    })
}

fn pad_move(n: usize, model: StackModel, j: usize, target: usize) -> McmTransition {
    let delta = match model {
        StackModel::Same => vec![-1; n],
        _ => (0..n).map(|i| if i == j { -1 } else { 0 }).collect(),
    };
    McmTransition {
        guard: vec![CounterTest::Any; n],
        target,
        delta,
    }
}

/// Bounded search for a synchronizing word of a partially blind automaton
/// through its product. Pad letters are stripped from the accepted word and
/// the rest is re-verified on the automaton itself.
pub fn dpbca_sync_bounded(m: &Dpbca, model: StackModel, limits: Limits) -> Result<SearchOutcome<SyncWitness>> {
    let product = build_blind_product(m, model)?;
    Ok(mcm_bounded_emptiness(&product, limits).map(|w| {
        let word: Vec<SymbolId> = w
            .word
            .into_iter()
            .filter(|a| !product.pad_symbols.contains(a))
            .collect();
        check_sync_word(m.as_dpda(), &word, model).expect("words accepted by the blind product synchronize")
    }))
}

/// Exact decision for a blind automaton in the arbitrary model: the counter
/// is never tested, so this is synchronization of the underlying DFA.
pub fn decide_dbca_arbitrary(m: &Dbca) -> Decision<Vec<SymbolId>> {
    let dfa = m.underlying_dfa();
    if !is_synchronizable_dfa(&dfa) {
        return Decision::No;
    }
    Decision::Yes(find_sync_word_greedy(&dfa).expect("synchronizable DFAs have a greedy word"))
}

/// The result of running a word from every state of a blind automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DbcaWitness {
    pub word: Vec<SymbolId>,
    pub model: StackModel,
    pub state: StateId,
    /// Final counter of the run from each state.
    pub counters: Vec<i64>,
}

/// Checks a word against a blind automaton: every run ends in one state,
/// and the counters are all zero (empty), all equal (same) or unconstrained.
pub fn check_dbca_sync_word(m: &Dbca, word: &[SymbolId], model: StackModel) -> Option<DbcaWitness> {
    let ends: Vec<(StateId, i64)> = (0..m.num_states()).map(|q| m.run(q, word)).collect();
    let state = ends.first().map_or(0, |e| e.0);
    let counters: Vec<i64> = ends.iter().map(|e| e.1).collect();
    let ok = ends.iter().all(|e| e.0 == state)
        && match model {
            StackModel::Empty => counters.iter().all(|&c| c == 0),
            StackModel::Same => counters.iter().all(|&c| c == counters[0]),
            StackModel::Arbitrary => true,
        };
    ok.then(|| DbcaWitness {
        word: word.to_vec(),
        model,
        state,
        counters,
    })
}

/// Breadth-first search for a shortest synchronizing word of a blind
/// automaton. Nodes are the state tuple with absolute counters (empty),
/// counters relative to the first run (same), or no counters (arbitrary).
pub fn dbca_sync_bounded(m: &Dbca, model: StackModel, limits: Limits) -> SearchOutcome<DbcaWitness> {
    let n = m.num_states();
    let start: (Vec<StateId>, Vec<i64>) = ((0..n).collect(), vec![0; n]);
    let normalize = |c: &mut Vec<i64>| match model {
        StackModel::Empty => {}
        StackModel::Same => {
            let base = c.first().copied().unwrap_or(0);
            c.iter_mut().for_each(|v| *v -= base);
        }
        StackModel::Arbitrary => c.clear(),
    };
    let mut start = start;
    normalize(&mut start.1);
    let r = bfs(
        start,
        m.num_symbols(),
        limits,
        |(states, counters), a, out| {
            let mut s = Vec::with_capacity(n);
            let mut c = Vec::with_capacity(n);
            for (i, &q) in states.iter().enumerate() {
                let (t, d) = m.next(q, a);
                s.push(t);
                c.push(counters.get(i).copied().unwrap_or(0) + d as i64);
            }
            normalize(&mut c);
            out.push((s, c));
            0
        },
        |(states, counters)| states.iter().all(|&q| q == states[0]) && counters.iter().all(|&c| c == 0),
    );
    match r {
        Bfs::Found { word, .. } => {
            SearchOutcome::Found(check_dbca_sync_word(m, &word, model).expect("search goal implies synchronization"))
        }
        Bfs::NotFound(stats) => SearchOutcome::Exhausted(stats),
    }
}
