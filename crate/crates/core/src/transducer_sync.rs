//! Trace synchronization of sequential transducers: one word that sends
//! every state to the same state with the same output.

use serde::{Deserialize, Serialize};

use crate::automata::{SequentialTransducer, StateId, SymbolId};
use crate::search::{bfs, Bfs, SearchOutcome};

/// A verified trace-synchronizing word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceWitness {
    pub word: Vec<SymbolId>,
    pub state: StateId,
    pub output: Vec<SymbolId>,
}

/// Why a word does not trace-synchronize.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum TraceFailure {
    DifferentStates {
        first: StateId,
        second: StateId,
        first_state: StateId,
        second_state: StateId,
    },
    /// Outputs of the runs from `first` and `second` differ at `position`
    /// (0-based; equal to the shorter length if one is a proper prefix).
    DifferentOutputs {
        first: StateId,
        second: StateId,
        position: usize,
    },
}

impl std::fmt::Display for TraceFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TraceFailure::DifferentStates {
                first,
                second,
                first_state,
                second_state,
            } => write!(
                f,
                "runs from states {first} and {second} end in different states {first_state} and {second_state}"
            ),
            TraceFailure::DifferentOutputs {
                first,
                second,
                position,
            } => write!(
                f,
                "runs from states {first} and {second} produce outputs that differ at position {position}"
            ),
        }
    }
}

/// Checks that `word` drives every state to one state with one output.
pub fn check_trace_sync(t: &SequentialTransducer, word: &[SymbolId]) -> Result<TraceWitness, TraceFailure> {
    let runs: Vec<(StateId, Vec<SymbolId>)> = (0..t.num_states()).map(|q| t.run(q, word)).collect();
    let Some((s0, o0)) = runs.first() else {
        return Ok(TraceWitness {
            word: word.to_vec(),
            state: 0,
            output: Vec::new(),
        });
    };
    for (q, (s, o)) in runs.iter().enumerate().skip(1) {
        if o != o0 {
            let position = o
                .iter()
                .zip(o0)
                .position(|(x, y)| x != y)
                .unwrap_or(o.len().min(o0.len()));
            return Err(TraceFailure::DifferentOutputs {
                first: 0,
                second: q,
                position,
            });
        }
        if s != s0 {
            return Err(TraceFailure::DifferentStates {
                first: 0,
                second: q,
                first_state: *s0,
                second_state: *s,
            });
        }
    }
    Ok(TraceWitness {
        word: word.to_vec(),
        state: *s0,
        output: o0.clone(),
    })
}

/// Caps on the trace search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLimits {
    pub max_len: usize,
    pub max_nodes: usize,
    /// Longest pending output a run may be ahead of the slowest run.
    pub max_residual: usize,
}

impl TraceLimits {
    pub const fn new(max_len: usize, max_nodes: usize, max_residual: usize) -> Self {
        TraceLimits {
            max_len,
            max_nodes,
            max_residual,
        }
    }
}

impl Default for TraceLimits {
    fn default() -> Self {
        TraceLimits::new(32, 200_000, 64)
    }
}

/// Set of (state, residual output) pairs, sorted; the longest common
/// prefix of all outputs so far has been stripped.
type Node = Vec<(StateId, Vec<SymbolId>)>;

/// Breadth-first search for a shortest trace-synchronizing word.
///
/// Residuals that are not prefixes of one another can never be reconciled
/// (outputs only grow), so such nodes are pruned. Nodes whose residual
/// exceeds `max_residual` are dropped and counted in `capped`.
pub fn trace_sync_search_bounded(t: &SequentialTransducer, limits: TraceLimits) -> SearchOutcome<TraceWitness> {
    let start: Node = (0..t.num_states()).map(|q| (q, Vec::new())).collect();
    let mut capped = 0;
    let r = bfs(
        start,
        t.num_symbols(),
        crate::search::Limits::new(limits.max_len, limits.max_nodes),
        |node: &Node, a, out| {
            let mut next: Node = node
                .iter()
                .map(|(q, res)| {
                    let (s, o) = t.next(*q, a);
                    let mut r = res.clone();
                    r.extend_from_slice(o);
                    (s, r)
                })
                .collect();
            let Some(longest) = next.iter().map(|(_, r)| r).max_by_key(|r| r.len()).cloned() else {
                out.push(next);
                return 0;
            };
            if !next.iter().all(|(_, r)| longest.starts_with(r)) {
                return 1;
            }
            let common = next.iter().map(|(_, r)| r.len()).min().unwrap_or(0);
            if longest.len() - common > limits.max_residual {
                capped += 1;
                return 0;
            }
            for (_, r) in next.iter_mut() {
                r.drain(..common);
            }
            next.sort();
            next.dedup();
            out.push(next);
            0
        },
        |node| node.iter().all(|(q, r)| *q == node[0].0 && r.is_empty()),
    );
    match r {
        Bfs::Found { word, .. } => {
            SearchOutcome::Found(check_trace_sync(t, &word).expect("search goal implies trace synchronization"))
        }
        Bfs::NotFound(mut stats) => {
            stats.capped = capped;
            SearchOutcome::Exhausted(stats)
        }
    }
}
