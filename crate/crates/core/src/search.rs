//! Breadth-first word search shared by every bounded procedure.
//!
//! Nodes are discovered level by level, letters in declaration order, and
//! the goal is tested on discovery. The first goal found is therefore a
//! shortest witness, and among shortest witnesses the lexicographically
//! least one.

use std::hash::Hash;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::automata::SymbolId;

/// Caps on a bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Longest word considered.
    pub max_len: usize,
    /// Most search nodes stored at once.
    pub max_nodes: usize,
}

impl Limits {
    pub const fn new(max_len: usize, max_nodes: usize) -> Self {
        Limits { max_len, max_nodes }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::new(32, 200_000)
    }
}

/// Frontier statistics reported with every inconclusive verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_stored: usize,
    /// Deepest level fully expanded.
    pub depth_completed: usize,
    pub frontier_size: usize,
    pub pruned: usize,
    pub node_cap_hit: bool,
    pub length_cap_hit: bool,
    /// The reachable space was explored completely.
    pub frontier_exhausted: bool,
    /// Nodes dropped because an auxiliary cap was exceeded (e.g. the
    /// residual-length cap of the transducer search).
    #[serde(default, skip_serializing_if = "is_zero")]
    pub capped: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

/// Verdict of a bounded or exact search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SearchOutcome<W> {
    /// A verified witness.
    Found(W),
    /// The caps were reached (or the reachable space ran out) without a
    /// witness; not a proof of absence.
    Exhausted(SearchStats),
    /// Exact procedures only: no witness exists.
    ProvedNo { reason: String },
}

impl<W> SearchOutcome<W> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn found(&self) -> Option<&W> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn into_found(self) -> Option<W> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> SearchOutcome<V> {
        match self {
            SearchOutcome::Found(w) => SearchOutcome::Found(f(w)),
            SearchOutcome::Exhausted(s) => SearchOutcome::Exhausted(s),
            SearchOutcome::ProvedNo { reason } => SearchOutcome::ProvedNo { reason },
        }
    }
}

pub(crate) enum Bfs<N> {
    Found { word: Vec<SymbolId>, path: Vec<N> },
    NotFound(SearchStats),
}

/// Runs the search. `expand(node, letter, out)` pushes the successors of
/// `node` under `letter` (several for nondeterministic systems) and
/// returns how many candidates it pruned.
pub(crate) fn bfs<N, E, G>(start: N, letters: usize, limits: Limits, mut expand: E, goal: G) -> Bfs<N>
where
    N: Hash + Eq + Clone,
    E: FnMut(&N, SymbolId, &mut Vec<N>) -> usize,
    G: Fn(&N) -> bool,
{
    let mut stats = SearchStats::default();
    let mut seen: IndexSet<N> = IndexSet::new();
    let mut parent: Vec<(u32, u32)> = Vec::new();
    if goal(&start) {
        return Bfs::Found {
            word: Vec::new(),
            path: vec![start],
        };
    }
    seen.insert(start);
    parent.push((u32::MAX, u32::MAX));
    let mut level = 0..1usize;
    let mut buf = Vec::new();
    for depth in 0..limits.max_len {
        for idx in level.clone() {
            let node = seen[idx].clone();
            for a in 0..letters {
                buf.clear();
                stats.pruned += expand(&node, a, &mut buf);
                for succ in buf.drain(..) {
                    if seen.contains(&succ) {
                        continue;
                    }
                    if seen.len() >= limits.max_nodes {
                        stats.node_cap_hit = true;
                        stats.nodes_stored = seen.len();
                        stats.depth_completed = depth;
                        stats.frontier_size = level.end - idx;
                        return Bfs::NotFound(stats);
                    }
                    let is_goal = goal(&succ);
                    seen.insert(succ);
                    parent.push((idx as u32, a as u32));
                    if is_goal {
                        let (word, path) = reconstruct(&seen, &parent, seen.len() - 1);
                        return Bfs::Found { word, path };
                    }
                }
            }
        }
        level = level.end..seen.len();
        stats.depth_completed = depth + 1;
        if level.is_empty() {
            stats.frontier_exhausted = true;
            break;
        }
    }
    stats.nodes_stored = seen.len();
    stats.frontier_size = level.len();
    stats.length_cap_hit = !stats.frontier_exhausted;
    Bfs::NotFound(stats)
}

fn reconstruct<N: Clone + Hash + Eq>(
    seen: &IndexSet<N>,
    parent: &[(u32, u32)],
    mut idx: usize,
) -> (Vec<SymbolId>, Vec<N>) {
    let mut word = Vec::new();
    let mut path = vec![seen[idx].clone()];
    while parent[idx].0 != u32::MAX {
        let (p, a) = parent[idx];
        word.push(a as usize);
        idx = p as usize;
        path.push(seen[idx].clone());
    }
    word.reverse();
    path.reverse();
    (word, path)
}
