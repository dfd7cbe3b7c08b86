//! Synchronization of complete and partial DFAs.
//!
//! The polynomial pair-merging test decides synchronizability; all exact
//! word searches run a breadth-first search over the subset lattice, which
//! is exponential in the number of states and therefore capped.

use std::collections::VecDeque;

use crate::automata::{Dfa, PartialDfa, StateId, SymbolId};
use crate::error::{Error, Result};
use crate::search::{bfs, Bfs, Limits};

/// Default cap on the number of subsets a search may store.
pub const DEFAULT_SUBSET_CAP: usize = 1 << 21;

/// A set of states as a bitset; equal sets have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(Box<[u64]>);

impl StateSet {
    pub fn empty(n: usize) -> Self {
        StateSet(vec![0; n.div_ceil(64).max(1)].into_boxed_slice())
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for q in 0..n {
            s.insert(q);
        }
        s
    }

    pub fn from_states(n: usize, states: impl IntoIterator<Item = StateId>) -> Self {
        let mut s = Self::empty(n);
        for q in states {
            s.insert(q);
        }
        s
    }

    pub fn insert(&mut self, q: StateId) {
        self.0[q / 64] |= 1 << (q % 64);
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0[q / 64] & (1 << (q % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<StateId> {
        self.iter().collect()
    }
}

/// True iff some word maps every state to one state. Runs a backward
/// breadth-first search from the diagonal of the pair automaton.
pub fn is_synchronizable_dfa(dfa: &Dfa) -> bool {
    let dist = PairDistances::new(dfa);
    let n = dfa.num_states();
    (0..n).all(|p| (p + 1..n).all(|q| dist.get(p, q).is_some()))
}

/// Shortest merging words for all state pairs.
struct PairDistances {
    n: usize,
    dist: Vec<u32>,
}

impl PairDistances {
    const UNREACHED: u32 = u32::MAX;

    fn idx(n: usize, p: StateId, q: StateId) -> usize {
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        p * n + q
    }

    fn new(dfa: &Dfa) -> Self {
        let n = dfa.num_states();
        let k = dfa.num_symbols();
        // inverse[a][r] = states p with δ(p, a) = r
        let mut inverse = vec![vec![Vec::new(); n]; k];
        for p in 0..n {
            for (a, inv) in inverse.iter_mut().enumerate() {
                inv[dfa.next(p, a)].push(p);
            }
        }
        let mut dist = vec![Self::UNREACHED; n * n];
        let mut queue = VecDeque::new();
        for r in 0..n {
            dist[Self::idx(n, r, r)] = 0;
            queue.push_back((r, r));
        }
        while let Some((r, s)) = queue.pop_front() {
            let d = dist[Self::idx(n, r, s)];
            for inv in &inverse {
                for &p in &inv[r] {
                    for &q in &inv[s] {
                        let i = Self::idx(n, p, q);
                        if p != q && dist[i] == Self::UNREACHED {
                            dist[i] = d + 1;
                            queue.push_back((p, q));
                        }
                    }
                }
            }
        }
        PairDistances { n, dist }
    }

    fn get(&self, p: StateId, q: StateId) -> Option<u32> {
        let d = self.dist[Self::idx(self.n, p, q)];
        (d != Self::UNREACHED).then_some(d)
    }

    /// Lexicographically least shortest word merging `p` and `q`.
    fn merging_word(&self, dfa: &Dfa, mut p: StateId, mut q: StateId) -> Option<Vec<SymbolId>> {
        let mut d = self.get(p, q)?;
        let mut word = Vec::with_capacity(d as usize);
        while d > 0 {
            let a = (0..dfa.num_symbols())
                .find(|&a| self.get(dfa.next(p, a), dfa.next(q, a)) == Some(d - 1))
                .expect("distance labels are consistent");
            word.push(a);
            p = dfa.next(p, a);
            q = dfa.next(q, a);
            d -= 1;
        }
        Some(word)
    }
}

/// Greedy pair-merging: repeatedly merge the unmerged pair with the
/// shortest merging word (ties by state order). The result has length at
/// most |Q|³.
pub fn find_sync_word_greedy(dfa: &Dfa) -> Option<Vec<SymbolId>> {
    let dist = PairDistances::new(dfa);
    let mut current: Vec<StateId> = (0..dfa.num_states()).collect();
    let mut word = Vec::new();
    while current.len() > 1 {
        let mut best: Option<(u32, StateId, StateId)> = None;
        for (i, &p) in current.iter().enumerate() {
            for &q in &current[i + 1..] {
                let d = dist.get(p, q)?;
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, p, q));
                }
            }
        }
        let (_, p, q) = best.expect("at least one pair");
        let w = dist.merging_word(dfa, p, q).expect("pair is mergeable");
        current = dfa.image(&current, &w);
        word.extend(w);
    }
    Some(word)
}

fn subset_search<F, G>(
    n: usize,
    letters: usize,
    start: StateSet,
    cap: usize,
    step: F,
    goal: G,
) -> Result<Option<Vec<SymbolId>>>
where
    F: Fn(StateId, SymbolId) -> Option<StateId>,
    G: Fn(&StateSet) -> bool,
{
    let limits = Limits::new(usize::MAX, cap);
    let r = bfs(
        start,
        letters,
        limits,
        |set: &StateSet, a, out| {
            let mut next = StateSet::empty(n);
            for q in set.iter() {
                match step(q, a) {
                    Some(t) => next.insert(t),
                    None => return 1,
                }
            }
            out.push(next);
            0
        },
        goal,
    );
    match r {
        Bfs::Found { word, .. } => Ok(Some(word)),
        Bfs::NotFound(stats) if stats.node_cap_hit => Err(Error::BudgetExceeded(format!(
            "subset search stored {} subsets (cap {cap})",
            stats.nodes_stored
        ))),
        Bfs::NotFound(_) => Ok(None),
    }
}

/// Shortest (then lexicographically least) synchronizing word by
/// breadth-first search over subsets. Exponential; capped.
pub fn shortest_sync_word(dfa: &Dfa) -> Result<Option<Vec<SymbolId>>> {
    shortest_sync_word_capped(dfa, DEFAULT_SUBSET_CAP)
}

pub fn shortest_sync_word_capped(dfa: &Dfa, cap: usize) -> Result<Option<Vec<SymbolId>>> {
    let n = dfa.num_states();
    subset_search(
        n,
        dfa.num_symbols(),
        StateSet::full(n),
        cap,
        |q, a| Some(dfa.next(q, a)),
        |s| s.len() <= 1,
    )
}

/// A shortest word `w` with δ(S0, w) ⊆ S1.
pub fn sync_from_into_subset(dfa: &Dfa, from: &[StateId], into: &[StateId]) -> Result<Option<Vec<SymbolId>>> {
    sync_from_into_subset_capped(dfa, from, into, DEFAULT_SUBSET_CAP)
}

pub fn sync_from_into_subset_capped(
    dfa: &Dfa,
    from: &[StateId],
    into: &[StateId],
    cap: usize,
) -> Result<Option<Vec<SymbolId>>> {
    let n = dfa.num_states();
    check_subset(n, from)?;
    check_subset(n, into)?;
    let target = StateSet::from_states(n, into.iter().copied());
    subset_search(
        n,
        dfa.num_symbols(),
        StateSet::from_states(n, from.iter().copied()),
        cap,
        |q, a| Some(dfa.next(q, a)),
        |s| s.is_subset(&target),
    )
}

/// A shortest word `w` with δ(Q, w) ⊆ S.
pub fn sync_into_subset(dfa: &Dfa, into: &[StateId]) -> Result<Option<Vec<SymbolId>>> {
    let all: Vec<StateId> = (0..dfa.num_states()).collect();
    sync_from_into_subset(dfa, &all, into)
}

fn check_subset(n: usize, s: &[StateId]) -> Result<()> {
    if s.is_empty() {
        return Err(Error::Unsupported("state subsets must be nonempty".into()));
    }
    if let Some(&q) = s.iter().find(|&&q| q >= n) {
        return Err(Error::UnknownState(format!("#{q}")));
    }
    Ok(())
}

/// Careful synchronization: a shortest word that is defined on every state
/// of the current subset at every step and ends in a singleton.
pub fn careful_sync(pdfa: &PartialDfa) -> Result<Option<Vec<SymbolId>>> {
    careful_sync_capped(pdfa, DEFAULT_SUBSET_CAP)
}

pub fn careful_sync_capped(pdfa: &PartialDfa, cap: usize) -> Result<Option<Vec<SymbolId>>> {
    let n = pdfa.num_states();
    subset_search(
        n,
        pdfa.num_symbols(),
        StateSet::full(n),
        cap,
        |q, a| pdfa.next(q, a),
        |s| s.len() <= 1,
    )
}

/// A shortest word leading every state of `from` into one common group of
/// `groups` (given as a group index per state) without using an undefined
/// transition. Used for the arbitrary-stack 0-turn procedure, where a
/// group is "same control state, any top symbol".
pub(crate) fn careful_sync_into_groups(
    pdfa: &PartialDfa,
    from: &[StateId],
    group: &[usize],
    cap: usize,
) -> Result<Option<Vec<SymbolId>>> {
    let n = pdfa.num_states();
    subset_search(
        n,
        pdfa.num_symbols(),
        StateSet::from_states(n, from.iter().copied()),
        cap,
        |q, a| pdfa.next(q, a),
        |s| {
            let mut it = s.iter().map(|q| group[q]);
            match it.next() {
                Some(g) => it.all(|h| h == g),
                None => true,
            }
        },
    )
}

/// Checks |δ(Q, w)| = 1 by simulation.
pub fn is_sync_word(dfa: &Dfa, word: &[SymbolId]) -> bool {
    let all: Vec<StateId> = (0..dfa.num_states()).collect();
    dfa.image(&all, word).len() == 1
}

/// Černý automaton C_n: `a` is the cyclic shift, `b` maps 0 to 1 and fixes
/// every other state. Its shortest synchronizing word has length (n-1)².
pub fn cerny(n: usize) -> Dfa {
    let table: Vec<Vec<StateId>> = (0..n)
        .map(|q| vec![(q + 1) % n, if q == 0 { 1 % n } else { q }])
        .collect();
    Dfa::from_indices(n, &["a", "b"], &table)
}
