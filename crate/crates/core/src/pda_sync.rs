//! Checking and bounded search of synchronizing words for pushdown
//! automata under the three stack models, optionally with a turn bound.
//!
//! Synchronization of general DPDAs is undecidable, so the search here is
//! a semi-decision: it finds the shortest witness if one exists within the
//! caps and otherwise reports the explored frontier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automata::{Configuration, Direction, Dpda, StackModel, StateId, StrokeTracker, SymbolId, BOTTOM};
use crate::dfa_sync::StateSet;
use crate::search::{bfs, Bfs, Limits, SearchOutcome};

/// A verified synchronizing word with its per-run evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyncWitness {
    pub word: Vec<SymbolId>,
    pub model: StackModel,
    /// Final configuration of the run from each state, in state order.
    pub finals: Vec<Configuration>,
    /// Turns of the run from each state.
    pub turns: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub turn_bound: Option<usize>,
}

impl SyncWitness {
    /// The common final state.
    pub fn state(&self) -> StateId {
        self.finals[0].state
    }
}

/// Why a word does not synchronize.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum SyncFailure {
    /// The run from `start` popped the bottom symbol and could not read
    /// the letter at `position`.
    Stuck {
        start: StateId,
        position: usize,
    },
    /// The run from `start` ends with the bottom symbol popped.
    BottomPopped {
        start: StateId,
    },
    DifferentStates {
        first: StateId,
        second: StateId,
    },
    StackNotEmpty {
        start: StateId,
    },
    DifferentStacks {
        first: StateId,
        second: StateId,
    },
    TooManyTurns {
        start: StateId,
        turns: usize,
        bound: usize,
    },
}

impl fmt::Display for SyncFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyncFailure::Stuck { start, position } => {
                write!(f, "run from state #{start} is stuck at letter {position}")
            }
            SyncFailure::BottomPopped { start } => {
                write!(f, "run from state #{start} ends with the bottom symbol popped")
            }
            SyncFailure::DifferentStates { first, second } => {
                write!(f, "runs from states #{first} and #{second} end in different states")
            }
            SyncFailure::StackNotEmpty { start } => {
                write!(f, "run from state #{start} ends with a nonempty stack")
            }
            SyncFailure::DifferentStacks { first, second } => {
                write!(f, "runs from states #{first} and #{second} end with different stacks")
            }
            SyncFailure::TooManyTurns { start, turns, bound } => {
                write!(f, "run from state #{start} makes {turns} turns (bound {bound})")
            }
        }
    }
}

impl SyncFailure {
    /// Same message with state names instead of indices.
    pub fn describe(&self, m: &Dpda) -> String {
        let n = |q: &StateId| m.states().name(*q).to_string();
        match self {
            SyncFailure::Stuck { start, position } => {
                format!("run from `{}` is stuck at letter {position}", n(start))
            }
            SyncFailure::BottomPopped { start } => {
                format!("run from `{}` ends with the bottom symbol popped", n(start))
            }
            SyncFailure::DifferentStates { first, second } => {
                format!("runs from `{}` and `{}` end in different states", n(first), n(second))
            }
            SyncFailure::StackNotEmpty { start } => {
                format!("run from `{}` ends with a nonempty stack", n(start))
            }
            SyncFailure::DifferentStacks { first, second } => {
                format!("runs from `{}` and `{}` end with different stacks", n(first), n(second))
            }
            SyncFailure::TooManyTurns { start, turns, bound } => {
                format!("run from `{}` makes {turns} turns (bound {bound})", n(start))
            }
        }
    }
}

/// Simulates `word` from every `(q, ⊥)` and checks the model predicate.
pub fn check_sync_word(m: &Dpda, word: &[SymbolId], model: StackModel) -> Result<SyncWitness, SyncFailure> {
    check(m, word, model, None)
}

/// As [`check_sync_word`], additionally requiring every run to consist of
/// at most `n + 1` strokes.
pub fn check_n_turn_sync_word(
    m: &Dpda,
    word: &[SymbolId],
    n: usize,
    model: StackModel,
) -> Result<SyncWitness, SyncFailure> {
    check(m, word, model, Some(n))
}

pub(crate) fn check(
    m: &Dpda,
    word: &[SymbolId],
    model: StackModel,
    bound: Option<usize>,
) -> Result<SyncWitness, SyncFailure> {
    let mut finals = Vec::with_capacity(m.num_states());
    let mut turns = Vec::with_capacity(m.num_states());
    for q in 0..m.num_states() {
        let trace = m.run(q, word);
        if let Some(position) = trace.stuck_at {
            return Err(SyncFailure::Stuck { start: q, position });
        }
        let last = trace.last().clone();
        if last.is_dead() {
            return Err(SyncFailure::BottomPopped { start: q });
        }
        let t = trace.strokes().expect("trace is not stuck").turns;
        if let Some(b) = bound {
            if t > b {
                return Err(SyncFailure::TooManyTurns {
                    start: q,
                    turns: t,
                    bound: b,
                });
            }
        }
        finals.push(last);
        turns.push(t);
    }
    for q in 1..finals.len() {
        if finals[q].state != finals[0].state {
            return Err(SyncFailure::DifferentStates { first: 0, second: q });
        }
    }
    match model {
        StackModel::Empty => {
            if let Some(q) = finals.iter().position(|c| !c.is_empty_stack()) {
                return Err(SyncFailure::StackNotEmpty { start: q });
            }
        }
        StackModel::Same => {
            if let Some(q) = finals.iter().position(|c| c.stack != finals[0].stack) {
                return Err(SyncFailure::DifferentStacks { first: 0, second: q });
            }
        }
        StackModel::Arbitrary => {}
    }
    Ok(SyncWitness {
        word: word.to_vec(),
        model,
        finals,
        turns,
        turn_bound: bound,
    })
}

/// Static facts about a machine used to discard macro-configurations from
/// which no synchronizing continuation exists.
struct Pruner {
    n: usize,
    g: usize,
    /// From `(q, top)` some pop of a non-bottom symbol is reachable
    /// without popping first.
    can_pop: Vec<bool>,
    /// States reachable from `(q, top)` without popping.
    reach_no_pop: Vec<StateSet>,
    /// States reachable from `q` on transitions that keep a lone bottom.
    reach_bottom: Vec<StateSet>,
    /// States reachable from `q` in the control graph.
    reach_any: Vec<StateSet>,
}

impl Pruner {
    fn new(m: &Dpda) -> Self {
        let n = m.num_states();
        let k = m.num_symbols();
        let g = m.num_stack_symbols();
        let idx = |q: StateId, top: usize| q * g + top;
        // Edges of the (state, top) graph for moves that do not pop.
        let mut succ = vec![Vec::new(); n * g];
        let mut pops = vec![false; n * g];
        let mut bottom_succ = vec![Vec::new(); n];
        let mut any_succ = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..k {
                for top in 0..g {
                    let t = m.transition(q, a, top);
                    any_succ[q].push(t.target);
                    match t.push.last() {
                        Some(&new_top) => succ[idx(q, top)].push(idx(t.target, new_top)),
                        None if top != BOTTOM => pops[idx(q, top)] = true,
                        None => {}
                    }
                    if top == BOTTOM && t.push == [BOTTOM] {
                        bottom_succ[q].push(t.target);
                    }
                }
            }
        }
        let closure = |succ: &Vec<Vec<usize>>, v: usize| {
            let mut seen = vec![false; succ.len()];
            let mut stack = vec![v];
            seen[v] = true;
            while let Some(u) = stack.pop() {
                for &w in &succ[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen
        };
        let mut can_pop = Vec::with_capacity(n * g);
        let mut reach_no_pop = Vec::with_capacity(n * g);
        for v in 0..n * g {
            let seen = closure(&succ, v);
            can_pop.push(seen.iter().enumerate().any(|(u, &s)| s && pops[u]));
            reach_no_pop.push(StateSet::from_states(
                n,
                seen.iter().enumerate().filter(|(_, &s)| s).map(|(u, _)| u / g),
            ));
        }
        let as_set = |seen: Vec<bool>| StateSet::from_states(n, (0..n).filter(|&q| seen[q]));
        let reach_bottom = (0..n).map(|q| as_set(closure(&bottom_succ, q))).collect();
        let reach_any = (0..n).map(|q| as_set(closure(&any_succ, q))).collect();
        Pruner {
            n,
            g,
            can_pop,
            reach_no_pop,
            reach_bottom,
            reach_any,
        }
    }

    /// True if no continuation can satisfy the model predicate.
    fn doomed(&self, node: &[(Configuration, StrokeTracker)], model: StackModel, bound: Option<usize>) -> bool {
        let mut possible = StateSet::full(self.n);
        let mut frozen_prefixes: Vec<&[usize]> = Vec::new();
        for (c, phase) in node {
            let top = *c.stack.last().expect("stored configurations are alive");
            let v = c.state * self.g + top;
            let last_upstroke = bound.is_some_and(|b| phase.strokes() == b + 1 && phase.direction() == Direction::Up);
            let frozen = !self.can_pop[v] || last_upstroke;
            let reach = if !frozen {
                &self.reach_any[c.state]
            } else if model == StackModel::Empty {
                if c.height() > 1 {
                    return true;
                }
                &self.reach_bottom[c.state]
            } else {
                &self.reach_no_pop[v]
            };
            possible.intersect_with(reach);
            if possible.is_empty() {
                return true;
            }
            if frozen && model == StackModel::Same {
                frozen_prefixes.push(&c.stack[..c.height().saturating_sub(1).max(1)]);
            }
        }
        if let Some(longest) = frozen_prefixes.iter().max_by_key(|p| p.len()) {
            if frozen_prefixes.iter().any(|p| !longest.starts_with(p)) {
                return true;
            }
        }
        false
    }
}

type Node = Vec<(Configuration, StrokeTracker)>;

/// Breadth-first search over macro-configurations for a shortest (then
/// lexicographically least) synchronizing word.
///
/// Runs that reach the same configuration in the same stroke phase behave
/// identically from then on, so a node stores the set of distinct
/// (configuration, phase) pairs rather than one entry per start state.
/// Nodes with a stuck run, a run over the turn bound, or no possible
/// synchronizing continuation are discarded.
pub fn sync_search_bounded(
    m: &Dpda,
    model: StackModel,
    limits: Limits,
    turn_bound: Option<usize>,
) -> SearchOutcome<SyncWitness> {
    let pruner = Pruner::new(m);
    let start: Node = (0..m.num_states())
        .map(|q| (Configuration::initial(q), StrokeTracker::default()))
        .collect();
    let goal = |node: &Node| goal(node, model);
    if pruner.doomed(&start, model, turn_bound) && !goal(&start) {
        return SearchOutcome::Exhausted(crate::search::SearchStats {
            nodes_stored: 1,
            pruned: 1,
            frontier_exhausted: true,
            ..Default::default()
        });
    }
    let result = bfs(
        start,
        m.num_symbols(),
        limits,
        |node: &Node, a, out| {
            let mut next: Node = Vec::with_capacity(node.len());
            for (c, phase) in node {
                let mut c = c.clone();
                let before = c.height();
                if !m.apply(&mut c, a) || c.is_dead() {
                    return 1;
                }
                let mut phase = *phase;
                if let Some(b) = turn_bound {
                    phase.record(c.height() as isize - before as isize);
                    if phase.turns() > b {
                        return 1;
                    }
                }
                next.push((c, phase));
            }
            next.sort_unstable();
            next.dedup();
            if pruner.doomed(&next, model, turn_bound) && !goal(&next) {
                return 1;
            }
            out.push(next);
            0
        },
        goal,
    );
    match result {
        Bfs::Found { word, .. } => {
            let w = check(m, &word, model, turn_bound).expect("search goal implies the model predicate");
            SearchOutcome::Found(w)
        }
        Bfs::NotFound(stats) => SearchOutcome::Exhausted(stats),
    }
}

fn goal(node: &Node, model: StackModel) -> bool {
    let first = &node[0].0;
    node.iter().all(|(c, _)| {
        c.state == first.state
            && match model {
                StackModel::Empty => c.is_empty_stack(),
                StackModel::Same => c.stack == first.stack,
                StackModel::Arbitrary => true,
            }
    })
}
