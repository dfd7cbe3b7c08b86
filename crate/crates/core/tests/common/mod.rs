//! Random machine generators and brute-force oracles shared by the
//! integration tests. The oracles only use the raw transition accessors,
//! never the library's own search or checking code.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use syncpda::automata::{Dca, Dfa, Dpbca, Dpda, DpdaBuilder, Names, SequentialTransducer, StateId, SymbolId, BOTTOM};
use syncpda::StackModel;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(prefix: &str, n: usize) -> Names {
    Names::from_iter_unique((0..n).map(|i| format!("{prefix}{i}"))).unwrap()
}

pub fn letters(k: usize) -> Names {
    Names::from_iter_unique((0..k).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

pub fn random_dfa(r: &mut ChaCha8Rng, n: usize, k: usize) -> Dfa {
    let table: Vec<Vec<StateId>> = (0..n).map(|_| (0..k).map(|_| r.gen_range(0..n)).collect()).collect();
    Dfa::from_table(names("q", n), letters(k), &table)
}

/// Random DPDA with `g` non-bottom stack symbols. Pushes are at most two
/// symbols deep; popping the bottom symbol is rare.
pub fn random_dpda(r: &mut ChaCha8Rng, n: usize, g: usize, k: usize) -> Dpda {
    let stack: Vec<String> = (1..=g).map(|i| format!("s{i}")).collect();
    let mut b = DpdaBuilder::new(names("q", n), letters(k), &stack);
    for q in 0..n {
        for a in 0..k {
            for top in 0..=g {
                let target = r.gen_range(0..n);
                let push = random_push(r, top, g);
                b.set(q, a, top, target, push);
            }
        }
    }
    b.build().unwrap()
}

fn random_push(r: &mut ChaCha8Rng, top: usize, g: usize) -> Vec<usize> {
    let roll = r.gen_range(0..10);
    let sym = |r: &mut ChaCha8Rng| r.gen_range(1..=g);
    if top == BOTTOM {
        match roll {
            0 => vec![],
            1..=5 => vec![BOTTOM],
            6..=8 => vec![BOTTOM, sym(r)],
            _ => vec![BOTTOM, sym(r), sym(r)],
        }
    } else {
        match roll {
            0..=2 => vec![],
            3..=5 => vec![top],
            6 => vec![sym(r)],
            7..=8 => vec![top, sym(r)],
            _ => vec![sym(r), sym(r)],
        }
    }
}

fn delta(r: &mut ChaCha8Rng, allow_pop: bool) -> i64 {
    match r.gen_range(0..10) {
        0..=2 if allow_pop => -1,
        0..=5 => 0,
        6..=8 => 1,
        _ => 2,
    }
}

pub fn random_dca(r: &mut ChaCha8Rng, n: usize, k: usize) -> Dca {
    let mut zero = Vec::new();
    let mut pos = Vec::new();
    for _ in 0..n {
        zero.push(
            (0..k)
                .map(|_| {
                    (
                        r.gen_range(0..n),
                        if r.gen_range(0..12) == 0 { -1 } else { delta(r, false) },
                    )
                })
                .collect(),
        );
        pos.push((0..k).map(|_| (r.gen_range(0..n), delta(r, true))).collect());
    }
    Dca::from_moves(names("q", n), letters(k), &zero, &pos).unwrap()
}

/// Random partially blind DCA with moves in {-1, 0, +1}.
pub fn random_dpbca(r: &mut ChaCha8Rng, n: usize, k: usize) -> Dpbca {
    let moves: Vec<Vec<(StateId, i64)>> = (0..n)
        .map(|_| (0..k).map(|_| (r.gen_range(0..n), r.gen_range(-1..=1))).collect())
        .collect();
    dpbca_from_moves(n, k, &moves)
}

pub fn dpbca_from_moves(n: usize, k: usize, moves: &[Vec<(StateId, i64)>]) -> Dpbca {
    Dpbca::new(Dca::from_moves(names("q", n), letters(k), moves, moves).unwrap()).unwrap()
}

/// Counter-free partially blind DCA copying a DFA.
pub fn counter_free(dfa: &Dfa) -> Dpbca {
    let moves: Vec<Vec<(StateId, i64)>> = (0..dfa.num_states())
        .map(|q| (0..dfa.num_symbols()).map(|a| (dfa.next(q, a), 0)).collect())
        .collect();
    Dpbca::new(Dca::from_moves(dfa.states().clone(), dfa.input().clone(), &moves, &moves).unwrap()).unwrap()
}

/// Random transducer with outputs of at most `max_out` symbols over {x, y}.
pub fn random_transducer(r: &mut ChaCha8Rng, n: usize, k: usize, max_out: usize) -> SequentialTransducer {
    let table = (0..n)
        .map(|_| {
            (0..k)
                .map(|_| {
                    let len = r.gen_range(0..=max_out);
                    (r.gen_range(0..n), (0..len).map(|_| r.gen_range(0..2)).collect())
                })
                .collect()
        })
        .collect();
    SequentialTransducer::from_table(
        names("q", n),
        letters(k),
        Names::from_iter_unique(["x", "y"]).unwrap(),
        table,
    )
}

/// All words over `k` letters of length exactly `len`, in lexicographic
/// order.
pub fn words_of_len(k: usize, len: usize) -> Vec<Vec<SymbolId>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// All words of length at most `max`, shortest first, lexicographic
/// within a length.
pub fn words_up_to(k: usize, max: usize) -> impl Iterator<Item = Vec<SymbolId>> {
    (0..=max).flat_map(move |l| words_of_len(k, l))
}

pub fn dfa_image(dfa: &Dfa, from: &[StateId], w: &[SymbolId]) -> Vec<StateId> {
    let mut v: Vec<StateId> = from.iter().map(|&q| w.iter().fold(q, |q, &a| dfa.next(q, a))).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Shortest, lexicographically least word with `δ(from, w) ⊆ into`.
pub fn naive_from_into(dfa: &Dfa, from: &[StateId], into: &[StateId], max: usize) -> Option<Vec<SymbolId>> {
    words_up_to(dfa.num_symbols(), max).find(|w| dfa_image(dfa, from, w).iter().all(|q| into.contains(q)))
}

pub fn naive_shortest_sync(dfa: &Dfa, max: usize) -> Option<Vec<SymbolId>> {
    let all: Vec<StateId> = (0..dfa.num_states()).collect();
    words_up_to(dfa.num_symbols(), max).find(|w| dfa_image(dfa, &all, w).len() == 1)
}

/// Outcome of simulating a pushdown run with plain vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimRun {
    pub state: StateId,
    pub stack: Vec<usize>,
    pub heights: Vec<usize>,
}

/// Independent pushdown simulator: `None` if the run reads a letter after
/// the bottom symbol was popped or ends with it popped.
pub fn sim_pda(m: &Dpda, q: StateId, w: &[SymbolId]) -> Option<SimRun> {
    let mut state = q;
    let mut stack = vec![BOTTOM];
    let mut heights = vec![1];
    for &a in w {
        let top = *stack.last()?;
        let t = m.transition(state, a, top);
        stack.pop();
        stack.extend_from_slice(&t.push);
        state = t.target;
        heights.push(stack.len());
    }
    if stack.is_empty() {
        return None;
    }
    Some(SimRun { state, stack, heights })
}

/// Turns of a height sequence: the number of sign changes among the
/// nonzero height differences.
pub fn turns_of(heights: &[usize]) -> usize {
    let signs: Vec<i8> = heights
        .windows(2)
        .filter_map(|p| match p[1].cmp(&p[0]) {
            std::cmp::Ordering::Greater => Some(1),
            std::cmp::Ordering::Less => Some(-1),
            std::cmp::Ordering::Equal => None,
        })
        .collect();
    signs.windows(2).filter(|p| p[0] != p[1]).count()
}

/// Model predicate evaluated on independently simulated runs.
pub fn naive_pda_syncs(m: &Dpda, w: &[SymbolId], model: StackModel, turn_bound: Option<usize>) -> bool {
    let mut runs = Vec::new();
    for q in 0..m.num_states() {
        match sim_pda(m, q, w) {
            Some(r) => runs.push(r),
            None => return false,
        }
    }
    if let Some(b) = turn_bound {
        if runs.iter().any(|r| turns_of(&r.heights) > b) {
            return false;
        }
    }
    let first = &runs[0];
    runs.iter().all(|r| {
        r.state == first.state
            && match model {
                StackModel::Empty => r.stack == [BOTTOM],
                StackModel::Same => r.stack == first.stack,
                StackModel::Arbitrary => true,
            }
    })
}

pub fn naive_pda_shortest(m: &Dpda, model: StackModel, max: usize, turn_bound: Option<usize>) -> Option<Vec<SymbolId>> {
    words_up_to(m.num_symbols(), max).find(|w| naive_pda_syncs(m, w, model, turn_bound))
}

pub fn naive_trace_syncs(t: &SequentialTransducer, w: &[SymbolId]) -> bool {
    let run = |q: StateId| {
        let mut s = q;
        let mut out = Vec::new();
        for &a in w {
            let (n, o) = t.next(s, a);
            out.extend_from_slice(o);
            s = n;
        }
        (s, out)
    };
    let first = run(0);
    (1..t.num_states()).all(|q| run(q) == first)
}

pub fn naive_trace_shortest(t: &SequentialTransducer, max: usize) -> Option<Vec<SymbolId>> {
    words_up_to(t.num_symbols(), max).find(|w| naive_trace_syncs(t, w))
}

/// Integer-counter simulation of a partially blind DCA: `None` as soon as
/// the counter would go negative.
pub fn sim_blind(m: &Dpbca, q: StateId, w: &[SymbolId]) -> Option<(StateId, i64)> {
    let mut s = q;
    let mut c = 0i64;
    for &a in w {
        let t = m.transition(s, a, syncpda::automata::COUNTER);
        c += t.push.len() as i64 - 1;
        if c < 0 {
            return None;
        }
        s = t.target;
    }
    Some((s, c))
}

pub fn sym(m: &Names, w: &[&str]) -> Vec<SymbolId> {
    m.resolve(w).unwrap()
}
