//! Compilers for the constructions used in the undecidability and
//! hardness arguments: PCP acceptors, the synchronization gadget, the
//! 0-turn same-stack machine, the subset gadget, and the transducer
//! variant. They double as generators of structured test instances.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automata::{
    Dca, Dfa, Dpda, DpdaBuilder, Names, SequentialTransducer, StackSym, StateId, SymbolId, Transition, BOTTOM,
};
use crate::error::{Error, Result};
use crate::format::Provenance;

/// Fresh reset letter of the gadgets.
pub const SYNC_A: &str = "sync:a";
/// Fresh commit letter of the two-acceptor gadget.
pub const SYNC_B: &str = "sync:b";

/// Input symbol for the marked index `i` (1-based).
pub fn index_symbol(i: usize) -> String {
    format!("idx:{i}")
}

/// A Post Correspondence Problem instance over {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcpInstance {
    a: Vec<String>,
    b: Vec<String>,
}

impl PcpInstance {
    /// Rejects unequal list lengths, empty lists, empty tiles and letters
    /// other than 0 and 1.
    pub fn new<S: Into<String>>(a: Vec<S>, b: Vec<S>) -> Result<Self> {
        let a: Vec<String> = a.into_iter().map(Into::into).collect();
        let b: Vec<String> = b.into_iter().map(Into::into).collect();
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::Parse(format!(
                "PCP lists must be nonempty and of equal length (got {} and {})",
                a.len(),
                b.len()
            )));
        }
        for (list, tiles) in [("A", &a), ("B", &b)] {
            for (i, t) in tiles.iter().enumerate() {
                if t.is_empty() {
                    return Err(Error::Parse(format!("tile {list}{} is empty", i + 1)));
                }
                if !t.chars().all(|c| c == '0' || c == '1') {
                    return Err(Error::Parse(format!(
                        "tile {list}{} = `{t}` is not over {{0,1}}",
                        i + 1
                    )));
                }
            }
        }
        Ok(PcpInstance { a, b })
    }

    /// Parses comma-separated tile lists such as `10,1` and `1,01`.
    pub fn parse(a: &str, b: &str) -> Result<Self> {
        let split = |s: &str| s.split(',').map(|t| t.trim().to_string()).collect::<Vec<_>>();
        Self::new(split(a), split(b))
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn a(&self) -> &[String] {
        &self.a
    }

    pub fn b(&self) -> &[String] {
        &self.b
    }

    /// Whether the 1-based index sequence is a solution.
    pub fn is_solution(&self, indices: &[usize]) -> bool {
        !indices.is_empty()
            && indices.iter().all(|&i| (1..=self.len()).contains(&i))
            && self.top(indices) == self.bottom(indices)
    }

    /// Concatenation of the A tiles.
    pub fn top(&self, indices: &[usize]) -> String {
        indices.iter().map(|&i| self.a[i - 1].as_str()).collect()
    }

    /// Concatenation of the B tiles.
    pub fn bottom(&self, indices: &[usize]) -> String {
        indices.iter().map(|&i| self.b[i - 1].as_str()).collect()
    }

    fn source(&self) -> serde_json::Value {
        serde_json::json!({ "pcp": { "a": self.a, "b": self.b } })
    }
}

impl fmt::Display for PcpInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A=({}) B=({})", self.a.join(","), self.b.join(","))
    }
}

/// Shortest solution with at most `max_indices` tiles, lexicographically
/// least among the shortest; 1-based indices.
pub fn pcp_brute_solve(pcp: &PcpInstance, max_indices: usize) -> Option<Vec<usize>> {
    fn extend(pcp: &PcpInstance, seq: &mut Vec<usize>, top: &str, bottom: &str, remaining: usize) -> bool {
        if !seq.is_empty() && top == bottom {
            return remaining == 0;
        }
        if remaining == 0 {
            return false;
        }
        for i in 1..=pcp.len() {
            let t = format!("{top}{}", pcp.a[i - 1]);
            let b = format!("{bottom}{}", pcp.b[i - 1]);
            if !(t.starts_with(&b) || b.starts_with(&t)) {
                continue;
            }
            seq.push(i);
            if extend(pcp, seq, &t, &b, remaining - 1) {
                return true;
            }
            seq.pop();
        }
        false
    }
    (1..=max_indices).find_map(|k| {
        let mut seq = Vec::with_capacity(k);
        extend(pcp, &mut seq, "", "", k).then_some(seq)
    })
}

fn names<S: AsRef<str>>(list: impl IntoIterator<Item = S>) -> Names {
    Names::from_iter_unique(list.into_iter().map(|s| s.as_ref().to_string())).expect("construction names are unique")
}

fn pcp_letters(pcp: &PcpInstance, extra: &[&str]) -> Names {
    let mut v: Vec<String> = ["0", "1", "#"].iter().map(|s| s.to_string()).collect();
    v.extend(extra.iter().map(|s| s.to_string()));
    v.extend((1..=pcp.len()).map(index_symbol));
    names(v)
}

/// One tile-reading chain: `t{i}:a{j}`, `t{i}:sep`, `t{i}:b{j}`,
/// `t{i}:end`, reading `a_i # b_i` and then `#` back to the hub.
struct Chain {
    /// (state name, expected letter, pushes the letter)
    steps: Vec<(String, char, bool)>,
    end: String,
}

fn chain(prefix: &str, i: usize, a: &str, b: &str, push_a: bool) -> Chain {
    let mut steps = Vec::new();
    for (j, c) in a.chars().enumerate() {
        steps.push((format!("{prefix}t{i}:a{j}"), c, push_a));
    }
    steps.push((format!("{prefix}t{i}:sep"), '#', false));
    for (j, c) in b.chars().enumerate() {
        steps.push((format!("{prefix}t{i}:b{j}"), c, !push_a));
    }
    Chain {
        steps,
        end: format!("{prefix}t{i}:end"),
    }
}

fn chains(pcp: &PcpInstance, prefix: &str, push_a: bool) -> Vec<Chain> {
    (1..=pcp.len())
        .map(|i| chain(prefix, i, &pcp.a[i - 1], &pcp.b[i - 1], push_a))
        .collect()
}

/// Wires chains into `builder`: `hubs` go to the chain entries on the
/// index letters, each chain's last `#` goes to `back`.
fn wire_chains(bd: &mut DpdaBuilder, chains: &[Chain], hubs: &[StateId], back: StateId) {
    let g = bd.stack_alphabet().len();
    for (i, ch) in chains.iter().enumerate() {
        let entry = bd.state(&ch.steps[0].0);
        let idx = bd.symbol(&index_symbol(i + 1));
        for &h in hubs {
            for top in 0..g {
                bd.set(h, idx, top, entry, vec![top]);
            }
        }
        for (k, (name, c, push)) in ch.steps.iter().enumerate() {
            let q = bd.state(name);
            let next = match ch.steps.get(k + 1) {
                Some((n, _, _)) => bd.state(n),
                None => bd.state(&ch.end),
            };
            let letter = bd.symbol(&c.to_string());
            let pushed = if *push {
                Some(bd.stack_symbol(&c.to_string()))
            } else {
                None
            };
            for top in 0..g {
                let mut p = vec![top];
                p.extend(pushed);
                bd.set(q, letter, top, next, p);
            }
        }
        let end = bd.state(&ch.end);
        let hash = bd.symbol("#");
        for top in 0..g {
            bd.set(end, hash, top, back, vec![top]);
        }
    }
}

fn pcp_acceptor(pcp: &PcpInstance, push_a: bool) -> Dpda {
    let chains = chains(pcp, "", push_a);
    let mut state_names = vec![
        "q0".to_string(),
        "q0bar".into(),
        "check".into(),
        "fail".into(),
        "final".into(),
    ];
    for ch in &chains {
        state_names.extend(ch.steps.iter().map(|s| s.0.clone()));
        state_names.push(ch.end.clone());
    }
    let mut bd = DpdaBuilder::new(names(&state_names), pcp_letters(pcp, &["$"]), &["0", "1"]);
    let (q0, q0bar, check, fail, fin) = (
        bd.state("q0"),
        bd.state("q0bar"),
        bd.state("check"),
        bd.state("fail"),
        bd.state("final"),
    );
    wire_chains(&mut bd, &chains, &[q0, q0bar], q0bar);
    let dollar = bd.symbol("$");
    for top in 0..3 {
        bd.set(q0bar, dollar, top, check, vec![top]);
    }
    for c in ["0", "1"] {
        let (letter, sym) = (bd.symbol(c), bd.stack_symbol(c));
        bd.set(check, letter, sym, check, vec![]);
    }
    bd.set(check, dollar, BOTTOM, fin, vec![BOTTOM]);
    bd.fill_undefined(|_, _, top| Transition::new(fail, vec![top]));
    bd.initial(q0).finals(vec![fin]);
    bd.build().expect("acceptor construction is a valid DPDA")
}

/// Real-time 1-turn DPDAs `(M_A, M_B)` whose languages intersect iff the
/// instance has a solution. `M_A` pushes the A tiles and checks them in
/// reverse after `$`; `M_B` does the same for the B tiles.
pub fn pcp_to_1turn_acceptors(pcp: &PcpInstance) -> (Dpda, Dpda) {
    (pcp_acceptor(pcp, true), pcp_acceptor(pcp, false))
}

/// The word of both acceptors encoding the index sequence `indices`
/// (1-based) with the given check block.
pub fn acceptor_word(pcp: &PcpInstance, indices: &[usize], check: &str) -> Vec<String> {
    let mut w = Vec::new();
    for &i in indices {
        w.push(index_symbol(i));
        w.extend(pcp.a[i - 1].chars().map(String::from));
        w.push("#".into());
        w.extend(pcp.b[i - 1].chars().map(String::from));
        w.push("#".into());
    }
    w.push("$".into());
    w.extend(check.chars().map(String::from));
    w.push("$".into());
    w
}

/// Word accepted by both acceptors for a solution.
pub fn common_acceptor_word(pcp: &PcpInstance, solution: &[usize]) -> Vec<String> {
    let check: String = pcp.top(solution).chars().rev().collect();
    acceptor_word(pcp, solution, &check)
}

/// Combines two acceptors into a machine that is synchronizable iff they
/// accept a common word: after the fresh letter `sync:a` resets both
/// components on an empty stack, a common accepted word followed by
/// `sync:b` sends every run to the sink `qs`.
///
/// States are renamed `1/…` and `2/…`; the fresh states are `qf:1`,
/// `qf:2` and `qs`. If both inputs are counter automata the result is one
/// too, with counter symbol `1`.
pub fn combine_sync_gadget(m1: &Dpda, m2: &Dpda) -> Result<Dpda> {
    let mut letters: Vec<&str> = m1.input().iter().collect();
    let mut other: Vec<&str> = m2.input().iter().collect();
    letters.sort_unstable();
    other.sort_unstable();
    if letters != other {
        return Err(Error::Unsupported(
            "the two machines must have the same input alphabet".into(),
        ));
    }
    for (i, m) in [m1, m2].iter().enumerate() {
        if m.initial().is_none() {
            return Err(Error::Unsupported(format!("machine {} has no initial state", i + 1)));
        }
        if m.input().get(SYNC_A).is_some() || m.input().get(SYNC_B).is_some() {
            return Err(Error::Unsupported(format!(
                "machine {} already uses a reserved letter `{SYNC_A}`/`{SYNC_B}`",
                i + 1
            )));
        }
    }
    let counters = m1.counter_symbols() == 1 && m2.counter_symbols() == 1;
    // Stack symbol maps from each component into the union alphabet.
    let mut stack_names: Vec<String> = Vec::new();
    for m in [m1, m2] {
        for s in 1..m.num_stack_symbols() {
            let name = if counters {
                "1".to_string()
            } else {
                m.stack_alphabet().name(s).to_string()
            };
            if !stack_names.contains(&name) {
                stack_names.push(name);
            }
        }
    }
    if !stack_names.iter().any(|s| s == "1") {
        stack_names.push("1".into());
    }
    let mut state_names: Vec<String> = Vec::new();
    for (i, m) in [m1, m2].iter().enumerate() {
        state_names.extend(m.states().iter().map(|q| format!("{}/{q}", i + 1)));
    }
    state_names.extend(["qf:1", "qf:2", "qs"].map(String::from));
    let mut input: Vec<String> = m1.input().iter().map(String::from).collect();
    input.push(SYNC_A.into());
    input.push(SYNC_B.into());
    let mut bd = DpdaBuilder::new(names(&state_names), names(&input), &stack_names);
    let mut maps: [Vec<StackSym>; 2] = [Vec::new(), Vec::new()];
    for (i, m) in [m1, m2].iter().enumerate() {
        maps[i] = (0..m.num_stack_symbols())
            .map(|s| {
                if s == BOTTOM {
                    BOTTOM
                } else if counters {
                    bd.stack_symbol("1")
                } else {
                    bd.stack_symbol(m.stack_alphabet().name(s))
                }
            })
            .collect();
    }
    let one = bd.stack_symbol("1");
    let g = bd.stack_alphabet().len();
    let (a, b) = (bd.symbol(SYNC_A), bd.symbol(SYNC_B));
    let qs = bd.state("qs");
    let offsets = [0, m1.num_states()];
    for (i, m) in [m1, m2].iter().enumerate() {
        let qf = bd.state(&format!("qf:{}", i + 1));
        let q0 = offsets[i] + m.initial().expect("checked above");
        let map = &maps[i];
        for q in 0..m.num_states() {
            let gq = offsets[i] + q;
            for sym in 0..m.num_symbols() {
                let gsym = bd.symbol(m.input().name(sym));
                for top in 0..m.num_stack_symbols() {
                    let t = m.transition(q, sym, top);
                    let push = t.push.iter().map(|&s| map[s]).collect();
                    bd.set(gq, gsym, map[top], offsets[i] + t.target, push);
                }
            }
            for top in 0..g {
                if top == BOTTOM {
                    bd.set(gq, a, top, q0, vec![BOTTOM]);
                } else {
                    bd.set(gq, a, top, qf, vec![top]);
                }
                if m.is_final(q) {
                    bd.set(gq, b, top, qs, vec![top]);
                } else if top == BOTTOM {
                    bd.set(gq, b, top, qf, vec![BOTTOM, one]);
                } else {
                    bd.set(gq, b, top, qf, vec![top]);
                }
            }
            // Top symbols only the other component uses are unreachable;
            // they trap like a nonempty counter does.
            for sym in 0..bd.input().len() {
                for top in 0..g {
                    bd.set_default(gq, sym, top, qf, vec![top]);
                }
            }
        }
        for sym in 0..bd.input().len() {
            for top in 0..g {
                if sym == a && top == BOTTOM {
                    bd.set(qf, sym, top, q0, vec![BOTTOM]);
                } else {
                    bd.set(qf, sym, top, qf, vec![top, one]);
                }
            }
        }
    }
    for sym in 0..bd.input().len() {
        bd.set(qs, sym, BOTTOM, qs, vec![BOTTOM]);
        for top in 1..g {
            bd.set(qs, sym, top, qs, vec![]);
        }
    }
    bd.build()
}

/// The canonical witness `sync:a · w · sync:b · sync:b^l` of the gadget for
/// a word `w` accepted by both components, where `l` drains the largest
/// stack left by the run from a component's initial state.
pub fn gadget_witness(gadget: &Dpda, m1: &Dpda, m2: &Dpda, common: &[String]) -> Result<Vec<SymbolId>> {
    let mut word = vec![SYNC_A.to_string()];
    word.extend(common.iter().cloned());
    word.push(SYNC_B.into());
    let ids = gadget.input().resolve(&word).map_err(Error::UnknownSymbol)?;
    let mut l = 0;
    for (i, m) in [m1, m2].iter().enumerate() {
        let q0 = gadget
            .states()
            .get(&format!(
                "{}/{}",
                i + 1,
                m.states().name(m.initial().expect("initial state"))
            ))
            .expect("renamed initial state");
        if let Some(c) = gadget.run_to_end(q0, &ids) {
            l = l.max(c.height() - 1);
        }
    }
    let mut out = ids;
    out.extend(std::iter::repeat_n(gadget.input().get(SYNC_B).expect("sync:b"), l));
    Ok(out)
}

/// Real-time 0-turn DPDA that is synchronizable in the same-stack model
/// iff the instance has a solution: both halves push their tiles, and a
/// final `##` from the hub states moves every run to `sync` with the
/// stacks left as they are.
pub fn pcp_to_0turn_same(pcp: &PcpInstance) -> Dpda {
    let halves = [("A", true), ("B", false)];
    let all_chains: Vec<Vec<Chain>> = halves
        .iter()
        .map(|(j, push_a)| chains(pcp, &format!("{j}/"), *push_a))
        .collect();
    let mut state_names = Vec::new();
    for ((j, _), chs) in halves.iter().zip(&all_chains) {
        state_names.push(format!("{j}/q0"));
        state_names.push(format!("{j}/q0bar"));
        for ch in chs {
            state_names.extend(ch.steps.iter().map(|s| s.0.clone()));
            state_names.push(ch.end.clone());
        }
    }
    let half_len = state_names.len() / 2;
    state_names.extend(["A/fail", "B/fail", "sync"].map(String::from));
    let mut bd = DpdaBuilder::new(names(&state_names), pcp_letters(pcp, &[SYNC_A]), &["0", "1"]);
    let a = bd.symbol(SYNC_A);
    let hash = bd.symbol("#");
    let one = bd.stack_symbol("1");
    let sync = bd.state("sync");
    let k = bd.input().len();
    for (h, ((j, _), chs)) in halves.iter().zip(&all_chains).enumerate() {
        let q0 = bd.state(&format!("{j}/q0"));
        let q0bar = bd.state(&format!("{j}/q0bar"));
        let fail = bd.state(&format!("{j}/fail"));
        wire_chains(&mut bd, chs, &[q0, q0bar], q0bar);
        for top in 1..3 {
            bd.set(q0bar, hash, top, sync, vec![top]);
        }
        for q in h * half_len..(h + 1) * half_len {
            bd.set(q, a, BOTTOM, q0, vec![BOTTOM]);
            for top in 1..3 {
                bd.set(q, a, top, fail, vec![top]);
            }
            for sym in 0..k {
                for top in 0..3 {
                    bd.set_default(q, sym, top, fail, vec![top, one]);
                }
            }
        }
        for sym in 0..k {
            for top in 0..3 {
                if sym == a && top == BOTTOM {
                    bd.set(fail, sym, top, q0, vec![BOTTOM]);
                } else {
                    bd.set(fail, sym, top, fail, vec![top, one]);
                }
            }
        }
    }
    let q0a = bd.state("A/q0");
    for sym in 0..k {
        for top in 0..3 {
            if sym == a && top == BOTTOM {
                bd.set(sync, sym, top, q0a, vec![BOTTOM]);
            } else {
                bd.set(sync, sym, top, sync, vec![top]);
            }
        }
    }
    bd.build().expect("0-turn construction is a valid DPDA")
}

/// Same-stack witness for a solution: `sync:a`, the tiles, then `#`.
pub fn same_stack_witness(pcp: &PcpInstance, solution: &[usize]) -> Vec<String> {
    let mut w = vec![SYNC_A.to_string()];
    for &i in solution {
        w.push(index_symbol(i));
        w.extend(pcp.a[i - 1].chars().map(String::from));
        w.push("#".into());
        w.extend(pcp.b[i - 1].chars().map(String::from));
        w.push("#".into());
    }
    w.push("#".into());
    w
}

/// Counter automaton that is synchronizable iff some word maps all states
/// of `dfa` into `subset`. The letter `sync:a` sends states of `subset` to
/// `stall` with an empty counter and all other states with counter one;
/// only an empty counter lets `stall` pass to `sync`.
pub fn dfa_subset_to_0turn_dca(dfa: &Dfa, subset: &[StateId]) -> Result<Dca> {
    if subset.is_empty() {
        return Err(Error::Unsupported("the target subset must be nonempty".into()));
    }
    if let Some(&q) = subset.iter().find(|&&q| q >= dfa.num_states()) {
        return Err(Error::UnknownState(format!("#{q}")));
    }
    if dfa.input().get(SYNC_A).is_some() {
        return Err(Error::Unsupported(format!(
            "the DFA already uses the reserved letter `{SYNC_A}`"
        )));
    }
    let mut state_names: Vec<String> = dfa.states().iter().map(String::from).collect();
    for fresh in ["stall", "sync"] {
        if dfa.states().get(fresh).is_some() {
            return Err(Error::Unsupported(format!(
                "the DFA already has a state named `{fresh}`"
            )));
        }
        state_names.push(fresh.into());
    }
    let mut input: Vec<String> = dfa.input().iter().map(String::from).collect();
    input.push(SYNC_A.into());
    let mut bd = DpdaBuilder::new(names(&state_names), names(&input), &["N"]);
    let n_sym = bd.stack_symbol("N");
    let a = bd.symbol(SYNC_A);
    let (stall, sync) = (bd.state("stall"), bd.state("sync"));
    for q in 0..dfa.num_states() {
        for sym in 0..dfa.num_symbols() {
            for top in 0..2 {
                bd.set(q, sym, top, dfa.next(q, sym), vec![top]);
            }
        }
        if subset.contains(&q) {
            bd.set(q, a, BOTTOM, stall, vec![BOTTOM]);
        } else {
            bd.set(q, a, BOTTOM, stall, vec![BOTTOM, n_sym]);
        }
    }
    bd.set(stall, a, BOTTOM, sync, vec![BOTTOM]);
    bd.set(stall, a, n_sym, stall, vec![n_sym]);
    bd.fill_undefined(|q, _, top| Transition::new(q, vec![top]));
    Dca::new(bd.build()?)
}

/// Sequential transducer that is trace-synchronizable iff the instance
/// has a solution: the 0-turn same-stack machine with pushes turned into
/// outputs, `r` emitted on every reset letter, and `A`/`B` emitted by the
/// failure states.
pub fn pcp_to_transducer(pcp: &PcpInstance) -> SequentialTransducer {
    let m = pcp_to_0turn_same(pcp);
    let output = names(["0", "1", "r", "A", "B"]);
    let out_sym = |name: &str| output.get(name).expect("output letter");
    let a = m.input().get(SYNC_A).expect("reset letter");
    let hash = m.input().get("#").expect("#");
    let q0a = m.states().get("A/q0").expect("A/q0");
    let sync = m.states().get("sync").expect("sync");
    let mut table = Vec::with_capacity(m.num_states());
    for q in 0..m.num_states() {
        let name = m.states().name(q);
        let half = name.split('/').next().filter(|h| *h == "A" || *h == "B");
        let mut row = Vec::with_capacity(m.num_symbols());
        for sym in 0..m.num_symbols() {
            // The machine never pops, so the transition on the bottom
            // symbol determines the stack-free behaviour, except for the
            // hub's `#`, which needs a nonempty stack.
            let entry = if sym == a {
                let target = match half {
                    Some(h) => m.states().get(&format!("{h}/q0")).expect("hub"),
                    None => q0a,
                };
                (target, vec![out_sym("r")])
            } else if name.ends_with("/q0bar") && sym == hash {
                (sync, vec![])
            } else {
                let t = m.transition(q, sym, BOTTOM);
                let target_name = m.states().name(t.target);
                let out = if target_name.ends_with("/fail") {
                    vec![out_sym(&target_name[..1])]
                } else {
                    t.push[1..]
                        .iter()
                        .map(|&s| out_sym(m.stack_alphabet().name(s)))
                        .collect()
                };
                (t.target, out)
            };
            row.push(entry);
        }
        table.push(row);
    }
    SequentialTransducer::from_table(m.states().clone(), m.input().clone(), output, table)
}

/// Provenance header for a constructed machine.
pub fn provenance(construction: &str, result: &str, source: serde_json::Value, notes: Vec<String>) -> Provenance {
    Provenance {
        construction: construction.to_string(),
        result: result.to_string(),
        source,
        notes,
    }
}

pub fn acceptors_provenance(pcp: &PcpInstance, which: &str) -> Provenance {
    provenance(
        &format!("pcp-acceptor-{which}"),
        "intersection emptiness of real-time 1-turn DPDAs is undecidable",
        pcp.source(),
        vec!["every transition not given by the construction goes to `fail` and leaves the stack unchanged".into()],
    )
}

pub fn gadget_provenance(source: serde_json::Value) -> Provenance {
    provenance(
        "sync-gadget",
        "synchronization of DCAs (and 1-turn DPDAs) is undecidable in all three stack models",
        source,
        vec![format!(
            "`{SYNC_A}` resets on an empty stack, `{SYNC_B}` commits accepted runs to `qs`"
        )],
    )
}

pub fn same_provenance(pcp: &PcpInstance) -> Provenance {
    provenance(
        "pcp-0turn-same",
        "0-turn synchronization of DPDAs in the same-stack model is undecidable",
        pcp.source(),
        vec![],
    )
}

pub fn subset_provenance(dfa: &Dfa, subset: &[StateId]) -> Provenance {
    provenance(
        "dfa-subset-0turn",
        "0-turn synchronization of DCAs is PSPACE-hard in all three stack models",
        serde_json::json!({ "subset": subset.iter().map(|&q| dfa.states().name(q)).collect::<Vec<_>>() }),
        vec!["the reset letter pushes `N` from states outside the subset".into()],
    )
}

pub fn transducer_provenance(pcp: &PcpInstance) -> Provenance {
    provenance(
        "pcp-transducer",
        "trace-synchronization of sequential transducers is undecidable",
        pcp.source(),
        vec!["transitions entering a failure state already emit its marker".into()],
    )
}
