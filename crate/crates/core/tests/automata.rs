mod common;

use common::*;
use proptest::prelude::*;
use serde_json::json;
use syncpda::automata::{strokes_of_heights, Configuration, DpdaBuilder, Kind, Machine, Violation, BOTTOM, COUNTER};
use syncpda::format::{parse_machine, Diagnostics};
use syncpda::reductions::combine_sync_gadget;

fn one_counter_step() -> syncpda::automata::Dpda {
    // q0 --a, ⊥ / ⊥1--> q1 ; q0 --a, 1 / 11--> q1 ; q1 --b, ⊥ / ε--> q1
    let mut b = DpdaBuilder::new(names("q", 2), letters(2), &["1"]);
    b.set(0, 0, BOTTOM, 1, vec![BOTTOM, COUNTER]);
    b.set(0, 0, COUNTER, 1, vec![COUNTER, COUNTER]);
    b.set(1, 1, BOTTOM, 1, vec![]);
    b.fill_undefined(|q, _, top| syncpda::automata::Transition::new(q, vec![top]));
    b.build().unwrap()
}

#[test]
fn step_examples() {
    let m = one_counter_step();
    let c = m.step(&Configuration::initial(0), 0).unwrap().unwrap();
    assert_eq!(c, Configuration::new(1, vec![BOTTOM, COUNTER]));
    let c = m
        .step(&Configuration::new(0, vec![BOTTOM, COUNTER]), 0)
        .unwrap()
        .unwrap();
    assert_eq!(c, Configuration::new(1, vec![BOTTOM, COUNTER, COUNTER]));

    let dead = m.step(&Configuration::initial(1), 1).unwrap().unwrap();
    assert!(dead.is_dead());
    assert_eq!(m.step(&dead, 0).unwrap(), None);
}

#[test]
fn malformed_configurations_are_faults() {
    let m = one_counter_step();
    assert!(m.step(&Configuration::new(0, vec![COUNTER]), 0).is_err());
    assert!(m.step(&Configuration::new(0, vec![BOTTOM, BOTTOM]), 0).is_err());
    assert!(m.step(&Configuration::new(7, vec![BOTTOM]), 0).is_err());
    assert!(m.step(&Configuration::initial(0), 9).is_err());
}

#[test]
fn run_examples() {
    let m = one_counter_step();
    let t = m.run(0, &[]);
    assert_eq!(t.configs, vec![Configuration::initial(0)]);
    assert_eq!(t.strokes().unwrap().turns, 0);

    let t = m.run(1, &[1, 0]);
    assert_eq!(t.stuck_at, Some(1));
    assert_eq!(t.configs.len(), 2);
    assert!(t.strokes().is_err());
}

#[test]
fn gadget_of_trivial_acceptors_resets_on_a() {
    // Two one-state acceptors of everything, without stack use.
    let acc = |name: &str| {
        let mut b = DpdaBuilder::new(
            syncpda::automata::Names::from_iter_unique([name]).unwrap(),
            letters(1),
            &["1"],
        );
        b.set(0, 0, BOTTOM, 0, vec![BOTTOM]);
        b.set(0, 0, COUNTER, 0, vec![COUNTER]);
        b.initial(0).finals(vec![0]);
        b.build().unwrap()
    };
    let (m1, m2) = (acc("p"), acc("r"));
    let g = combine_sync_gadget(&m1, &m2).unwrap();
    let a = g.input().get(syncpda::reductions::SYNC_A).unwrap();
    let init1 = g.states().get("1/p").unwrap();
    let init2 = g.states().get("2/r").unwrap();
    let qs = g.states().get("qs").unwrap();
    assert_eq!(g.run(qs, &[a]).last(), &Configuration::initial(qs));
    for q in (0..g.num_states()).filter(|&q| q != qs) {
        let last = g.run(q, &[a]).last().clone();
        assert!(last.is_empty_stack(), "state {}", g.states().name(q));
        assert!(last.state == init1 || last.state == init2);
    }
    // Each component keeps its own initial state.
    assert_eq!(g.run(init1, &[a]).last().state, init1);
    assert_eq!(g.run(init2, &[a]).last().state, init2);
}

#[test]
fn stroke_examples() {
    assert_eq!(strokes_of_heights(&[1, 1, 1, 1]).strokes, 1);
    assert_eq!(strokes_of_heights(&[1, 2, 2, 1]).turns, 1);
    let s = strokes_of_heights(&[1, 2, 1, 2]);
    assert_eq!((s.strokes, s.turns), (3, 2));
    assert_eq!(strokes_of_heights(&[1]).turns, 0);
}

/// Fewest segments, each monotone, covering the height sequence;
/// consecutive segments share their boundary configuration.
fn brute_min_strokes(h: &[usize]) -> usize {
    let n = h.len();
    if n <= 1 {
        return 1;
    }
    let monotone = |s: &[usize]| s.windows(2).all(|p| p[1] >= p[0]) || s.windows(2).all(|p| p[1] <= p[0]);
    let mut best = usize::MAX;
    // Every subset of the n-2 interior positions as cut points.
    for mask in 0u32..(1 << (n - 2)) {
        let mut cuts = vec![0];
        cuts.extend((1..n - 1).filter(|i| mask & (1 << (i - 1)) != 0));
        cuts.push(n - 1);
        if cuts.windows(2).all(|c| monotone(&h[c[0]..=c[1]])) {
            best = best.min(cuts.len() - 1);
        }
    }
    best
}

proptest! {
    #[test]
    fn strokes_are_minimal(h in prop::collection::vec(1usize..4, 1..=9)) {
        prop_assert_eq!(strokes_of_heights(&h).strokes, brute_min_strokes(&h));
    }

    #[test]
    fn runs_are_deterministic_and_keep_the_bottom(seed in any::<u64>(), w in prop::collection::vec(0usize..2, 0..10)) {
        let mut r = rng(seed);
        let m = random_dpda(&mut r, 3, 2, 2);
        for q in 0..3 {
            let t1 = m.run(q, &w);
            let t2 = m.run(q, &w);
            prop_assert_eq!(&t1, &t2);
            for c in &t1.configs {
                if !c.is_dead() {
                    prop_assert_eq!(c.stack[0], BOTTOM);
                    prop_assert!(!c.stack[1..].contains(&BOTTOM));
                }
            }
            match sim_pda(&m, q, &w) {
                Some(s) => {
                    prop_assert!(!t1.is_stuck());
                    prop_assert_eq!(&t1.last().stack, &s.stack);
                    prop_assert_eq!(t1.heights(), s.heights);
                }
                None => prop_assert!(t1.is_stuck() || t1.last().is_dead()),
            }
        }
    }

    #[test]
    fn blind_runs_die_exactly_below_zero(seed in any::<u64>(), w in prop::collection::vec(0usize..2, 0..10)) {
        let mut r = rng(seed);
        let m = random_dpbca(&mut r, 3, 2);
        for q in 0..3 {
            let t = m.run(q, &w);
            let died = t.is_stuck() || t.last().is_dead();
            match sim_blind(&m, q, &w) {
                Some((s, c)) => {
                    prop_assert!(!died);
                    prop_assert_eq!(t.last().state, s);
                    prop_assert_eq!(t.last().height() as i64 - 1, c);
                }
                None => prop_assert!(died),
            }
        }
    }
}

fn doc(kind: &str, extra: serde_json::Value) -> Vec<u8> {
    let mut v = json!({
        "format": "syncpda-machine/1",
        "kind": kind,
        "states": ["p", "q"],
        "input_alphabet": ["s"],
    });
    for (k, x) in extra.as_object().unwrap() {
        v[k] = x.clone();
    }
    serde_json::to_vec(&v).unwrap()
}

fn violations(bytes: &[u8]) -> (Vec<Violation>, Option<Kind>) {
    match parse_machine(bytes) {
        Err(Diagnostics::Semantic(e)) => (e.violations, e.fallback.map(|m| m.kind())),
        other => panic!("expected violations, got {other:?}"),
    }
}

#[test]
fn popping_blind_dca_is_certified_dpbca() {
    let t = |from: &str, top: &str, push: serde_json::Value| json!({"from": from, "input": "s", "top": top, "to": "q", "push": push});
    let bytes = doc(
        "dca",
        json!({
            "stack_alphabet": ["bot", "1"],
            "transitions": [t("p", "bot", json!([])), t("p", "1", json!([])),
                            t("q", "bot", json!(["bot"])), t("q", "1", json!(["1"]))]
        }),
    );
    assert_eq!(parse_machine(&bytes).unwrap().kind(), Kind::Dpbca);
}

#[test]
fn bottom_above_read_symbol_is_a_violation() {
    let t = |from: &str, top: &str, push: serde_json::Value| json!({"from": from, "input": "s", "top": top, "to": "q", "push": push});
    let bytes = doc(
        "dpda",
        json!({
            "stack_alphabet": ["bot", "1"],
            "transitions": [t("p", "bot", json!(["bot"])), t("p", "1", json!(["1", "bot"])),
                            t("q", "bot", json!(["bot"])), t("q", "1", json!(["1"]))]
        }),
    );
    let (v, _) = violations(&bytes);
    assert!(
        matches!(&v[..], [Violation::BottomDiscipline { at, .. }] if at == "transitions[1]"),
        "{v:?}"
    );
}

#[test]
fn missing_dfa_transition_falls_back_to_partial() {
    let bytes = doc("dfa", json!({"transitions": [{"from": "p", "input": "s", "to": "q"}]}));
    let (v, fallback) = violations(&bytes);
    assert!(
        v.iter()
            .any(|v| matches!(v, Violation::Undefined { at } if at.contains('q'))),
        "{v:?}"
    );
    assert_eq!(fallback, Some(Kind::PartialDfa));
    let partial = doc(
        "partial-dfa",
        json!({"transitions": [{"from": "p", "input": "s", "to": "q"}]}),
    );
    assert_eq!(parse_machine(&partial).unwrap().kind(), Kind::PartialDfa);
}

#[test]
fn every_violation_is_listed() {
    let bytes = doc(
        "dfa",
        json!({"transitions": [
            {"from": "p", "input": "s", "to": "nowhere"},
            {"from": "x", "input": "s", "to": "p"},
            {"from": "q", "input": "t", "to": "p"}
        ]}),
    );
    let (v, _) = violations(&bytes);
    let undeclared = v.iter().filter(|v| matches!(v, Violation::Undeclared { .. })).count();
    assert_eq!(undeclared, 3, "{v:?}");
}

#[test]
fn blindness_violation_cites_the_transition() {
    let t = |from: &str, top: &str, to: &str, push: serde_json::Value| json!({"from": from, "input": "s", "top": top, "to": to, "push": push});
    let bytes = doc(
        "dpbca",
        json!({
            "stack_alphabet": ["bot", "1"],
            "transitions": [t("p", "bot", "p", json!(["bot"])), t("p", "1", "q", json!(["1"])),
                            t("q", "bot", "q", json!(["bot"])), t("q", "1", "q", json!(["1"]))]
        }),
    );
    let (v, fallback) = violations(&bytes);
    assert!(
        matches!(&v[..], [Violation::Blindness { at }] if at.contains('p')),
        "{v:?}"
    );
    assert_eq!(fallback, Some(Kind::Dca));
}

#[test]
fn machine_dispatch_helpers() {
    let m = Machine::from_dpda(random_dpda(&mut rng(1), 2, 1, 2));
    assert!(m.as_dpda().is_some());
    let dfa = Machine::Dfa(random_dfa(&mut rng(2), 3, 2));
    assert!(dfa.as_dpda().is_none());
    assert_eq!(dfa.states().len(), 3);
}
