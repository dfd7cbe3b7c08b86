mod common;

use common::*;
use proptest::prelude::*;
use syncpda::automata::{Dpda, DpdaBuilder, BOTTOM, COUNTER};
use syncpda::dfa_sync::shortest_sync_word;
use syncpda::pda_sync::{check_n_turn_sync_word, check_sync_word, sync_search_bounded, SyncFailure};
use syncpda::reductions::{
    combine_sync_gadget, common_acceptor_word, gadget_witness, pcp_brute_solve, pcp_to_1turn_acceptors, PcpInstance,
    SYNC_A, SYNC_B,
};
use syncpda::search::{Limits, SearchOutcome};
use syncpda::StackModel::{self, Arbitrary, Empty, Same};

const MODELS: [StackModel; 3] = [Empty, Same, Arbitrary];

/// Every letter sends every state to the sink `s` without touching the stack.
fn sink_machine() -> Dpda {
    let mut b = DpdaBuilder::new(names("q", 3), letters(1), &["1"]);
    b.fill_undefined(|_, _, top| syncpda::automata::Transition::new(2, vec![top]));
    b.build().unwrap()
}

#[test]
fn sink_machine_synchronizes_in_every_model() {
    let m = sink_machine();
    for model in MODELS {
        let w = check_sync_word(&m, &[0], model).unwrap();
        assert_eq!(w.state(), 2);
        assert!(w.turns.iter().all(|&t| t == 0));
        let found = sync_search_bounded(&m, model, Limits::default(), None)
            .into_found()
            .unwrap();
        assert_eq!(found.word, vec![0]);
        assert!(check_n_turn_sync_word(&m, &[0], 0, model).is_ok());
    }
    assert!(check_sync_word(&m, &[], Empty).is_err());
}

fn gadget_of(pcp: &PcpInstance) -> (Dpda, Dpda, Dpda) {
    let (ma, mb) = pcp_to_1turn_acceptors(pcp);
    let g = combine_sync_gadget(&ma, &mb).unwrap();
    (g, ma, mb)
}

#[test]
fn gadget_witness_has_the_expected_shape() {
    let pcp = PcpInstance::parse("10,1", "1,01").unwrap();
    let sol = pcp_brute_solve(&pcp, 4).unwrap();
    assert_eq!(sol, vec![1, 2]);
    let (g, ma, mb) = gadget_of(&pcp);
    let common = common_acceptor_word(&pcp, &sol);
    let w = gadget_witness(&g, &ma, &mb, &common).unwrap();

    // The drain length is the largest stack left by the initial runs.
    let awb: Vec<usize> = w.iter().copied().take(common.len() + 2).collect();
    let l = [ma.initial().unwrap(), mb.initial().unwrap()]
        .iter()
        .enumerate()
        .map(|(i, &q0)| {
            let name = format!("{}/{}", i + 1, [&ma, &mb][i].states().name(q0));
            sim_pda(&g, g.states().get(&name).unwrap(), &awb).unwrap().stack.len() - 1
        })
        .max()
        .unwrap();
    assert_eq!(w.len(), awb.len() + l);
    for model in MODELS {
        let witness = check_n_turn_sync_word(&g, &w, 1, model).unwrap();
        assert_eq!(g.states().name(witness.state()), "qs");
        assert!(naive_pda_syncs(&g, &w, model, Some(1)));
    }
    // Without the drain the stacks are not empty.
    assert!(check_sync_word(&g, &awb, Empty).is_err() || l == 0);
    assert!(check_sync_word(&g, &awb, Arbitrary).is_ok());
}

#[test]
fn gadget_rejects_b_first() {
    let pcp = PcpInstance::parse("10,1", "1,01").unwrap();
    let (g, _, _) = gadget_of(&pcp);
    let b = g.input().get(SYNC_B).unwrap();
    let e = check_sync_word(&g, &[b], Arbitrary).unwrap_err();
    assert!(matches!(e, SyncFailure::DifferentStates { .. }), "{e:?}");
}

#[test]
fn gadget_search_finds_a_v_b() {
    let pcp = PcpInstance::parse("0", "0").unwrap();
    let (g, _, _) = gadget_of(&pcp);
    let w = sync_search_bounded(&g, Arbitrary, Limits::new(12, 200_000), Some(1))
        .into_found()
        .unwrap();
    let names = g.input().render(&w.word);
    assert_eq!(names.first().map(String::as_str), Some(SYNC_A));
    assert_eq!(names.last().map(String::as_str), Some(SYNC_B));
    assert!(check_n_turn_sync_word(&g, &w.word, 1, Arbitrary).is_ok());
}

#[test]
fn unsolvable_gadget_is_exhausted() {
    let pcp = PcpInstance::parse("0", "1").unwrap();
    assert_eq!(pcp_brute_solve(&pcp, 8), None);
    let (g, _, _) = gadget_of(&pcp);
    match sync_search_bounded(&g, Empty, Limits::new(8, 100_000), None) {
        SearchOutcome::Exhausted(s) => assert!(s.length_cap_hit || s.node_cap_hit || s.frontier_exhausted),
        other => panic!("{other:?}"),
    }
}

#[test]
fn up_down_up_exceeds_one_turn() {
    // a pushes, b pops, from a single state.
    let mut b = DpdaBuilder::new(names("q", 1), letters(2), &["1"]);
    b.set(0, 0, BOTTOM, 0, vec![BOTTOM, COUNTER]);
    b.set(0, 0, COUNTER, 0, vec![COUNTER, COUNTER]);
    b.set(0, 1, BOTTOM, 0, vec![BOTTOM]);
    b.set(0, 1, COUNTER, 0, vec![]);
    let m = b.build().unwrap();
    assert!(check_n_turn_sync_word(&m, &[0, 1, 0], 1, Arbitrary).is_err());
    assert!(check_n_turn_sync_word(&m, &[0, 1, 0], 2, Arbitrary).is_ok());
    assert!(check_n_turn_sync_word(&m, &[0, 1], 1, Empty).is_ok());
}

#[test]
fn stack_free_machines_behave_like_their_dfa() {
    for seed in 0..60 {
        let mut r = rng(seed);
        let d = random_dfa(&mut r, 4, 2);
        let mut b = DpdaBuilder::new(d.states().clone(), d.input().clone(), &["1", "2"]);
        b.fill_undefined(|q, a, top| syncpda::automata::Transition::new(d.next(q, a), vec![top]));
        let m = b.build().unwrap();
        assert!(m.is_stack_free());
        let expected = shortest_sync_word(&d).unwrap();
        for model in MODELS {
            for turns in [None, Some(0)] {
                let got = sync_search_bounded(&m, model, Limits::new(16, 100_000), turns);
                assert_eq!(got.found().map(|w| w.word.clone()), expected, "seed {seed}");
            }
        }
    }
}

fn check_against_naive(m: &Dpda, max: usize, turns: Option<usize>) -> Result<(), TestCaseError> {
    let mut found = Vec::new();
    for model in MODELS {
        let expected = naive_pda_shortest(m, model, max, turns);
        let got = sync_search_bounded(m, model, Limits::new(max, 1_000_000), turns);
        match (&expected, &got) {
            (Some(w), SearchOutcome::Found(x)) => {
                prop_assert_eq!(w, &x.word);
                prop_assert!(check_sync_word(m, &x.word, model).is_ok());
            }
            (None, SearchOutcome::Exhausted(_)) => {}
            _ => prop_assert!(false, "model {:?}: naive {:?}, search {:?}", model, expected, got),
        }
        found.push(expected);
    }
    // A witness for a stronger model is one for the weaker models.
    for (i, w) in found.iter().enumerate() {
        if let Some(w) = w {
            for weaker in &MODELS[i..] {
                prop_assert!(naive_pda_syncs(m, w, *weaker, turns));
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn search_agrees_with_enumeration(seed in any::<u64>(), n in 1usize..=3, g in 1usize..=2) {
        let m = random_dpda(&mut rng(seed), n, g, 2);
        check_against_naive(&m, 7, None)?;
    }

    #[test]
    fn turn_bounded_search_agrees_with_enumeration(seed in any::<u64>(), n in 1usize..=3, turns in 0usize..=2) {
        let m = random_dpda(&mut rng(seed), n, 1, 2);
        check_against_naive(&m, 7, Some(turns))?;
    }

    #[test]
    fn counter_search_agrees_with_enumeration(seed in any::<u64>(), n in 2usize..=3) {
        let m = random_dca(&mut rng(seed), n, 2);
        check_against_naive(&m, 7, None)?;
    }
}

#[test]
fn reserved_letters_are_present() {
    let pcp = PcpInstance::parse("0", "0").unwrap();
    let (g, _, _) = gadget_of(&pcp);
    assert!(g.input().get(SYNC_A).is_some() && g.input().get(SYNC_B).is_some());
}
