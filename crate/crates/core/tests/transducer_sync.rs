mod common;

use common::*;
use proptest::prelude::*;
use syncpda::automata::{Names, SequentialTransducer};
use syncpda::dfa_sync::is_sync_word;
use syncpda::reductions::{pcp_to_transducer, PcpInstance};
use syncpda::search::SearchOutcome;
use syncpda::transducer_sync::{check_trace_sync, trace_sync_search_bounded, TraceFailure, TraceLimits};

fn outputs() -> Names {
    Names::from_iter_unique(["0", "1"]).unwrap()
}

#[test]
fn run_concatenates_outputs() {
    let t = SequentialTransducer::from_table(
        names("q", 2),
        letters(1),
        outputs(),
        vec![vec![(1, vec![0])], vec![(0, vec![1])]],
    );
    assert_eq!(t.run(0, &[]), (0, vec![]));
    assert_eq!(t.run(0, &[0, 0]), (0, vec![0, 1]));
}

#[test]
fn check_examples() {
    let one = SequentialTransducer::from_table(names("q", 1), letters(1), outputs(), vec![vec![(0, vec![1])]]);
    for w in words_up_to(1, 4) {
        assert!(check_trace_sync(&one, &w).is_ok());
    }

    let silent = SequentialTransducer::from_table(names("q", 3), letters(1), outputs(), vec![vec![(2, vec![])]; 3]);
    assert_eq!(check_trace_sync(&silent, &[0]).unwrap().state, 2);
    let found = trace_sync_search_bounded(&silent, TraceLimits::default())
        .into_found()
        .unwrap();
    assert_eq!(found.word, vec![0]);

    // State 0 always emits 0 first, state 1 always emits 1.
    let split = SequentialTransducer::from_table(
        names("q", 2),
        letters(2),
        outputs(),
        vec![vec![(0, vec![0]), (1, vec![0])], vec![(0, vec![1]), (1, vec![1])]],
    );
    for w in words_up_to(2, 4).filter(|w| !w.is_empty()) {
        let e = check_trace_sync(&split, &w).unwrap_err();
        assert!(matches!(e, TraceFailure::DifferentOutputs { position: 0, .. }), "{e:?}");
    }
    assert!(matches!(
        trace_sync_search_bounded(&split, TraceLimits::new(8, 10_000, 8)),
        SearchOutcome::Exhausted(_)
    ));
    assert!(matches!(
        check_trace_sync(&silent, &[]),
        Err(TraceFailure::DifferentStates { .. })
    ));
}

#[test]
fn pcp_transducer_examples() {
    let p = PcpInstance::parse("0", "0").unwrap();
    let t = pcp_to_transducer(&p);
    let w = trace_sync_search_bounded(&t, TraceLimits::new(12, 200_000, 16))
        .into_found()
        .unwrap();
    let names = t.input().render(&w.word);
    assert_eq!(names[0], syncpda::reductions::SYNC_A);
    assert!(names.windows(2).any(|p| p == ["#", "#"]));

    let q = PcpInstance::parse("0", "1").unwrap();
    assert!(matches!(
        trace_sync_search_bounded(&pcp_to_transducer(&q), TraceLimits::new(12, 100_000, 16)),
        SearchOutcome::Exhausted(_)
    ));
}

#[test]
fn pcp_transducer_witnesses_for_two_tiles() {
    let p = PcpInstance::parse("10,1", "1,01").unwrap();
    let t = pcp_to_transducer(&p);
    let w = trace_sync_search_bounded(&t, TraceLimits::new(16, 400_000, 16))
        .into_found()
        .unwrap();
    assert!(check_trace_sync(&t, &w.word).is_ok());
    let names = t.input().render(&w.word);
    assert_eq!(names[0], syncpda::reductions::SYNC_A);
    assert!(names.windows(2).any(|p| p == ["#", "#"]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pruned_search_agrees_with_enumeration(seed in any::<u64>(), n in 1usize..=3, k in 1usize..=2) {
        let t = random_transducer(&mut rng(seed), n, k, 2);
        let naive = naive_trace_shortest(&t, 6);
        let got = trace_sync_search_bounded(&t, TraceLimits::new(6, 200_000, 16));
        match (&naive, &got) {
            (Some(w), SearchOutcome::Found(x)) => {
                prop_assert_eq!(w, &x.word);
                prop_assert!(check_trace_sync(&t, &x.word).is_ok());
            }
            (None, SearchOutcome::Exhausted(_)) => {}
            _ => prop_assert!(false, "naive {:?}, search {:?}", naive, got),
        }
    }

    #[test]
    fn trace_sync_erases_to_dfa_sync(seed in any::<u64>(), n in 1usize..=3, w in prop::collection::vec(0usize..2, 0..=6)) {
        let t = random_transducer(&mut rng(seed), n, 2, 2);
        prop_assert_eq!(check_trace_sync(&t, &w).is_ok(), naive_trace_syncs(&t, &w));
        if check_trace_sync(&t, &w).is_ok() {
            prop_assert!(is_sync_word(&t.underlying_dfa(), &w));
        }
    }
}
