mod common;

use common::*;
use rand::Rng;
use syncpda::automata::{Dfa, Kind, Machine};
use syncpda::dfa_sync::{cerny, sync_into_subset};
use syncpda::format::{machine_to_json, parse_machine};
use syncpda::pda_sync::{check_n_turn_sync_word, check_sync_word, sync_search_bounded};
use syncpda::reductions::*;
use syncpda::search::{Limits, SearchOutcome};
use syncpda::transducer_sync::{check_trace_sync, trace_sync_search_bounded, TraceLimits};
use syncpda::StackModel::{Arbitrary, Empty, Same};

fn pcp(a: &str, b: &str) -> PcpInstance {
    PcpInstance::parse(a, b).unwrap()
}

#[test]
fn brute_solver_examples() {
    assert_eq!(pcp_brute_solve(&pcp("0", "0"), 1), Some(vec![1]));
    let p = pcp("10,1", "1,01");
    let sol = pcp_brute_solve(&p, 4).unwrap();
    assert_eq!(sol, vec![1, 2]);
    assert_eq!(format!("{}{}", p.a()[0], p.a()[1]), "101");
    assert_eq!(format!("{}{}", p.b()[0], p.b()[1]), "101");
    assert_eq!(pcp_brute_solve(&pcp("0", "1"), 10), None);
}

#[test]
fn malformed_instances_are_rejected() {
    assert!(PcpInstance::parse("0,", "1,1").is_err());
    assert!(PcpInstance::parse("0", "1,1").is_err());
    assert!(PcpInstance::parse("02", "1").is_err());
}

fn accepts(m: &syncpda::automata::Dpda, w: &[String]) -> bool {
    let ids = m.input().resolve(w).unwrap();
    sim_pda(m, m.initial().unwrap(), &ids).is_some_and(|r| m.is_final(r.state))
}

#[test]
fn acceptor_examples() {
    let p = pcp("0", "0");
    let (ma, mb) = pcp_to_1turn_acceptors(&p);
    let w: Vec<String> = ["idx:1", "0", "#", "0", "#", "$", "0", "$"].map(String::from).to_vec();
    assert_eq!(common_acceptor_word(&p, &[1]), w);
    assert!(accepts(&ma, &w) && accepts(&mb, &w));
    let no_dollar: Vec<String> = w.iter().filter(|s| *s != "$").cloned().collect();
    assert!(!accepts(&ma, &no_dollar) && !accepts(&mb, &no_dollar));
}

/// For all instances with n ≤ 2 and tiles of length ≤ 2.
fn small_instances() -> Vec<PcpInstance> {
    let tiles = ["0", "1", "00", "01", "10", "11"];
    let mut out = Vec::new();
    for a in tiles {
        for b in tiles {
            out.push(pcp(a, b));
        }
    }
    for a1 in tiles {
        for a2 in tiles {
            for b1 in tiles {
                for b2 in tiles {
                    out.push(PcpInstance::new(vec![a1, a2], vec![b1, b2]).unwrap());
                }
            }
        }
    }
    out
}

fn sequences(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        layer = layer
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                (1..=n).map(move |i| {
                    let mut t = s.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

#[test]
fn acceptor_languages_round_trip() {
    // w ∈ L(M_A) ∩ L(M_B) iff the encoded sequence is a solution, for
    // every sequence of at most four indices.
    for p in small_instances().into_iter().step_by(7) {
        let (ma, mb) = pcp_to_1turn_acceptors(&p);
        for seq in sequences(p.len(), 4) {
            let top: String = p.top(&seq).chars().rev().collect();
            let bottom: String = p.bottom(&seq).chars().rev().collect();
            let wa = acceptor_word(&p, &seq, &top);
            let wb = acceptor_word(&p, &seq, &bottom);
            assert!(accepts(&ma, &wa) && accepts(&mb, &wb));
            assert_eq!(accepts(&mb, &wa), p.is_solution(&seq), "{p} {seq:?}");
            assert_eq!(accepts(&ma, &wb), p.is_solution(&seq), "{p} {seq:?}");
        }
    }
}

#[test]
fn accepted_runs_have_at_most_one_turn() {
    let mut r = rng(5);
    let p = pcp("10,1", "1,01");
    let (ma, mb) = pcp_to_1turn_acceptors(&p);
    for _ in 0..100 {
        let len = r.gen_range(1..=6);
        let seq: Vec<usize> = (0..len).map(|_| r.gen_range(1..=2)).collect();
        for (m, check) in [(&ma, p.top(&seq)), (&mb, p.bottom(&seq))] {
            let check: String = check.chars().rev().collect();
            let ids = m.input().resolve(&acceptor_word(&p, &seq, &check)).unwrap();
            let run = sim_pda(m, m.initial().unwrap(), &ids).unwrap();
            assert!(m.is_final(run.state));
            assert!(turns_of(&run.heights) <= 1);
        }
    }
}

#[test]
fn gadget_witnesses_of_solvable_instances() {
    let mut solvable = 0;
    for p in small_instances().into_iter().step_by(5) {
        let Some(sol) = pcp_brute_solve(&p, 4) else { continue };
        solvable += 1;
        let (ma, mb) = pcp_to_1turn_acceptors(&p);
        let g = combine_sync_gadget(&ma, &mb).unwrap();
        let w = gadget_witness(&g, &ma, &mb, &common_acceptor_word(&p, &sol)).unwrap();
        for model in [Empty, Same, Arbitrary] {
            assert!(check_n_turn_sync_word(&g, &w, 1, model).is_ok(), "{p} {model:?}");
        }
    }
    assert!(solvable > 10);
}

fn round_trip(m: Machine) -> Kind {
    parse_machine(machine_to_json(&m, None).as_bytes()).unwrap().kind()
}

#[test]
fn constructions_validate_with_their_kind() {
    let p = pcp("10,1", "1,01");
    let (ma, mb) = pcp_to_1turn_acceptors(&p);
    assert_eq!(round_trip(Machine::Dpda(ma.clone())), Kind::Dpda);
    assert_eq!(
        round_trip(Machine::from_dpda(combine_sync_gadget(&ma, &mb).unwrap())),
        Kind::Dpda
    );
    assert_eq!(round_trip(Machine::Dpda(pcp_to_0turn_same(&p))), Kind::Dpda);
    assert_eq!(round_trip(Machine::Transducer(pcp_to_transducer(&p))), Kind::Transducer);
    let sub = dfa_subset_to_0turn_dca(&cerny(4), &[0]).unwrap();
    assert_eq!(round_trip(Machine::Dca(sub)), Kind::Dca);

    // Two counter automata give a counter automaton.
    let one = |name: &str| {
        let d = Dfa::from_table(
            syncpda::automata::Names::from_iter_unique([name]).unwrap(),
            letters(1),
            &[vec![0]],
        );
        let mut c = counter_free(&d).as_dpda().clone();
        let mut b = syncpda::automata::DpdaBuilder::new(c.states().clone(), c.input().clone(), &["1"]);
        b.fill_undefined(|q, a, top| c.transition(q, a, top).clone());
        b.initial(0).finals(vec![0]);
        c = b.build().unwrap();
        c
    };
    let g = combine_sync_gadget(&one("p"), &one("r")).unwrap();
    assert_eq!(g.counter_symbols(), 1);
    assert!(matches!(Machine::from_dpda(g).kind(), Kind::Dca | Kind::Dpbca));
}

#[test]
fn zero_turn_same_examples() {
    let p = pcp("0", "0");
    let m = pcp_to_0turn_same(&p);
    let w = sync_search_bounded(&m, Same, Limits::new(10, 200_000), Some(0))
        .into_found()
        .unwrap();
    let names = m.input().render(&w.word);
    assert_eq!(names[0], SYNC_A);
    assert!(names.windows(2).any(|p| p == ["#", "#"]));
    let canonical = m.input().resolve(&same_stack_witness(&p, &[1])).unwrap();
    assert!(check_n_turn_sync_word(&m, &canonical, 0, Same).is_ok());

    let unsolvable = pcp_to_0turn_same(&pcp("0", "1"));
    assert!(matches!(
        sync_search_bounded(&unsolvable, Same, Limits::new(10, 100_000), Some(0)),
        SearchOutcome::Exhausted(_)
    ));
}

#[test]
fn subset_gadget_examples() {
    let c4 = cerny(4);
    let all = dfa_subset_to_0turn_dca(&c4, &[0, 1, 2, 3]).unwrap();
    let a = all.input().get(SYNC_A).unwrap();
    for model in [Empty, Same, Arbitrary] {
        assert!(check_n_turn_sync_word(&all, &[a, a], 0, model).is_ok());
    }

    let subset = [0, 2];
    let m = dfa_subset_to_0turn_dca(&c4, &subset).unwrap();
    let mut w = sync_into_subset(&c4, &subset).unwrap().unwrap();
    w.extend([a, a]);
    assert!(check_sync_word(&m, &w, Empty).is_ok());

    let perm = Dfa::from_indices(2, &["x"], &[vec![1], vec![0]]);
    let m = dfa_subset_to_0turn_dca(&perm, &[0]).unwrap();
    assert!(matches!(
        sync_search_bounded(&m, Arbitrary, Limits::new(10, 100_000), None),
        SearchOutcome::Exhausted(_)
    ));
}

#[test]
fn transducer_examples() {
    let p = pcp("0", "0");
    let t = pcp_to_transducer(&p);
    let a = t.input().get(SYNC_A).unwrap();
    for q in 0..t.num_states() {
        let (_, out) = t.run(q, &[a]);
        assert_eq!(t.output().render(&out), ["r"]);
    }
    let w = trace_sync_search_bounded(&t, TraceLimits::new(12, 200_000, 16))
        .into_found()
        .unwrap();
    let names = t.input().render(&w.word);
    assert_eq!(names[0], SYNC_A);
    assert!(names.windows(2).any(|p| p == ["#", "#"]));
    assert!(check_trace_sync(&t, &w.word).is_ok());

    let t = pcp_to_transducer(&pcp("0", "1"));
    assert!(matches!(
        trace_sync_search_bounded(&t, TraceLimits::new(10, 100_000, 16)),
        SearchOutcome::Exhausted(_)
    ));
}

#[test]
fn reserved_names_are_refused() {
    let d = Dfa::from_indices(1, &[SYNC_A], &[vec![0]]);
    assert!(dfa_subset_to_0turn_dca(&d, &[0]).is_err());
    assert!(dfa_subset_to_0turn_dca(&cerny(3), &[]).is_err());
    assert!(dfa_subset_to_0turn_dca(&cerny(3), &[7]).is_err());
}
