mod common;

use common::{host, hosts, tripods};
use oddhex::augment::*;
use oddhex::generators::{named, random_tripod, Family};
use oddhex::graph::{vid, VertexId};
use oddhex::oracle::*;
use oddhex::path::Path;
use proptest::prelude::*;

fn p(v: &[usize]) -> Path {
    Path::new(v.iter().map(|&i| vid(i)).collect())
}

fn vs(v: &[usize]) -> Vec<VertexId> {
    v.iter().map(|&i| vid(i)).collect()
}

/// Frozen instance: host `(n, seed, cubic)` and tripod seed `k`.
fn frozen(n: usize, seed: u64, cubic: bool, k: u64) -> (oddhex::graph::BipartiteGraph, TriPod, Vec<VertexId>) {
    let g = host(n, seed, cubic);
    let (t, x) = random_tripod(&g, k, 100).unwrap();
    (g, t, x)
}

#[test]
fn direct_edge_from_first_leg_is_a_one_path_sequence() {
    // K4,4: left 0..4, right 4..8. Interior 4 of P1 sees 2 in X.
    let g = named(&Family::K44).unwrap();
    let t = TriPod::new(p(&[0, 4, 1]), p(&[0, 5]), p(&[0, 6]));
    let x = vs(&[2, 3]);
    let s = find_augmenting_sequence(&g, &t, &x).unwrap();
    assert_eq!(s.paths, vec![p(&[4, 2])]);
    assert_eq!(s.index, 3);
    let (e, stats) = three_path_extend_traced(&g, &t, &x).unwrap();
    match e {
        Extension::One(e) => {
            assert_eq!((e.u, e.x), (vid(4), vid(2)));
            assert_eq!(e.p4, p(&[4, 2]));
            assert_eq!((e.p1, e.p2, e.p3), (t.p1.clone(), t.p2.clone(), t.p3.clone()));
        }
        other => panic!("expected the first outcome, got {other:?}"),
    }
    assert_eq!(stats.fallbacks, 0);
}

#[test]
fn k44_tripod_matches_exhaustive_search() {
    let g = named(&Family::K44).unwrap();
    let t = TriPod::new(p(&[0, 4, 1]), p(&[0, 5]), p(&[0, 6]));
    let x = vs(&[2, 3]);
    let (e, _) = three_path_extend_traced(&g, &t, &x).unwrap();
    assert!(matches!(e, Extension::One(_)));
    assert!(search_extensions_bruteforce(&g, &t, &x, &[Shape::One]).is_some());
    let all = enumerate_augmenting_sequences(&g, &t, &x, 1);
    assert!(!all.is_empty());
}

#[test]
fn two_hop_instance_has_length_two() {
    let (g, t, x) = frozen(10, 3, true, 4);
    let s = find_augmenting_sequence(&g, &t, &x).unwrap();
    assert_eq!((s.len(), s.index), (2, 2));
    assert!(enumerate_augmenting_sequences(&g, &t, &x, 1).is_empty());
}

#[test]
fn second_outcome_when_the_first_is_impossible() {
    let (g, t, x) = frozen(10, 0, true, 2);
    assert!(search_extensions_bruteforce(&g, &t, &x, &[Shape::One]).is_none());
    let (e, stats) = three_path_extend_traced(&g, &t, &x).unwrap();
    assert!(matches!(e, Extension::Two(_)));
    validate_extension(&g, &t, &x, &e.into()).unwrap();
    assert_eq!(stats.source(), Source::ProofFollowing);
}

#[test]
fn strong_outcome_letters_on_frozen_instances() {
    for (n, seed, k, letter) in [(10, 0, 1, 'A'), (10, 0, 0, 'B'), (10, 0, 2, 'C'), (12, 7, 14, 'D')] {
        let (g, t, x) = frozen(n, seed, true, k);
        let (e, stats) = three_path_extend_strong_traced(&g, &t, &x).unwrap();
        assert_eq!(e.letter(), letter, "instance ({n}, {seed}, {k})");
        validate_extension(&g, &t, &x, &e.into()).unwrap();
        assert_eq!(stats.fallbacks, 0);
    }
}

#[test]
fn first_outcome_with_class_a_end_is_outcome_a() {
    let (g, t, x) = frozen(10, 0, true, 1);
    let (e, _) = three_path_extend_strong_traced(&g, &t, &x).unwrap();
    match e {
        StrongExtension::A(e) => assert_eq!(g.color(e.x), g.color(e.v)),
        other => panic!("expected A, got {other:?}"),
    }
}

#[test]
fn inputs_are_checked() {
    let g = named(&Family::K44).unwrap();
    let t = TriPod::new(p(&[0, 4, 1]), p(&[0, 5]), p(&[0, 6]));
    assert_eq!(three_path_extend(&g, &t, &vs(&[2])), Err(AugmentError::BadTargets));
    assert_eq!(three_path_extend(&g, &t, &vs(&[2, 4])), Err(AugmentError::BadTargets));
    let bad = TriPod::new(p(&[0, 4, 1]), p(&[0, 4]), p(&[0, 6]));
    assert!(matches!(three_path_extend_strong(&g, &bad, &vs(&[2, 3])), Err(AugmentError::BadTriPod(_))));
}

#[test]
fn sequences_are_optimal_for_small_tripods() {
    let gs = hosts(&[6, 8, 10, 12], 8);
    let ts = tripods(&gs, 6);
    assert!(ts.len() >= 100, "only {} tripods", ts.len());
    let mut with_sequence = 0;
    for (i, t, x) in &ts {
        let g = &gs[*i];
        match find_augmenting_sequence(g, t, x) {
            Ok(s) => {
                with_sequence += 1;
                assert_eq!(check_augmenting_sequence(g, t, x, &s.paths), Ok(s.index));
                let all = enumerate_augmenting_sequences(g, t, x, s.len());
                let best = all.iter().map(|(q, idx)| (q.len(), -(*idx as isize))).min().unwrap();
                assert_eq!(best, s.measure());
            }
            Err(AugmentError::NoSequence) => {
                assert!(enumerate_augmenting_sequences(g, t, x, g.n()).is_empty());
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert!(with_sequence >= 100);
}

#[test]
fn extensions_validate_across_the_corpus() {
    let gs = hosts(&[6, 8, 10, 12, 14, 16, 18, 20, 22, 24], 6);
    let ts = tripods(&gs, 10);
    assert!(ts.len() >= 500, "only {} tripods", ts.len());
    let mut total = AugmentStats::default();
    for (i, t, x) in &ts {
        let g = &gs[*i];
        let (e, s1) = three_path_extend_traced(g, t, x).unwrap();
        validate_extension(g, t, x, &e.into()).unwrap();
        let (e, s2) = three_path_extend_strong_traced(g, t, x).unwrap();
        validate_extension(g, t, x, &e.into()).unwrap();
        total.merge(&s1);
        total.merge(&s2);
    }
    assert_eq!(total.fallbacks, 0, "fallbacks: {:?}", total.failed_cases);
}

#[test]
fn exhaustive_search_confirms_outcomes_exist_for_small_hosts() {
    let gs = hosts(&[6, 8, 10, 12], 4);
    for (i, t, x) in tripods(&gs, 4) {
        let g = &gs[i];
        assert!(search_extensions_bruteforce(g, &t, &x, &[Shape::One, Shape::Two]).is_some());
        assert!(search_extensions_bruteforce(g, &t, &x, &[Shape::A, Shape::B, Shape::C, Shape::D]).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn extensions_always_validate(half in 3usize..9, seed in 0u64..1000, k in 0u64..1000, cubic in any::<bool>()) {
        let n = 2 * half;
        let g = host(n, seed, cubic && n >= 10);
        if let Some((t, x)) = random_tripod(&g, k, 100) {
            let (e, _) = three_path_extend_traced(&g, &t, &x).unwrap();
            prop_assert!(validate_extension(&g, &t, &x, &e.into()).is_ok());
            let (e, _) = three_path_extend_strong_traced(&g, &t, &x).unwrap();
            prop_assert!(validate_extension(&g, &t, &x, &e.into()).is_ok());
            let (e, _) = three_path_extend_traced(&g, &t.swapped(), &x).unwrap();
            prop_assert!(validate_extension(&g, &t.swapped(), &x, &e.into()).is_ok());
        }
    }

    #[test]
    fn returned_sequences_check_out(half in 3usize..8, seed in 0u64..1000, k in 0u64..1000) {
        let g = host(2 * half, seed, false);
        if let Some((t, x)) = random_tripod(&g, k, 100) {
            if let Ok(s) = find_augmenting_sequence(&g, &t, &x) {
                prop_assert_eq!(check_augmenting_sequence(&g, &t, &x, &s.paths), Ok(s.index));
            }
        }
    }
}
