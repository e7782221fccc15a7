mod common;

use common::{counts, glued_k33s, glued_k33s_mixed, host, monotone};
use oddhex::cancel::CancelToken;
use oddhex::connectivity::{is_k_connected, I4cViolation};
use oddhex::generators::{named, Family};
use oddhex::hex::{apply_surgery, validate_hex, Hex};
use oddhex::improver::*;
use oddhex::oracle::enumerate_hexes;
use oddhex::augment::AugmentStats;
use proptest::prelude::*;

fn with_count(g: &oddhex::graph::BipartiteGraph, c: usize) -> Hex {
    enumerate_hexes(g, 60_000).into_iter().find(|h| h.odd_count() == c).unwrap()
}

/// Runs the improver from `h`, checking every step against its surgery.
fn run(g: &oddhex::graph::BipartiteGraph, h: &Hex) -> Vec<usize> {
    let mut stats = AugmentStats::default();
    let (end, steps) = improve_from(g, h, &CancelToken::new(), &mut stats).unwrap();
    let mut cur = h.clone();
    for s in &steps {
        cur = apply_surgery(g, &cur, &s.surgery).unwrap();
        assert_eq!(cur.odd_count(), s.after_count, "{}", s.case_tag);
        assert!(s.case_tag.starts_with(s.stage.tag()));
    }
    assert_eq!(cur.edges(), end.edges());
    validate_hex(g, &end).unwrap();
    assert!(end.is_odd());
    assert_eq!(stats.fallbacks, 0);
    counts(h.odd_count(), &steps)
}

#[test]
fn odd_hex_is_left_alone() {
    let g = named(&Family::K33).unwrap();
    let h = with_count(&g, 9);
    assert_eq!(improve_once(&g, &h).unwrap_err(), ImproveError::AlreadyOdd);
}

#[test]
#[should_panic(expected = "does not belong to stage")]
fn stage_entry_points_reject_other_counts() {
    let g = named(&Family::Heawood).unwrap();
    let h = with_count(&g, 4);
    assert!(improve_4(&g, &h).is_ok());
    let _ = improve_6(&g, &h);
}

#[test]
fn k44_hexes_are_all_odd() {
    // Any even segment would need a spare vertex of the right color.
    let g = named(&Family::K44).unwrap();
    let hs = enumerate_hexes(&g, 1000);
    assert_eq!(hs.len(), 160);
    assert!(hs.iter().all(Hex::is_odd));
}

#[test]
fn every_count_reaches_nine() {
    for (g, cs) in [(host(18, 0, false), &[0, 3, 6][..]), (host(14, 2, false), &[3, 4, 5, 6][..])] {
        for &c in cs {
            let h = with_count(&g, c);
            let trace = run(&g, &h);
            assert!(monotone(&trace), "{trace:?}");
        }
    }
}

#[test]
fn each_stage_strictly_improves() {
    let g = named(&Family::Heawood).unwrap();
    let hs = enumerate_hexes(&g, 3000);
    for (c, f) in [
        (0, improve_le3 as fn(&_, &_) -> _),
        (3, improve_le3),
        (4, improve_4),
        (5, improve_5),
        (6, improve_6),
    ] {
        let Some(h) = hs.iter().find(|h| h.odd_count() == c) else { continue };
        let (next, step) = f(&g, h).unwrap();
        assert!(next.odd_count() > c);
        assert_eq!(step.before_count, c);
        assert_eq!(apply_surgery(&g, h, &step.surgery).unwrap().edges(), next.edges());
    }
}

#[test]
fn every_start_on_small_hosts_reaches_an_odd_hex() {
    for (n, seed, cubic) in [(8, 1, false), (10, 0, true), (10, 3, false), (12, 2, true), (12, 5, false)] {
        let g = host(n, seed, cubic);
        for h in enumerate_hexes(&g, 400) {
            let cs = run(&g, &h);
            assert!(monotone(&cs), "{cs:?}");
        }
    }
}

#[test]
fn invalid_hex_is_rejected() {
    let g = named(&Family::Heawood).unwrap();
    let mut h = with_count(&g, 4);
    h.feet.swap(0, 3);
    assert!(matches!(improve_once(&g, &h), Err(ImproveError::InvalidHex(_))));
}

#[test]
fn planar_inputs_report_an_embedding() {
    for f in [Family::Q3, Family::Grid { w: 4, h: 4 }] {
        let g = named(&f).unwrap();
        match find_odd_hex(&g) {
            Err(FindError::PlanarInput(emb)) => assert!(emb.is_planar_embedding_of(&g)),
            other => panic!("{f:?}: {other:?}"),
        }
    }
}

#[test]
fn three_separations_are_reported() {
    for g in [glued_k33s(), glued_k33s_mixed()] {
        is_k_connected(&g, 3).unwrap();
        match find_odd_hex(&g) {
            Err(FindError::NotInternally4Connected(I4cViolation::Separation(s))) => {
                assert!(s.is_valid(&g));
                assert_eq!(s.c.len(), 3);
            }
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn triangle_reports_an_odd_cycle() {
    match find_odd_hex_in(3, &[(0, 1), (1, 2), (2, 0)]) {
        Err(FindError::NotBipartite { cycle }) => assert_eq!(cycle.len(), 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn cancelled_search_stops() {
    let g = named(&Family::K44).unwrap();
    let c = CancelToken::new();
    c.cancel();
    assert!(matches!(find_odd_hex_traced(&g, &c), Err(FindError::Cancelled) | Ok(_)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn traces_are_monotone(half in 3usize..13, seed in 0u64..500, cubic in any::<bool>()) {
        let n = 2 * half;
        let g = host(n, seed, cubic && n >= 10);
        let t = find_odd_hex_traced(&g, &CancelToken::new()).unwrap();
        prop_assert!(validate_hex(&g, &t.hex).is_ok());
        let cs = counts(t.seed.odd_count(), &t.steps);
        prop_assert!(monotone(&cs), "{:?}", cs);
    }

    #[test]
    fn random_start_hexes_improve(half in 3usize..7, seed in 0u64..500, pick in 0usize..200) {
        let g = host(2 * half, seed, false);
        let hs = enumerate_hexes(&g, 200);
        let h = &hs[pick % hs.len()];
        let cs = run(&g, h);
        prop_assert!(monotone(&cs), "{:?}", cs);
    }
}
