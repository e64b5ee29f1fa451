mod common;

use common::{mts, mts_fixtures, naive_good, permutations};
use proptest::prelude::*;
use tripleseq::seq::{enumerate, is_ell_good, search, SearchMode, Sequencing};
use tripleseq::{MendelsohnTripleSystem, Point};

#[test]
fn pruned_search_matches_naive_filter_at_order_seven() {
    for m in mts_fixtures(7) {
        for ell in [2, 3, 4] {
            let naive = naive_good(&m, ell);
            let r = search(&m, ell, SearchMode::Count).unwrap();
            assert_eq!(r.count, Some(naive.len() as u64), "{:?} ell={ell}", m.label());
            assert_eq!(r.least.as_ref(), naive.first());
            assert_eq!(r.exists, !naive.is_empty());
            assert_eq!(enumerate(&m, ell).unwrap(), naive);
        }
    }
}

#[test]
fn partial_systems_match_naive_filter() {
    let m = mts("M7.2.1");
    for t in m.triples().iter().take(4) {
        let p = m.without(t).unwrap();
        let naive = naive_good(&p, 3);
        let r = search(&p, 3, SearchMode::Count).unwrap();
        assert_eq!(r.count, Some(naive.len() as u64));
        assert_eq!(r.least.as_ref(), naive.first());
    }
}

#[test]
fn least_mode_is_below_every_solution() {
    for m in mts_fixtures(7) {
        let least = search(&m, 3, SearchMode::Least).unwrap().least.unwrap();
        assert!(naive_good(&m, 3).iter().all(|s| least <= *s));
    }
}

#[test]
fn naive_filter_at_order_nine() {
    let m = mts("M9.1.1");
    let naive = naive_good(&m, 4);
    assert_eq!(naive.len(), 18);
    assert_eq!(naive[0].to_string(), "023471856");
    let r = search(&m, 4, SearchMode::Count).unwrap();
    assert_eq!(r.count, Some(18));
    assert_eq!(r.least, naive.first().cloned());
}

#[test]
fn reversal_matches_converse_exhaustively_at_order_seven() {
    for m in mts_fixtures(7) {
        let c = m.converse();
        for p in permutations(7) {
            let s = Sequencing::new(p).unwrap();
            for ell in [3, 4] {
                assert_eq!(
                    is_ell_good(&m, &s, ell).unwrap(),
                    is_ell_good(&c, &s.reversed(), ell).unwrap()
                );
            }
        }
    }
}

#[test]
fn converse_counts_agree_at_order_seven() {
    for m in mts_fixtures(7) {
        for ell in [2, 3, 4] {
            assert_eq!(
                search(&m, ell, SearchMode::Count).unwrap().count,
                search(&m.converse(), ell, SearchMode::Count).unwrap().count
            );
        }
    }
}

#[test]
fn every_rotation_of_a_good_sequencing_is_good() {
    let m = mts("M7.3.1");
    for s in enumerate(&m, 3).unwrap() {
        for k in 1..7 {
            assert!(is_ell_good(&m, &s.rotated(k), 3).unwrap());
        }
    }
}

fn design_and_perm() -> impl Strategy<Value = (MendelsohnTripleSystem, Vec<Point>, Vec<Point>)> {
    let designs: Vec<_> = [9, 10].into_iter().flat_map(mts_fixtures).collect();
    prop::sample::select(designs).prop_flat_map(|m| {
        let v = m.order();
        let ids: Vec<Point> = (0..v as Point).collect();
        (Just(m), Just(ids.clone()).prop_shuffle(), Just(ids).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn good_at_ell_implies_good_below((m, s, _) in design_and_perm(), ell in 3usize..=6) {
        let s = Sequencing::new(s).unwrap();
        if is_ell_good(&m, &s, ell).unwrap() {
            prop_assert!(is_ell_good(&m, &s, ell - 1).unwrap());
        }
    }

    #[test]
    fn reversal_and_converse((m, s, _) in design_and_perm(), ell in 2usize..=6) {
        let s = Sequencing::new(s).unwrap();
        prop_assert_eq!(
            is_ell_good(&m, &s, ell).unwrap(),
            is_ell_good(&m.converse(), &s.reversed(), ell).unwrap()
        );
    }

    #[test]
    fn relabeling_carries_good_sequencings((m, s, perm) in design_and_perm(), ell in 2usize..=5) {
        let moved = m.relabel(&perm).unwrap();
        let image = Sequencing::new(s.iter().map(|&p| perm[p as usize]).collect()).unwrap();
        let s = Sequencing::new(s).unwrap();
        prop_assert_eq!(is_ell_good(&m, &s, ell).unwrap(), is_ell_good(&moved, &image, ell).unwrap());
    }
}
