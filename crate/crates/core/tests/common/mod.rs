#![allow(dead_code)]

use tripleseq::catalog::fixtures::{self, PrintedResult};
use tripleseq::seq::{is_ell_good, Sequencing};
use tripleseq::{MendelsohnTripleSystem, Point};

/// MTS fixtures of order `v`, labelled, in listing order.
pub fn mts_fixtures(v: usize) -> Vec<MendelsohnTripleSystem> {
    fixtures::mts(v)
        .iter()
        .map(|e| e.to_mts().unwrap())
        .collect()
}

pub fn mts(label: &str) -> MendelsohnTripleSystem {
    fixtures::all().mts(label).unwrap()
}

pub fn printed(label: &str, ell: usize) -> PrintedResult {
    fixtures::printed_results()
        .into_iter()
        .find(|r| r.label == label && r.ell == ell)
        .unwrap_or_else(|| panic!("no printed result for {label} at {ell}"))
}

/// Every permutation of `0..v` in lexicographic order.
pub fn permutations(v: usize) -> impl Iterator<Item = Vec<Point>> {
    let mut next = Some((0..v as Point).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut p = cur.clone();
        if let Some(i) = (0..v.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) {
            let j = (i + 1..v).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
            next = Some(p);
        }
        Some(cur)
    })
}

/// All ℓ-good sequencings by filtering every permutation.
pub fn naive_good(m: &MendelsohnTripleSystem, ell: usize) -> Vec<Sequencing> {
    permutations(m.order())
        .map(|p| Sequencing::new(p).unwrap())
        .filter(|s| is_ell_good(m, s, ell).unwrap())
        .collect()
}
