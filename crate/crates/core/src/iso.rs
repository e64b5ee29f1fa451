//! Canonical forms and isomorphism.
//!
//! The canonical form of a design is the lexicographically least sorted row
//! list over all relabelings of its points, where a row is a sorted triple
//! for a TTS and a minimum-first cyclic triple for an MTS. Two MTS related
//! only by reversing every triple are in general *not* isomorphic; the
//! coarser classes that also identify an MTS with its converse have their
//! own key, [`converse_class_form`].
//!
//! The search assigns new labels `0, 1, 2, ...` one point at a time. After
//! `k` labels are placed, every row whose points are all labelled is known
//! exactly, and every other row is bounded below by filling its unlabelled
//! slots with `k`. That gives an exact prefix of the final sorted row list
//! plus a lower bound on the next row, which is compared against the best
//! complete labelling found so far.

use std::cmp::Ordering;

use serde::Serialize;

use crate::design::{Design, Kind, MendelsohnTripleSystem, Point, TwofoldTripleSystem};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub kind: Kind,
    pub v: usize,
    pub rows: Vec<[Point; 3]>,
}

impl CanonicalForm {
    pub fn to_design(&self) -> Design {
        match self.kind {
            Kind::Tts => Design::Tts(
                TwofoldTripleSystem::from_rows(self.v, &self.rows).expect("canonical rows are well formed"),
            ),
            Kind::Mts => Design::Mts(
                MendelsohnTripleSystem::from_rows(self.v, &self.rows)
                    .expect("canonical rows are well formed"),
            ),
        }
    }
}

/// Designs that have a canonical form.
pub trait Canonical {
    fn kind(&self) -> Kind;
    fn order(&self) -> usize;
    /// Canonical form together with the relabelling `old -> new` that
    /// produces it.
    fn canonical_labeling(&self) -> (CanonicalForm, Vec<Point>);

    fn canonical_form(&self) -> CanonicalForm {
        self.canonical_labeling().0
    }
}

impl Canonical for TwofoldTripleSystem {
    fn kind(&self) -> Kind {
        Kind::Tts
    }
    fn order(&self) -> usize {
        TwofoldTripleSystem::order(self)
    }
    fn canonical_labeling(&self) -> (CanonicalForm, Vec<Point>) {
        let rows: Vec<_> = self.blocks().iter().map(|b| b.points()).collect();
        Search::new(Kind::Tts, self.order(), rows).run()
    }
}

impl Canonical for MendelsohnTripleSystem {
    fn kind(&self) -> Kind {
        Kind::Mts
    }
    fn order(&self) -> usize {
        MendelsohnTripleSystem::order(self)
    }
    fn canonical_labeling(&self) -> (CanonicalForm, Vec<Point>) {
        let rows: Vec<_> = self.triples().iter().map(|t| t.points()).collect();
        Search::new(Kind::Mts, self.order(), rows).run()
    }
}

impl Canonical for Design {
    fn kind(&self) -> Kind {
        Design::kind(self)
    }
    fn order(&self) -> usize {
        Design::order(self)
    }
    fn canonical_labeling(&self) -> (CanonicalForm, Vec<Point>) {
        match self {
            Design::Tts(t) => t.canonical_labeling(),
            Design::Mts(m) => m.canonical_labeling(),
        }
    }
}

pub fn canonical_form<D: Canonical + ?Sized>(d: &D) -> CanonicalForm {
    d.canonical_form()
}

pub fn are_isomorphic<A: Canonical + ?Sized, B: Canonical + ?Sized>(a: &A, b: &B) -> Result<bool> {
    if a.kind() != b.kind() || a.order() != b.order() {
        return Err(Error::Mismatch(format!(
            "{}({}) vs {}({})",
            a.kind(),
            a.order(),
            b.kind(),
            b.order()
        )));
    }
    Ok(a.canonical_form() == b.canonical_form())
}

/// One representative per isomorphism class, in order of first appearance.
pub fn dedupe<D: Canonical + Clone>(designs: &[D]) -> Vec<D> {
    let mut seen = std::collections::HashSet::new();
    designs
        .iter()
        .filter(|d| seen.insert(d.canonical_form()))
        .cloned()
        .collect()
}

/// The lesser of the canonical forms of `m` and its converse. Equal keys
/// mean each system is isomorphic to the other or to its converse.
pub fn converse_class_form(m: &MendelsohnTripleSystem) -> CanonicalForm {
    m.canonical_form().min(m.converse().canonical_form())
}

pub fn is_self_converse(m: &MendelsohnTripleSystem) -> bool {
    m.canonical_form() == m.converse().canonical_form()
}

/// One representative per class up to isomorphism and converse, in order
/// of first appearance.
pub fn dedupe_up_to_converse(designs: &[MendelsohnTripleSystem]) -> Vec<MendelsohnTripleSystem> {
    let mut seen = std::collections::HashSet::new();
    designs
        .iter()
        .filter(|m| seen.insert(converse_class_form(m)))
        .cloned()
        .collect()
}

const UNSET: Point = Point::MAX;

struct Search {
    kind: Kind,
    v: usize,
    rows: Vec<[Point; 3]>,
    new_of_old: Vec<Point>,
    seed: Vec<Point>,
    best: Option<(Vec<[Point; 3]>, Vec<Point>)>,
    known: Vec<[Point; 3]>,
}

enum Bound {
    Better,
    Tied,
    Worse,
}

impl Search {
    fn new(kind: Kind, v: usize, rows: Vec<[Point; 3]>) -> Self {
        // points on repeated blocks first: a repeated block is the smallest
        // possible opening pair of rows
        let mut support: Vec<[Point; 3]> = rows
            .iter()
            .map(|r| {
                let mut s = *r;
                s.sort_unstable();
                s
            })
            .collect();
        support.sort_unstable();
        let mut repeated = vec![0usize; v];
        for w in support.windows(2) {
            if w[0] == w[1] {
                for p in w[0] {
                    repeated[p as usize] += 1;
                }
            }
        }
        let mut seed: Vec<Point> = (0..v as Point).collect();
        seed.sort_by_key(|&p| std::cmp::Reverse(repeated[p as usize]));
        Self {
            kind,
            v,
            rows,
            new_of_old: vec![UNSET; v],
            seed,
            best: None,
            known: Vec::new(),
        }
    }

    fn run(mut self) -> (CanonicalForm, Vec<Point>) {
        if self.v == 0 {
            return (
                CanonicalForm {
                    kind: self.kind,
                    v: 0,
                    rows: Vec::new(),
                },
                Vec::new(),
            );
        }
        self.descend(0);
        let (rows, perm) = self.best.expect("at least one labelling is explored");
        (
            CanonicalForm {
                kind: self.kind,
                v: self.v,
                rows,
            },
            perm,
        )
    }

    /// Row image under the current partial labelling with `k` labels placed;
    /// unlabelled slots read as `k`. Second value: whether the row is exact.
    fn row_key(&self, row: &[Point; 3], k: Point) -> ([Point; 3], bool) {
        let m = row.map(|p| self.new_of_old[p as usize]);
        let exact = m.iter().all(|&x| x != UNSET);
        let key = match self.kind {
            Kind::Tts => {
                let mut s = m.map(|x| if x == UNSET { k } else { x });
                s.sort_unstable();
                s
            }
            Kind::Mts => {
                // minimum labelled point leads; unlabelled ones are larger
                match (0..3).filter(|&i| m[i] != UNSET).min_by_key(|&i| m[i]) {
                    None => [k, k, k],
                    Some(i) => [m[i], m[(i + 1) % 3], m[(i + 2) % 3]]
                        .map(|x| if x == UNSET { k } else { x }),
                }
            }
        };
        (key, exact)
    }

    fn bound(&mut self, k: usize) -> Bound {
        let kp = k as Point;
        self.known.clear();
        let mut min_lb: Option<[Point; 3]> = None;
        for i in 0..self.rows.len() {
            let (key, exact) = self.row_key(&self.rows[i], kp);
            if exact {
                self.known.push(key);
            } else if min_lb.is_none_or(|m| key < m) {
                min_lb = Some(key);
            }
        }
        self.known.sort_unstable();
        let Some((best, _)) = &self.best else {
            return Bound::Tied;
        };
        let prefix_len = match min_lb {
            Some(lb) => self.known.partition_point(|r| *r < lb),
            None => self.known.len(),
        };
        for (r, b) in self.known[..prefix_len].iter().zip(best) {
            match r.cmp(b) {
                Ordering::Less => return Bound::Better,
                Ordering::Greater => return Bound::Worse,
                Ordering::Equal => {}
            }
        }
        match (min_lb, best.get(prefix_len)) {
            (Some(lb), Some(b)) if lb > *b => Bound::Worse,
            _ => Bound::Tied,
        }
    }

    fn descend(&mut self, k: usize) {
        if k == self.v {
            self.bound(k);
            let better = match &self.best {
                None => true,
                Some((b, _)) => self.known < *b,
            };
            if better {
                self.best = Some((self.known.clone(), self.new_of_old.clone()));
            }
            return;
        }
        for idx in 0..self.v {
            let p = self.seed[idx] as usize;
            if self.new_of_old[p] != UNSET {
                continue;
            }
            self.new_of_old[p] = k as Point;
            // the bound is only informative once some row can be exact
            let go = k < 2 || !matches!(self.bound(k + 1), Bound::Worse);
            if go {
                self.descend(k + 1);
            }
            self.new_of_old[p] = UNSET;
        }
    }
}
