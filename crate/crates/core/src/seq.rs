//! ℓ-good sequencings of Mendelsohn triple systems.
//!
//! A sequencing lists the points in some order around a cycle of length
//! `v`. It is ℓ-good when no triple `(x, y, z)` has its three points met
//! in one of its rotation orders inside a run of at most ℓ consecutive
//! positions. Runs wrap from the last position back to the first, so the
//! set of ℓ-good sequencings is closed under rotation; reading a triple
//! against its own orientation is always allowed.
//!
//! The search places points left to right in ascending order and rejects a
//! placement as soon as it closes a forbidden run. Only runs whose largest
//! position is the one just filled need checking; those either lie inside
//! the prefix or wrap around to the start. Every rotation class has exactly
//! `v` members and exactly one of them starts with point 0, so counting and
//! the least sequencing only explore that subtree.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::design::{validate_mts, CyclicTriple, MendelsohnTripleSystem, Point};
use crate::error::{Error, Result};

/// A permutation of the points; entry `i` is the point at position `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequencing(Vec<Point>);

impl Sequencing {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let v = points.len();
        let mut seen = vec![false; v];
        for &p in &points {
            match seen.get_mut(p as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::PointSetMismatch(v)),
            }
        }
        Ok(Self(points))
    }

    pub fn identity(v: usize) -> Self {
        Self((0..v as Point).collect())
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// The same cycle started `k` positions later.
    pub fn rotated(&self, k: usize) -> Self {
        let mut p = self.0.clone();
        let n = p.len().max(1);
        p.rotate_left(k % n);
        Self(p)
    }

    /// Position of every point, indexed by point.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            pos[p as usize] = i;
        }
        pos
    }
}

/// Digits run together up to order 10, space separated beyond.
impl fmt::Display for Sequencing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 10 {
            for p in &self.0 {
                write!(f, "{p}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

impl FromStr for Sequencing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |m: String| Error::Parse { line: 1, message: m };
        let points: Vec<Point> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad(format!("bad point {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as Point)
                        .ok_or_else(|| bad(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(points)
    }
}

impl Serialize for Sequencing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A window length ℓ checked against the order of the design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct WindowParameter(usize);

impl WindowParameter {
    pub fn new(ell: usize, v: usize) -> Result<Self> {
        if (2..=v).contains(&ell) {
            Ok(Self(ell))
        } else {
            Err(Error::WindowOutOfRange { ell, v })
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Stop at the first solution.
    Exists,
    /// Number of solutions and the least one.
    Count,
    /// The lexicographically least solution.
    Least,
    /// Every solution, in lexicographic order.
    Enumerate,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exists => "exists",
            Self::Count => "count",
            Self::Least => "least",
            Self::Enumerate => "enumerate",
        })
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exists" => Ok(Self::Exists),
            "count" => Ok(Self::Count),
            "least" => Ok(Self::Least),
            "enumerate" => Ok(Self::Enumerate),
            _ => Err(Error::Invalid(format!("unknown search mode {s:?}"))),
        }
    }
}

/// Outcome of one search. `count` is present for the count and enumerate
/// modes, `least` for every mode except exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub label: Option<String>,
    pub ell: usize,
    pub exists: bool,
    pub count: Option<u64>,
    pub least: Option<Sequencing>,
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.count, &self.least) {
            (Some(n), Some(s)) => write!(f, "count={n} least={s}"),
            (Some(n), None) => write!(f, "count={n}"),
            (None, Some(s)) => write!(f, "least={s}"),
            (None, None) => write!(f, "exists={}", self.exists),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionRow {
    pub omitted: CyclicTriple,
    pub count: u64,
    pub least: Option<Sequencing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionReport {
    pub label: Option<String>,
    pub ell: usize,
    /// One row per triple, in the order the design lists them.
    pub rows: Vec<DeletionRow>,
}

fn check_design(m: &MendelsohnTripleSystem) -> Result<()> {
    let report = validate_mts(m);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::Invalid(format!("not an MTS({}): {v}", m.order()))),
    }
}

/// Checks every triple against the three rotation clauses, with positions
/// taken modulo `v`.
pub fn is_ell_good(m: &MendelsohnTripleSystem, s: &Sequencing, ell: usize) -> Result<bool> {
    let v = m.order();
    if s.order() != v {
        return Err(Error::PointSetMismatch(v));
    }
    WindowParameter::new(ell, v)?;
    let pos = s.positions();
    let ahead = |from: usize, to: usize| (to + v - from) % v;
    for t in m.triples() {
        let [i, j, k] = t.points().map(|p| pos[p as usize]);
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            if ahead(a, b) < ahead(a, c) && ahead(a, c) < ell {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const NONE: Point = Point::MAX;

struct Engine {
    v: usize,
    ell: usize,
    /// `third[a * v + b] = c` when `(a, b, c)` is a rotation of a triple.
    third: Vec<Point>,
}

impl Engine {
    fn new(m: &MendelsohnTripleSystem, ell: usize) -> Self {
        let v = m.order();
        let mut third = vec![NONE; v * v];
        for t in m.triples() {
            let [x, y, z] = t.points();
            for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                third[a as usize * v + b as usize] = c;
            }
        }
        Self { v, ell, third }
    }

    fn third(&self, a: Point, b: Point) -> Point {
        self.third[a as usize * self.v + b as usize]
    }

    /// Whether the point at `p` closes no forbidden run, given `s[..=p]`.
    fn placement_ok(&self, s: &[Point], p: usize) -> bool {
        let (v, ell) = (self.v, self.ell);
        let x = s[p];
        // runs inside the prefix ending at p
        for i in (p + 1).saturating_sub(ell)..p {
            for j in i + 1..p {
                if self.third(s[i], s[j]) == x {
                    return false;
                }
            }
        }
        // runs starting at p and wrapping to q2 < q3 at the front
        let reach = (ell + p).checked_sub(v + 1);
        if let Some(reach) = reach {
            for q3 in 0..=reach.min(p - 1) {
                for q2 in 0..q3 {
                    if self.third(x, s[q2]) == s[q3] {
                        return false;
                    }
                }
            }
        }
        // runs starting at q1 < p and wrapping to q3 at the front
        for q3 in 0..p {
            let lo = (q3 + 1).max((v + q3 + 1).saturating_sub(ell));
            for q1 in lo..p {
                if self.third(s[q1], x) == s[q3] {
                    return false;
                }
            }
        }
        true
    }

    /// Depth-first walk below the prefix `s[..depth]`. The visitor sees
    /// every complete solution in lexicographic order and returns `false`
    /// to stop; the walk returns `false` if it was stopped.
    fn walk(&self, s: &mut Vec<Point>, used: u32, visit: &mut dyn FnMut(&[Point]) -> bool) -> bool {
        let depth = s.len();
        if depth == self.v {
            return visit(s);
        }
        for c in 0..self.v as Point {
            if used >> c & 1 != 0 {
                continue;
            }
            s.push(c);
            if self.placement_ok(s, depth) && !self.walk(s, used | 1 << c, visit) {
                s.pop();
                return false;
            }
            s.pop();
        }
        true
    }

    /// Runs `walk` from `prefix` after checking the prefix itself.
    fn walk_from(&self, prefix: &[Point], visit: &mut dyn FnMut(&[Point]) -> bool) -> bool {
        let mut s = Vec::with_capacity(self.v);
        let mut used = 0u32;
        for (i, &c) in prefix.iter().enumerate() {
            s.push(c);
            used |= 1 << c;
            if !self.placement_ok(&s, i) {
                return true;
            }
        }
        self.walk(&mut s, used, visit)
    }

    /// Second points to split the 0-first subtree on.
    fn branches(&self) -> Vec<[Point; 2]> {
        (1..self.v as Point).map(|c| [0, c]).collect()
    }

    fn count_zero_first(&self) -> u64 {
        self.branches()
            .into_par_iter()
            .map(|prefix| {
                let mut n = 0u64;
                self.walk_from(&prefix, &mut |_| {
                    n += 1;
                    true
                });
                n
            })
            .sum()
    }

    fn least(&self) -> Option<Vec<Point>> {
        self.branches().into_par_iter().find_map_first(|prefix| {
            let mut found = None;
            self.walk_from(&prefix, &mut |s| {
                found = Some(s.to_vec());
                false
            });
            found
        })
    }

    fn exists(&self) -> bool {
        self.branches().into_par_iter().any(|prefix| {
            let mut found = false;
            self.walk_from(&prefix, &mut |_| {
                found = true;
                false
            });
            found
        })
    }

    fn enumerate(&self) -> Vec<Vec<Point>> {
        let parts: Vec<Vec<Vec<Point>>> = (0..self.v as Point)
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                self.walk_from(&[first], &mut |s| {
                    out.push(s.to_vec());
                    true
                });
                out
            })
            .collect();
        parts.into_iter().flatten().collect()
    }
}

fn factorial(v: usize) -> u64 {
    (1..=v as u64).product()
}

/// Searches `m` for `ell`-good sequencings.
pub fn search(m: &MendelsohnTripleSystem, ell: usize, mode: SearchMode) -> Result<SearchReport> {
    check_design(m)?;
    let v = m.order();
    WindowParameter::new(ell, v)?;
    let engine = Engine::new(m, ell);
    let (exists, count, least) = match mode {
        _ if ell == 2 && mode != SearchMode::Enumerate => {
            let count = (mode == SearchMode::Count).then(|| factorial(v));
            let least = (mode != SearchMode::Exists).then(|| Sequencing::identity(v));
            (true, count, least)
        }
        SearchMode::Exists => (engine.exists(), None, None),
        SearchMode::Least => {
            let least = engine.least().map(Sequencing);
            (least.is_some(), None, least)
        }
        SearchMode::Count => {
            let count = engine.count_zero_first() * v as u64;
            let least = if count > 0 { engine.least().map(Sequencing) } else { None };
            (count > 0, Some(count), least)
        }
        SearchMode::Enumerate => {
            let all = engine.enumerate();
            let least = all.first().cloned().map(Sequencing);
            (!all.is_empty(), Some(all.len() as u64), least)
        }
    };
    Ok(SearchReport {
        label: m.label().map(String::from),
        ell,
        exists,
        count,
        least,
    })
}

/// Every `ell`-good sequencing of `m`, in lexicographic order.
pub fn enumerate(m: &MendelsohnTripleSystem, ell: usize) -> Result<Vec<Sequencing>> {
    check_design(m)?;
    WindowParameter::new(ell, m.order())?;
    Ok(Engine::new(m, ell).enumerate().into_iter().map(Sequencing).collect())
}

/// Largest ℓ admitting an ℓ-good sequencing, probing down from
/// `(v - 1) / 2`; 2 when only the trivial window works.
pub fn max_good_ell(m: &MendelsohnTripleSystem) -> Result<usize> {
    check_design(m)?;
    let ceiling = (m.order() - 1) / 2;
    for ell in (3..=ceiling).rev() {
        if search(m, ell, SearchMode::Exists)?.exists {
            return Ok(ell);
        }
    }
    Ok(2)
}

/// For every triple of `m`, the count and least `ell`-good sequencing of
/// the partial system without it.
pub fn deletion_experiment(m: &MendelsohnTripleSystem, ell: usize) -> Result<DeletionReport> {
    check_design(m)?;
    if m.is_partial() {
        return Err(Error::Invalid("deletion needs a full system".into()));
    }
    WindowParameter::new(ell, m.order())?;
    let rows = m
        .triples()
        .par_iter()
        .map(|t| {
            let r = search(&m.without(t)?, ell, SearchMode::Count)?;
            Ok(DeletionRow {
                omitted: *t,
                count: r.count.unwrap_or(0),
                least: r.least,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DeletionReport {
        label: m.label().map(String::from),
        ell,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m7() -> MendelsohnTripleSystem {
        crate::catalog::fixtures::mts(7).mts("M7.1.1").unwrap()
    }

    fn seq(s: &str) -> Sequencing {
        s.parse().unwrap()
    }

    #[test]
    fn predicate_examples() {
        let m = m7();
        assert!(is_ell_good(&m, &seq("0132456"), 3).unwrap());
        assert!(!is_ell_good(&m, &Sequencing::identity(7), 3).unwrap());
        assert!(is_ell_good(&m, &Sequencing::identity(7), 2).unwrap());
    }

    #[test]
    fn predicate_errors() {
        let m = m7();
        assert_eq!(
            is_ell_good(&m, &seq("012345"), 3).unwrap_err(),
            Error::PointSetMismatch(7)
        );
        assert_eq!(
            is_ell_good(&m, &seq("0123456"), 1).unwrap_err(),
            Error::WindowOutOfRange { ell: 1, v: 7 }
        );
        assert!("0112".parse::<Sequencing>().is_err());
        assert!("01x".parse::<Sequencing>().is_err());
    }

    #[test]
    fn rendering_round_trip() {
        let s = seq("0132456");
        assert_eq!(s.to_string(), "0132456");
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"0132456\"");
        let big = Sequencing::new((0..12).rev().collect()).unwrap();
        assert_eq!(big.to_string().parse::<Sequencing>().unwrap(), big);
    }

    #[test]
    fn count_and_least_on_order_seven() {
        let r = search(&m7(), 3, SearchMode::Count).unwrap();
        assert_eq!(r.to_string(), "count=336 least=0132456");
        assert!(!search(&m7(), 4, SearchMode::Exists).unwrap().exists);
        assert_eq!(search(&m7(), 2, SearchMode::Count).unwrap().count, Some(5040));
    }

    #[test]
    fn modes_agree() {
        let m = m7();
        let all = enumerate(&m, 3).unwrap();
        let count = search(&m, 3, SearchMode::Count).unwrap();
        assert_eq!(count.count, Some(all.len() as u64));
        assert_eq!(search(&m, 3, SearchMode::Least).unwrap().least.as_ref(), all.first());
        assert_eq!(search(&m, 3, SearchMode::Enumerate).unwrap(), count);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|s| is_ell_good(&m, s, 3).unwrap()));
    }

    #[test]
    fn window_out_of_range() {
        for ell in [0, 1, 8] {
            assert_eq!(
                search(&m7(), ell, SearchMode::Count).unwrap_err(),
                Error::WindowOutOfRange { ell, v: 7 }
            );
        }
    }

    #[test]
    fn order_three_has_no_three_good() {
        let m = crate::catalog::fixtures::mts(3).mts("M3.1.1").unwrap();
        assert_eq!(search(&m, 3, SearchMode::Count).unwrap().count, Some(0));
        assert_eq!(max_good_ell(&m).unwrap(), 2);
    }

    #[test]
    fn max_ell_of_order_seven() {
        assert_eq!(max_good_ell(&m7()).unwrap(), 3);
    }

    #[test]
    fn deleting_a_triple_only_adds_solutions() {
        let m = m7();
        let full = search(&m, 3, SearchMode::Count).unwrap().count.unwrap();
        let d = deletion_experiment(&m, 3).unwrap();
        assert_eq!(d.rows.len(), 14);
        assert_eq!(d.rows[0].omitted, m.triples()[0]);
        assert!(d.rows.iter().all(|r| r.count >= full));
        assert!(deletion_experiment(&m.without(&m.triples()[0]).unwrap(), 3).is_err());
    }
}
