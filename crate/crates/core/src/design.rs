//! Points, triples and the two design families.
//!
//! A twofold triple system TTS(v) is a multiset of unordered triples on the
//! points `0..v` covering every unordered pair exactly twice. A Mendelsohn
//! triple system MTS(v) is a set of cyclic triples covering every ordered
//! pair exactly once, where the cyclic triple `(x, y, z)` covers `(x, y)`,
//! `(y, z)` and `(z, x)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A point of a design, always in `0..v`.
pub type Point = u8;

/// Largest order accepted by the constructors. Everything that enumerates
/// or searches is further limited to small orders by its own checks.
pub const MAX_ORDER: usize = 32;

/// Number of blocks of a TTS(v) or triples of an MTS(v), when integral.
pub fn block_count(v: usize) -> Option<usize> {
    let pairs = v * v.saturating_sub(1);
    pairs.is_multiple_of(3).then_some(pairs / 3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct UnorderedTriple([Point; 3]);

impl UnorderedTriple {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        if a == b || b == c || a == c {
            return Err(Error::DegenerateTriple(a, b, c));
        }
        let mut p = [a, b, c];
        p.sort_unstable();
        Ok(Self(p))
    }

    pub fn points(&self) -> [Point; 3] {
        self.0
    }

    /// The three unordered pairs, each as `(smaller, larger)`.
    pub fn pairs(&self) -> [(Point, Point); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }

    pub fn contains(&self, p: Point) -> bool {
        self.0.contains(&p)
    }

    /// The cyclic triple `(a, b, c)` for sorted points `a < b < c`.
    pub fn forward(&self) -> CyclicTriple {
        CyclicTriple(self.0)
    }

    /// The cyclic triple `(a, c, b)` for sorted points `a < b < c`.
    pub fn reversed(&self) -> CyclicTriple {
        let [a, b, c] = self.0;
        CyclicTriple([a, c, b])
    }
}

impl fmt::Display for UnorderedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{{{a},{b},{c}}}")
    }
}

/// A directed 3-cycle, stored with its minimum point first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CyclicTriple([Point; 3]);

impl CyclicTriple {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        canonical_rotation(a, b, c)
    }

    pub fn points(&self) -> [Point; 3] {
        self.0
    }

    /// The ordered pairs `(x, y)`, `(y, z)`, `(z, x)` of the cycle.
    pub fn arcs(&self) -> [(Point, Point); 3] {
        let [x, y, z] = self.0;
        [(x, y), (y, z), (z, x)]
    }

    /// The same three points traversed the other way round.
    pub fn reversed(&self) -> Self {
        let [x, y, z] = self.0;
        CyclicTriple([x, z, y])
    }

    pub fn support(&self) -> UnorderedTriple {
        let mut p = self.0;
        p.sort_unstable();
        UnorderedTriple(p)
    }

    /// Whether `(a, b, c)` read left to right is one of the three rotations.
    pub fn is_rotation_of(&self, a: Point, b: Point, c: Point) -> bool {
        let [x, y, z] = self.0;
        (a, b, c) == (x, y, z) || (a, b, c) == (y, z, x) || (a, b, c) == (z, x, y)
    }
}

impl fmt::Display for CyclicTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

/// Rotate `(a, b, c)` so that the minimum point comes first, keeping the
/// cyclic order.
pub fn canonical_rotation(a: Point, b: Point, c: Point) -> Result<CyclicTriple> {
    if a == b || b == c || a == c {
        return Err(Error::DegenerateTriple(a, b, c));
    }
    let t = if a < b && a < c {
        [a, b, c]
    } else if b < c {
        [b, c, a]
    } else {
        [c, a, b]
    };
    Ok(CyclicTriple(t))
}

fn check_order(v: usize) -> Result<()> {
    if v == 0 || v > MAX_ORDER {
        return Err(Error::MalformedDesign(format!(
            "order {v} outside 1..={MAX_ORDER}"
        )));
    }
    Ok(())
}

fn check_points(v: usize, points: [Point; 3]) -> Result<()> {
    match points.iter().find(|&&p| p as usize >= v) {
        Some(p) => Err(Error::MalformedDesign(format!(
            "point {p} out of range for order {v}"
        ))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug)]
pub struct TwofoldTripleSystem {
    v: usize,
    blocks: Vec<UnorderedTriple>,
    label: Option<String>,
}

impl TwofoldTripleSystem {
    /// Builds a design from a block list. Only well-formedness is checked
    /// here; use [`validate_tts`] for pair coverage.
    pub fn new(v: usize, blocks: Vec<UnorderedTriple>) -> Result<Self> {
        check_order(v)?;
        for b in &blocks {
            check_points(v, b.points())?;
        }
        Ok(Self {
            v,
            blocks,
            label: None,
        })
    }

    pub fn from_rows(v: usize, rows: &[[Point; 3]]) -> Result<Self> {
        let blocks = rows
            .iter()
            .map(|&[a, b, c]| UnorderedTriple::new(a, b, c))
            .collect::<Result<_>>()?;
        Self::new(v, blocks)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn order(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[UnorderedTriple] {
        &self.blocks
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Block multiset as block -> multiplicity.
    pub fn multiset(&self) -> BTreeMap<UnorderedTriple, usize> {
        let mut m = BTreeMap::new();
        for b in &self.blocks {
            *m.entry(*b).or_insert(0) += 1;
        }
        m
    }

    /// Number of blocks through each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.v];
        for b in &self.blocks {
            for p in b.points() {
                deg[p as usize] += 1;
            }
        }
        deg
    }

    /// Symmetric `v x v` matrix of pair multiplicities.
    pub fn pair_coverage(&self) -> Vec<Vec<u32>> {
        let mut cov = vec![vec![0u32; self.v]; self.v];
        for b in &self.blocks {
            for (x, y) in b.pairs() {
                cov[x as usize][y as usize] += 1;
                cov[y as usize][x as usize] += 1;
            }
        }
        cov
    }

    /// Image of the design under the point map `p -> perm[p]`.
    pub fn relabel(&self, perm: &[Point]) -> Result<Self> {
        check_permutation(self.v, perm)?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let [x, y, z] = b.points();
                UnorderedTriple::new(perm[x as usize], perm[y as usize], perm[z as usize])
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            v: self.v,
            blocks,
            label: self.label.clone(),
        })
    }

    fn sorted_blocks(&self) -> Vec<UnorderedTriple> {
        let mut b = self.blocks.clone();
        b.sort_unstable();
        b
    }
}

/// Equality is multiset equality of blocks; labels and listing order are
/// ignored.
impl PartialEq for TwofoldTripleSystem {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.sorted_blocks() == other.sorted_blocks()
    }
}

impl Eq for TwofoldTripleSystem {}

#[derive(Clone, Debug)]
pub struct MendelsohnTripleSystem {
    v: usize,
    triples: Vec<CyclicTriple>,
    label: Option<String>,
    partial: bool,
}

impl MendelsohnTripleSystem {
    /// Builds a full system from cyclic triples kept in listing order.
    pub fn new(v: usize, triples: Vec<CyclicTriple>) -> Result<Self> {
        check_order(v)?;
        for t in &triples {
            check_points(v, t.points())?;
        }
        Ok(Self {
            v,
            triples,
            label: None,
            partial: false,
        })
    }

    pub fn from_rows(v: usize, rows: &[[Point; 3]]) -> Result<Self> {
        let triples = rows
            .iter()
            .map(|&[a, b, c]| canonical_rotation(a, b, c))
            .collect::<Result<_>>()?;
        Self::new(v, triples)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn order(&self) -> usize {
        self.v
    }

    pub fn triples(&self) -> &[CyclicTriple] {
        &self.triples
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    /// The partial system obtained by deleting `t` from a full system.
    pub fn without(&self, t: &CyclicTriple) -> Result<Self> {
        if self.partial {
            return Err(Error::Invalid("system is already partial".into()));
        }
        let idx = self
            .triples
            .iter()
            .position(|x| x == t)
            .ok_or_else(|| Error::Invalid(format!("triple {t} not in the system")))?;
        let mut triples = self.triples.clone();
        triples.remove(idx);
        Ok(Self {
            v: self.v,
            triples,
            label: self.label.clone(),
            partial: true,
        })
    }

    /// `v x v` matrix where entry `[a][b]` counts triples containing the arc `(a, b)`.
    pub fn arc_coverage(&self) -> Vec<Vec<u32>> {
        let mut cov = vec![vec![0u32; self.v]; self.v];
        for t in &self.triples {
            for (x, y) in t.arcs() {
                cov[x as usize][y as usize] += 1;
            }
        }
        cov
    }

    pub fn relabel(&self, perm: &[Point]) -> Result<Self> {
        check_permutation(self.v, perm)?;
        let triples = self
            .triples
            .iter()
            .map(|t| {
                let [x, y, z] = t.points();
                canonical_rotation(perm[x as usize], perm[y as usize], perm[z as usize])
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            v: self.v,
            triples,
            label: self.label.clone(),
            partial: self.partial,
        })
    }

    /// Every triple reversed, listing order kept.
    pub fn converse(&self) -> Self {
        Self {
            v: self.v,
            triples: self.triples.iter().map(CyclicTriple::reversed).collect(),
            label: self.label.clone(),
            partial: self.partial,
        }
    }

    fn sorted_triples(&self) -> Vec<CyclicTriple> {
        let mut t = self.triples.clone();
        t.sort_unstable();
        t
    }
}

/// Set equality of triples; labels and listing order are ignored.
impl PartialEq for MendelsohnTripleSystem {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
            && self.partial == other.partial
            && self.sorted_triples() == other.sorted_triples()
    }
}

impl Eq for MendelsohnTripleSystem {}

fn check_permutation(v: usize, perm: &[Point]) -> Result<()> {
    let mut seen = vec![false; v];
    if perm.len() != v {
        return Err(Error::PointSetMismatch(v));
    }
    for &p in perm {
        let p = p as usize;
        if p >= v || seen[p] {
            return Err(Error::PointSetMismatch(v));
        }
        seen[p] = true;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Tts,
    Mts,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Tts => "tts",
            Kind::Mts => "mts",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Either kind of design, for operations that accept both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Design {
    Tts(TwofoldTripleSystem),
    Mts(MendelsohnTripleSystem),
}

impl Design {
    pub fn kind(&self) -> Kind {
        match self {
            Design::Tts(_) => Kind::Tts,
            Design::Mts(_) => Kind::Mts,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Design::Tts(t) => t.order(),
            Design::Mts(m) => m.order(),
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            Design::Tts(t) => t.label(),
            Design::Mts(m) => m.label(),
        }
    }

    /// Rows as written: sorted for blocks, minimum-first for cyclic triples.
    pub fn rows(&self) -> Vec<[Point; 3]> {
        match self {
            Design::Tts(t) => t.blocks().iter().map(|b| b.points()).collect(),
            Design::Mts(m) => m.triples().iter().map(|t| t.points()).collect(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Design::Tts(t) => validate_tts(t),
            Design::Mts(m) => validate_mts(m),
        }
    }
}

impl From<TwofoldTripleSystem> for Design {
    fn from(t: TwofoldTripleSystem) -> Self {
        Design::Tts(t)
    }
}

impl From<MendelsohnTripleSystem> for Design {
    fn from(m: MendelsohnTripleSystem) -> Self {
        Design::Mts(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairRef {
    Unordered(Point, Point),
    Ordered(Point, Point),
}

impl fmt::Display for PairRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairRef::Unordered(a, b) => write!(f, "pair {{{a},{b}}}"),
            PairRef::Ordered(a, b) => write!(f, "ordered pair ({a},{b})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pair: PairRef,
    pub observed: u32,
    pub expected: u32,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let times = |n: u32| if n == 1 { "time" } else { "times" };
        write!(
            f,
            "{} covered {} {}, expected {}",
            self.pair,
            self.observed,
            times(self.observed),
            self.expected
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            valid: violations.is_empty(),
            violations,
        }
    }
}

/// Checks that every unordered pair is covered exactly twice. A wrong block
/// count always shows up as pair violations, since total coverage is three
/// per block.
pub fn validate_tts(d: &TwofoldTripleSystem) -> ValidationReport {
    let cov = d.pair_coverage();
    let mut violations = Vec::new();
    for a in 0..d.v {
        for b in a + 1..d.v {
            if cov[a][b] != 2 {
                violations.push(Violation {
                    pair: PairRef::Unordered(a as Point, b as Point),
                    observed: cov[a][b],
                    expected: 2,
                });
            }
        }
    }
    ValidationReport::from_violations(violations)
}

/// Full systems need every ordered pair exactly once. Partial systems need
/// every ordered pair at most once with exactly three left uncovered; when
/// that count is wrong every uncovered pair is listed.
pub fn validate_mts(m: &MendelsohnTripleSystem) -> ValidationReport {
    let cov = m.arc_coverage();
    let mut violations = Vec::new();
    let mut uncovered = Vec::new();
    for a in 0..m.v {
        for b in 0..m.v {
            if a == b {
                continue;
            }
            let pair = PairRef::Ordered(a as Point, b as Point);
            match cov[a][b] {
                1 => {}
                0 if m.partial => uncovered.push(Violation {
                    pair,
                    observed: 0,
                    expected: 1,
                }),
                n => violations.push(Violation {
                    pair,
                    observed: n,
                    expected: 1,
                }),
            }
        }
    }
    if m.partial && uncovered.len() != 3 {
        violations.extend(uncovered);
    }
    ValidationReport::from_violations(violations)
}

/// Forgets the orientation of every triple.
pub fn underlying_tts(m: &MendelsohnTripleSystem) -> Result<TwofoldTripleSystem> {
    let mut t = TwofoldTripleSystem::new(m.v, m.triples.iter().map(|t| t.support()).collect())?;
    t.label = m.label.clone();
    let report = validate_tts(&t);
    if !report.valid {
        return Err(Error::InternalInconsistency(format!(
            "underlying system is not a TTS({}): {}",
            m.v, report.violations[0]
        )));
    }
    Ok(t)
}

pub fn converse(m: &MendelsohnTripleSystem) -> MendelsohnTripleSystem {
    m.converse()
}
