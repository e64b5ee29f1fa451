//! Isomorph-free generation of all TTS(v), v <= 10.
//!
//! The blocks through point 0 form a 2-regular multigraph on the other
//! `v - 1` points (a repeated block `{0, a, b}` is a double edge), so up to
//! relabelling they are fixed by a partition of `v - 1` into cycle lengths
//! of at least 2. For each such neighbourhood the remaining blocks are
//! filled in by exact pair-budget search. A completed design is kept only
//! if no point has a smaller neighbourhood type than point 0, and the
//! survivors are deduplicated by canonical form.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::design::{MendelsohnTripleSystem, Point, TwofoldTripleSystem, UnorderedTriple};
use crate::error::{Error, Result};
use crate::iso::{dedupe, dedupe_up_to_converse, CanonicalForm, Canonical};
use crate::orient::orient_distinct;

pub const MAX_GEN_ORDER: usize = 10;

pub fn check_order(v: usize) -> Result<()> {
    if (3..=MAX_GEN_ORDER).contains(&v) && v % 3 != 2 {
        Ok(())
    } else {
        Err(Error::InvalidOrder(v))
    }
}

/// Search state: blocks chosen so far and the remaining coverage of every
/// unordered pair.
#[derive(Clone, Debug)]
pub struct PartialDesign {
    v: usize,
    blocks: Vec<UnorderedTriple>,
    budget: Vec<u8>,
}

impl PartialDesign {
    pub fn new(v: usize) -> Self {
        let mut budget = vec![2u8; v * v];
        for p in 0..v {
            budget[p * v + p] = 0;
        }
        Self {
            v,
            blocks: Vec::new(),
            budget,
        }
    }

    pub fn blocks(&self) -> &[UnorderedTriple] {
        &self.blocks
    }

    pub fn budget(&self, a: Point, b: Point) -> u8 {
        self.budget[a as usize * self.v + b as usize]
    }

    fn adjust(&mut self, b: &UnorderedTriple, delta: i8) {
        for (x, y) in b.pairs() {
            let (x, y) = (x as usize, y as usize);
            self.budget[x * self.v + y] = self.budget[x * self.v + y].wrapping_add_signed(delta);
            self.budget[y * self.v + x] = self.budget[y * self.v + x].wrapping_add_signed(delta);
        }
    }

    pub fn can_add(&self, b: &UnorderedTriple) -> bool {
        b.pairs().iter().all(|&(x, y)| self.budget(x, y) > 0)
    }

    pub fn add(&mut self, b: UnorderedTriple) {
        debug_assert!(self.can_add(&b));
        self.adjust(&b, -1);
        self.blocks.push(b);
    }

    pub fn pop(&mut self) -> Option<UnorderedTriple> {
        let b = self.blocks.pop()?;
        self.adjust(&b, 1);
        Some(b)
    }

    /// First pair (lexicographically) that still needs coverage.
    fn open_pair(&self) -> Option<(Point, Point)> {
        (0..self.v).find_map(|a| {
            (a + 1..self.v)
                .find(|&b| self.budget[a * self.v + b] > 0)
                .map(|b| (a as Point, b as Point))
        })
    }

    fn is_complete(&self) -> bool {
        self.budget.iter().all(|&b| b == 0)
    }

    fn to_tts(&self) -> TwofoldTripleSystem {
        TwofoldTripleSystem::new(self.v, self.blocks.clone()).expect("points in range")
    }
}

/// Partitions of `n` into parts >= 2, parts in nonincreasing order.
fn cycle_types(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (2..=max.min(n)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Sorted cycle lengths of the neighbourhood of `p`.
fn neighbourhood_type(t: &TwofoldTripleSystem, p: Point) -> Vec<usize> {
    let v = t.order();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); v];
    for b in t.blocks().iter().filter(|b| b.contains(p)) {
        let others: Vec<usize> = b.points().into_iter().filter(|&x| x != p).map(usize::from).collect();
        adj[others[0]].push(others[1]);
        adj[others[1]].push(others[0]);
    }
    let mut seen = vec![false; v];
    let mut lens = Vec::new();
    for start in 0..v {
        if seen[start] || adj[start].is_empty() {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut len = 0;
        while let Some(x) = stack.pop() {
            len += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        lens.push(len);
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

/// Blocks through point 0 for a cycle type, on points `1..v` in order.
fn neighbourhood_blocks(cycles: &[usize]) -> Vec<UnorderedTriple> {
    let mut blocks = Vec::new();
    let mut next: Point = 1;
    for &len in cycles {
        let pts: Vec<Point> = (next..next + len as Point).collect();
        for i in 0..len {
            let (a, b) = (pts[i], pts[(i + 1) % len]);
            if len == 2 && i == 1 {
                blocks.push(UnorderedTriple::new(0, pts[0], pts[1]).unwrap());
            } else {
                blocks.push(UnorderedTriple::new(0, a, b).unwrap());
            }
        }
        next += len as Point;
    }
    blocks
}

fn complete(
    d: &mut PartialDesign,
    type_rank: &dyn Fn(&[usize]) -> usize,
    own_rank: usize,
    out: &mut BTreeSet<CanonicalForm>,
) {
    let Some((a, b)) = d.open_pair() else {
        if d.is_complete() {
            accept(d, type_rank, own_rank, out);
        }
        return;
    };
    // any block through {a, b} has its third point beyond b, since every
    // earlier pair is already exhausted
    let v = d.v as Point;
    let thirds: Vec<Point> = (b + 1..v)
        .filter(|&c| d.budget(a, c) > 0 && d.budget(b, c) > 0)
        .collect();
    if d.budget(a, b) == 2 {
        for (i, &c) in thirds.iter().enumerate() {
            for &c2 in &thirds[i..] {
                let first = UnorderedTriple::new(a, b, c).unwrap();
                d.add(first);
                let second = UnorderedTriple::new(a, b, c2).unwrap();
                if d.can_add(&second) {
                    d.add(second);
                    complete(d, type_rank, own_rank, out);
                    d.pop();
                }
                d.pop();
            }
        }
    } else {
        for &c in &thirds {
            d.add(UnorderedTriple::new(a, b, c).unwrap());
            complete(d, type_rank, own_rank, out);
            d.pop();
        }
    }
}

fn accept(
    d: &PartialDesign,
    type_rank: &dyn Fn(&[usize]) -> usize,
    own_rank: usize,
    out: &mut BTreeSet<CanonicalForm>,
) {
    let t = d.to_tts();
    for p in 1..d.v as Point {
        if type_rank(&neighbourhood_type(&t, p)) < own_rank {
            return;
        }
    }
    out.insert(t.canonical_form());
}

/// One TTS(v) per isomorphism class, each in canonical form, sorted by
/// canonical form. The result does not depend on the rayon pool size.
pub fn enumerate_tts(v: usize) -> Result<Vec<TwofoldTripleSystem>> {
    check_order(v)?;
    let types = cycle_types(v - 1);
    let type_rank = |ty: &[usize]| types.iter().position(|t| t == ty).expect("known cycle type");
    // split on the neighbourhood type and the first completion step
    let mut jobs: Vec<(usize, PartialDesign)> = Vec::new();
    for (rank, ty) in types.iter().enumerate() {
        let mut d = PartialDesign::new(v);
        for b in neighbourhood_blocks(ty) {
            d.add(b);
        }
        jobs.push((rank, d));
    }
    let forms: BTreeSet<CanonicalForm> = jobs
        .into_par_iter()
        .map(|(rank, mut d)| {
            let mut out = BTreeSet::new();
            complete(&mut d, &type_rank, rank, &mut out);
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(forms
        .into_iter()
        .map(|f| TwofoldTripleSystem::from_rows(f.v, &f.rows).expect("canonical rows"))
        .collect())
}

/// Output of the TTS -> MTS pipeline for one order.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub tts: Vec<TwofoldTripleSystem>,
    /// For each entry of `tts`, its nonisomorphic orientations.
    pub orientations: Vec<Vec<MendelsohnTripleSystem>>,
    /// One MTS per class up to isomorphism and converse.
    pub mts: Vec<MendelsohnTripleSystem>,
    /// Number of MTS classes under isomorphism alone.
    pub strict_mts_count: usize,
}

impl Pipeline {
    pub fn orientable_count(&self) -> usize {
        self.orientations.iter().filter(|o| !o.is_empty()).count()
    }
}

pub fn pipeline_from(tts: Vec<TwofoldTripleSystem>) -> Result<Pipeline> {
    let orientations: Vec<Vec<MendelsohnTripleSystem>> = tts
        .par_iter()
        .map(orient_distinct)
        .collect::<Result<_>>()?;
    let all: Vec<MendelsohnTripleSystem> = orientations.iter().flatten().cloned().collect();
    let strict_mts_count = dedupe(&all).len();
    let mts = dedupe_up_to_converse(&all);
    Ok(Pipeline {
        tts,
        orientations,
        mts,
        strict_mts_count,
    })
}

pub fn pipeline(v: usize) -> Result<Pipeline> {
    pipeline_from(enumerate_tts(v)?)
}

/// One MTS(v) per class up to isomorphism and converse, grouped by
/// underlying TTS in canonical order.
pub fn pipeline_mts(v: usize) -> Result<Vec<MendelsohnTripleSystem>> {
    Ok(pipeline(v)?.mts)
}
