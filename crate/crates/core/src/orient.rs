//! Orienting the blocks of a TTS into an MTS.
//!
//! Every unordered pair lies in exactly two blocks, so once a block is
//! oriented the two other blocks through its pairs are forced to use the
//! opposite arcs. The search is a depth-first walk over blocks in ascending
//! order, forward before reversed, with that propagation after each choice.

use crate::design::{validate_tts, CyclicTriple, MendelsohnTripleSystem, TwofoldTripleSystem};
use crate::error::{Error, Result};
use crate::iso::{dedupe, Canonical};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    /// `{a < b < c}` becomes `(a, b, c)`.
    Forward,
    /// `{a < b < c}` becomes `(a, c, b)`.
    Reversed,
}

/// One orientation per block, indexed like `TwofoldTripleSystem::blocks`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientationAssignment(pub Vec<Orientation>);

impl OrientationAssignment {
    pub fn apply(&self, t: &TwofoldTripleSystem) -> Result<MendelsohnTripleSystem> {
        let triples = t
            .blocks()
            .iter()
            .zip(&self.0)
            .map(|(b, o)| match o {
                Orientation::Forward => b.forward(),
                Orientation::Reversed => b.reversed(),
            })
            .collect();
        let m = MendelsohnTripleSystem::new(t.order(), triples)?;
        Ok(match t.label() {
            Some(l) => m.with_label(l),
            None => m,
        })
    }

    /// Every block flipped; applied to a TTS this gives the converse MTS.
    pub fn flipped(&self) -> Self {
        Self(
            self.0
                .iter()
                .map(|o| match o {
                    Orientation::Forward => Orientation::Reversed,
                    Orientation::Reversed => Orientation::Forward,
                })
                .collect(),
        )
    }
}

fn oriented(t: &TwofoldTripleSystem, block: usize, o: Orientation) -> CyclicTriple {
    let b = t.blocks()[block];
    match o {
        Orientation::Forward => b.forward(),
        Orientation::Reversed => b.reversed(),
    }
}

struct Propagator<'a> {
    t: &'a TwofoldTripleSystem,
    v: usize,
    /// Blocks in decision order (ascending by block).
    order: Vec<usize>,
    /// The two blocks through each unordered pair, indexed `a * v + b`.
    pair_blocks: Vec<[usize; 2]>,
    /// Block owning each arc, indexed `a * v + b`.
    arc_owner: Vec<Option<usize>>,
    choice: Vec<Option<Orientation>>,
    trail: Vec<usize>,
    /// First copy of each repeated block. Its two copies only cover each
    /// other's pairs, so fixing it forward loses no distinct system.
    first_copy: Vec<bool>,
    distinct_only: bool,
}

impl<'a> Propagator<'a> {
    fn new(t: &'a TwofoldTripleSystem) -> Result<Self> {
        let report = validate_tts(t);
        if !report.valid {
            return Err(Error::Invalid(format!(
                "not a TTS({}): {}",
                t.order(),
                report.violations[0]
            )));
        }
        let v = t.order();
        let mut pair_blocks = vec![[usize::MAX; 2]; v * v];
        for (i, b) in t.blocks().iter().enumerate() {
            for (x, y) in b.pairs() {
                for idx in [x as usize * v + y as usize, y as usize * v + x as usize] {
                    let slot = &mut pair_blocks[idx];
                    if slot[0] == usize::MAX {
                        slot[0] = i;
                    } else {
                        slot[1] = i;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..t.blocks().len()).collect();
        order.sort_by_key(|&i| t.blocks()[i]);
        let mut first_copy = vec![false; order.len()];
        for w in order.windows(2) {
            if t.blocks()[w[0]] == t.blocks()[w[1]] {
                first_copy[w[0]] = true;
            }
        }
        Ok(Self {
            t,
            v,
            order,
            pair_blocks,
            arc_owner: vec![None; v * v],
            choice: vec![None; t.blocks().len()],
            trail: Vec::new(),
            first_copy,
            distinct_only: false,
        })
    }

    /// Orients `block` and everything it forces. On conflict the caller
    /// undoes to its saved trail length.
    fn assign(&mut self, block: usize, o: Orientation) -> bool {
        let mut queue = vec![(block, o)];
        while let Some((b, o)) = queue.pop() {
            match self.choice[b] {
                Some(prev) if prev == o => continue,
                Some(_) => return false,
                None => {}
            }
            self.choice[b] = Some(o);
            self.trail.push(b);
            for (x, y) in oriented(self.t, b, o).arcs() {
                let (x, y) = (x as usize, y as usize);
                if self.arc_owner[x * self.v + y].is_some() {
                    return false;
                }
                self.arc_owner[x * self.v + y] = Some(b);
                let [p, q] = self.pair_blocks[x * self.v + y];
                let other = if p == b { q } else { p };
                // the other block through {x, y} must carry (y, x)
                let want = if oriented(self.t, other, Orientation::Forward)
                    .arcs()
                    .contains(&(y as u8, x as u8))
                {
                    Orientation::Forward
                } else {
                    Orientation::Reversed
                };
                queue.push((other, want));
            }
        }
        true
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let b = self.trail.pop().unwrap();
            let o = self.choice[b].take().unwrap();
            for (x, y) in oriented(self.t, b, o).arcs() {
                let idx = x as usize * self.v + y as usize;
                if self.arc_owner[idx] == Some(b) {
                    self.arc_owner[idx] = None;
                }
            }
        }
    }

    /// Visits complete assignments; the visitor returns `false` to stop.
    fn search(&mut self, depth: usize, visit: &mut dyn FnMut(&[Option<Orientation>]) -> bool) -> bool {
        let Some(pos) = (depth..self.order.len()).find(|&i| self.choice[self.order[i]].is_none()) else {
            self.debug_check_repeated();
            return visit(&self.choice);
        };
        let block = self.order[pos];
        for o in [Orientation::Forward, Orientation::Reversed] {
            if o == Orientation::Reversed && self.distinct_only && self.first_copy[block] {
                break;
            }
            let mark = self.trail.len();
            if self.assign(block, o) && !self.search(pos + 1, visit) {
                self.undo(mark);
                return false;
            }
            self.undo(mark);
        }
        true
    }

    fn debug_check_repeated(&self) {
        if cfg!(debug_assertions) {
            let blocks = self.t.blocks();
            for w in self.order.windows(2) {
                if blocks[w[0]] == blocks[w[1]] {
                    debug_assert_ne!(self.choice[w[0]], self.choice[w[1]]);
                }
            }
        }
    }
}

/// All valid orientation vectors, in lexicographic order over the blocks
/// taken in ascending order (forward < reversed).
pub fn enumerate_assignments(t: &TwofoldTripleSystem) -> Result<Vec<OrientationAssignment>> {
    let mut p = Propagator::new(t)?;
    let mut out = Vec::new();
    p.search(0, &mut |c| {
        out.push(OrientationAssignment(c.iter().map(|o| o.unwrap()).collect()));
        true
    });
    Ok(out)
}

/// Every distinct MTS whose underlying system is `t`. Assignments that
/// differ only in which copy of a repeated block goes which way give the
/// same system, which is listed once.
pub fn enumerate_orientations(t: &TwofoldTripleSystem) -> Result<Vec<MendelsohnTripleSystem>> {
    let mut p = Propagator::new(t)?;
    p.distinct_only = true;
    let mut out = Vec::new();
    p.search(0, &mut |c| {
        out.push(OrientationAssignment(c.iter().map(|o| o.unwrap()).collect()));
        true
    });
    out.iter().map(|a| a.apply(t)).collect()
}

pub fn is_orientable(t: &TwofoldTripleSystem) -> Result<bool> {
    let mut p = Propagator::new(t)?;
    let mut found = false;
    p.search(0, &mut |_| {
        found = true;
        false
    });
    Ok(found)
}

/// Nonisomorphic orientations of `t`, sorted by canonical form.
pub fn orient_distinct(t: &TwofoldTripleSystem) -> Result<Vec<MendelsohnTripleSystem>> {
    let mut reps = dedupe(&enumerate_orientations(t)?);
    reps.sort_by_cached_key(|m| m.canonical_form());
    Ok(reps)
}
