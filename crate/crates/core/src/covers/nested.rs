use std::collections::HashMap;

use rayon::prelude::*;

use super::{raw_covers, Cover, CoverKind, DEFAULT_BUDGET};
use crate::cellset::Region;
use crate::continuum::Continuum;
use crate::error::{Error, Result};

/// Saturates `a` with the raw covers of levels `from..=to`; the identity when `from > to`.
///
/// Each step adds every part of the next level that meets the running set.
pub fn saturate_range(raw: &[Cover], a: &Region, from: usize, to: usize) -> Region {
    let mut acc = a.clone();
    for cover in raw.iter().take(to + 1).skip(from) {
        let mut next = acc.clone();
        for part in &cover.parts {
            if part.meets(&acc) {
                next.union_with(part);
            }
        }
        acc = next;
    }
    acc
}

/// Last level whose raw cover is a genuine cover rather than the capped edge cover.
fn top_level(raw: &[Cover]) -> Option<usize> {
    raw.iter().rposition(|c| !c.capped)
}

/// Saturation of `a` from level `n` through the finest uncapped raw level.
pub fn star_saturate(raw: &[Cover], a: &Region, n: usize) -> Region {
    match top_level(raw) {
        Some(top) => saturate_range(raw, a, n, top),
        None => a.clone(),
    }
}

/// Nested closed covers with the refinement lists between consecutive levels.
#[derive(Clone, Debug)]
pub struct NestedCovers {
    pub levels: Vec<Cover>,
    pub raw_levels: Vec<Cover>,
    /// `refinement[n][i]`: parts of level `n + 1` contained in part `i` of level `n`.
    pub refinement: Vec<Vec<Vec<usize>>>,
}

/// Nested covers for levels `0..=n_max` from closed raw covers.
pub fn build_nested(x: &Continuum, n_max: u32) -> Result<NestedCovers> {
    NestedCovers::from_raw(x, raw_covers(x, n_max, CoverKind::Closed, DEFAULT_BUDGET))
}

impl NestedCovers {
    /// Saturates each raw part from the next level down and checks the nesting conditions.
    pub fn from_raw(x: &Continuum, raw: Vec<Cover>) -> Result<Self> {
        if raw.iter().any(|c| c.kind != CoverKind::Closed) {
            return Err(Error::NestingViolation("raw covers must be closed covers".into()));
        }
        let levels: Vec<Cover> = raw
            .par_iter()
            .enumerate()
            .map(|(n, cover)| {
                let mut seen = HashMap::new();
                let mut parts = Vec::new();
                for f in &cover.parts {
                    let c = star_saturate(&raw, f, n + 1);
                    if !seen.contains_key(&c) {
                        seen.insert(c.clone(), parts.len());
                        parts.push(c);
                    }
                }
                let mut out = Cover::new(x, cover.epsilon, parts, CoverKind::Closed);
                out.level = cover.level;
                out.capped = cover.capped;
                out
            })
            .collect();
        let refinement = levels
            .windows(2)
            .map(|pair| {
                pair[0]
                    .parts
                    .par_iter()
                    .map(|c| (0..pair[1].parts.len()).filter(|&j| c.contains(&pair[1].parts[j])).collect())
                    .collect()
            })
            .collect();
        let nested = NestedCovers { levels, raw_levels: raw, refinement };
        nested.check(x)?;
        Ok(nested)
    }

    pub fn depth(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn children(&self, level: usize, part: usize) -> &[usize] {
        &self.refinement[level][part]
    }

    /// Level 0 is the whole space, counts do not grow past the raw counts, meshes are
    /// at most `3 * 2^-n` (the edge length at capped levels), and each part equals the
    /// union of its children.
    pub fn check(&self, x: &Continuum) -> Result<()> {
        let fail = |msg: String| Err(Error::NestingViolation(msg));
        match self.levels.first() {
            Some(c0) if c0.len() == 1 && c0.parts[0] == Region::whole(x) => {}
            _ => return fail("level 0 is not the whole space".into()),
        }
        let h = x.max_edge_length();
        for (n, (c, f)) in self.levels.iter().zip(&self.raw_levels).enumerate() {
            if c.len() > f.len() {
                return fail(format!("level {n} has more parts than its raw cover"));
            }
            let bound = if c.capped { h } else { 3.0 * c.epsilon };
            if c.mesh > bound * (1.0 + 1e-12) {
                return fail(format!("level {n} mesh {} exceeds {bound}", c.mesh));
            }
            if let Err(msg) = c.validate(x) {
                return fail(format!("level {n}: {msg}"));
            }
        }
        for (n, lists) in self.refinement.iter().enumerate() {
            for (i, kids) in lists.iter().enumerate() {
                let mut union = Region::empty(x);
                for &k in kids {
                    union.union_with(&self.levels[n + 1].parts[k]);
                }
                if union != self.levels[n].parts[i] {
                    return fail(format!("part {i} of level {n} is not the union of its children"));
                }
            }
        }
        Ok(())
    }
}
