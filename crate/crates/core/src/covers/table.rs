use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{exact_min_cover, greedy_cover, packing, Cover, CoverKind, DEFAULT_BUDGET};
use crate::continuum::{level_eps, Continuum};
use crate::error::Result;
use crate::io::{csv_err, FORMAT_VERSION};

/// Covers at `eps = 2^-n` for `n = 0..=n_max`, exact when the continuum fits the budget.
pub fn raw_covers(x: &Continuum, n_max: u32, kind: CoverKind, budget: usize) -> Vec<Cover> {
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let eps = level_eps(n);
            let mut cover = if x.len() <= budget {
                exact_min_cover(x, eps, budget, kind).unwrap_or_else(|_| greedy_cover(x, eps, kind))
            } else {
                greedy_cover(x, eps, kind)
            };
            cover.level = n;
            cover
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub n: u32,
    pub epsilon: f64,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

/// Per-level bounds on the Sierpiński function at `eps = 2^-n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SierpinskiTable {
    pub entries: Vec<TableEntry>,
}

/// Closed-cover table for levels `0..=n_max`.
///
/// Closed covers measure the cell graph as a 1-complex, the space the curves fill.
/// Rows past the resolution level carry the capped edge count in both bounds.
pub fn sierpinski_table(x: &Continuum, n_max: u32) -> SierpinskiTable {
    sierpinski_table_with(x, n_max, CoverKind::Closed, DEFAULT_BUDGET)
}

pub fn sierpinski_table_with(x: &Continuum, n_max: u32, kind: CoverKind, budget: usize) -> SierpinskiTable {
    SierpinskiTable::from_covers(x, &raw_covers(x, n_max, kind, budget))
}

impl SierpinskiTable {
    /// Bounds from covers indexed by level. Both bounds are running maxima, so monotone.
    pub fn from_covers(x: &Continuum, covers: &[Cover]) -> Self {
        let mut entries: Vec<TableEntry> = Vec::with_capacity(covers.len());
        for cover in covers {
            let prev = entries.last();
            let upper = cover.len().max(prev.map_or(0, |e| e.upper));
            let packed = if cover.exact { cover.len() } else { packing(x, cover.epsilon).len() };
            let lower = if cover.capped { upper } else { packed.max(prev.map_or(0, |e| e.lower)).min(upper) };
            entries.push(TableEntry {
                n: cover.level,
                epsilon: cover.epsilon,
                lower,
                upper,
                exact: cover.exact || (lower == upper && !cover.capped),
            });
        }
        SierpinskiTable { entries }
    }

    /// Upper bound at level `n`.
    pub fn upper(&self, n: u32) -> Option<usize> {
        self.entries.iter().find(|e| e.n == n).map(|e| e.upper)
    }

    pub fn max_level(&self) -> Option<u32> {
        self.entries.iter().map(|e| e.n).max()
    }

    /// CSV with header `n,epsilon,lower,upper,exact`, preceded by a version comment.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# format_version: {FORMAT_VERSION}")?;
        let mut w = csv::Writer::from_writer(out);
        for e in &self.entries {
            w.serialize(e).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}
