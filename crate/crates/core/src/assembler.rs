//! Splices paths into the skeleton gaps to get a surjection with a certified modulus.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cellset::CellSet;
use crate::continuum::{level_eps, Continuum};
use crate::covers::{raw_covers, CoverKind, NestedCovers, SierpinskiTable, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::io::FORMAT_VERSION;
use crate::modulus::ModulusSpec;
use crate::path::{build_path, Breakpoint, ParamCurve};
use crate::skeleton::{build_skeleton, gap_records, GapRecord, Skeleton};

/// `deltas[n] = inverse(min(1, 2^(6 - n)))` for `n = 0..=levels`.
pub fn delta_sequence(omega: &ModulusSpec, levels: u32) -> Result<Vec<f64>> {
    (0..=levels).map(|n| omega.inverse(2f64.powi(6 - n as i32).min(1.0))).collect()
}

/// `eps[n] = sum over m = n..=N of upper(m) * deltas[m]`, for `n = 0..=N`.
pub fn epsilon_sequence(table: &SierpinskiTable, deltas: &[f64]) -> Vec<f64> {
    let top = deltas.len() - 1;
    let mut eps = vec![0.0; top + 1];
    let mut acc = 0.0;
    for n in (0..=top).rev() {
        let count = table.upper(n as u32).expect("table covers every level") as f64;
        acc += count * deltas[n];
        eps[n] = acc;
    }
    eps
}

/// Path across one gap, stretched onto `[u, v]`.
pub fn fill_gap(x: &Continuum, nested: &NestedCovers, gap: &GapRecord, deltas: &[f64]) -> Result<ParamCurve> {
    let (a, b) = gap.endpoints;
    let path = build_path(x, nested, &gap.connector_set, a, b, gap.level, deltas)?;
    Ok(path.stretched(gap.u, gap.v))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub n: u32,
    pub delta: f64,
    pub allowed: f64,
    pub observed: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub format_version: u32,
    pub levels: Vec<LevelRow>,
    pub coverage: f64,
    pub s: f64,
    pub passed: bool,
    /// Finest level at which the covers are genuine rather than capped.
    pub valid_through: u32,
    /// Largest `d / omega(dt)` over breakpoint pairs.
    pub worst_ratio: f64,
    pub worst_pair: Option<(usize, usize)>,
}

impl Certificate {
    /// `Err(CertificateFailure)` naming the first failing level, if any.
    pub fn check(&self) -> Result<()> {
        if let Some(row) = self.levels.iter().find(|r| r.observed > r.allowed) {
            return Err(Error::CertificateFailure { level: row.n, observed: row.observed, allowed: row.allowed });
        }
        if !self.passed {
            return Err(Error::CertificateFailure { level: 0, observed: self.worst_ratio, allowed: 1.0 });
        }
        Ok(())
    }
}

/// Where a spliced breakpoint came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// The `i`-th skeleton point.
    Skeleton(usize),
    /// Interior of the `i`-th gap.
    Gap(usize),
    /// Inserted to visit a cell that no representative reached.
    Fill,
}

#[derive(Clone, Debug)]
pub struct HolderCurve {
    pub curve: ParamCurve,
    pub certificate: Certificate,
    pub origins: Vec<Origin>,
    pub deltas: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub table: SierpinskiTable,
    pub skeleton: Option<Skeleton>,
    pub gaps: Vec<GapRecord>,
}

/// Runs the whole construction for `levels` levels and certifies the result.
///
/// A failed certificate is reported in the returned value, not as an error.
pub fn assemble(x: &Continuum, omega: &ModulusSpec, levels: u32) -> Result<HolderCurve> {
    if levels == 0 {
        return Err(Error::InvalidParameter("at least one level is required".into()));
    }
    let deltas = delta_sequence(omega, levels)?;
    let raw = raw_covers(x, levels, CoverKind::Closed, DEFAULT_BUDGET);
    let table = SierpinskiTable::from_covers(x, &raw);
    let epsilons = epsilon_sequence(&table, &deltas);
    if x.is_singleton() {
        let curve = ParamCurve::point(0);
        let certificate = certify(x, &curve, omega, &deltas, levels);
        return Ok(HolderCurve {
            curve,
            certificate,
            origins: vec![Origin::Skeleton(0)],
            deltas,
            epsilons,
            table,
            skeleton: None,
            gaps: Vec::new(),
        });
    }
    let nested = NestedCovers::from_raw(x, raw)?;
    let skeleton = build_skeleton(x, &nested.raw_levels, &epsilons)?;
    let gaps = gap_records(x, &nested.raw_levels, &skeleton);
    let segments = gaps.par_iter().map(|g| fill_gap(x, &nested, g, &deltas)).collect::<Result<Vec<_>>>()?;

    let mut breakpoints = vec![Breakpoint { t: 0.0, cell: skeleton.points[0].cell }];
    let mut origins = vec![Origin::Skeleton(0)];
    let mut weightlog = Vec::new();
    for (i, seg) in segments.iter().enumerate() {
        let inner = &seg.breakpoints[1..seg.breakpoints.len() - 1];
        breakpoints.extend_from_slice(inner);
        origins.extend(std::iter::repeat_n(Origin::Gap(i), inner.len()));
        let right = skeleton.points[i + 1];
        breakpoints.push(Breakpoint { t: right.t, cell: right.cell });
        origins.push(Origin::Skeleton(i + 1));
        weightlog.extend_from_slice(&seg.weightlog);
    }
    complete_coverage(x, omega, &mut breakpoints, &mut origins);
    let curve = ParamCurve { s: skeleton.s, breakpoints, weightlog };
    let certificate = certify(x, &curve, omega, &deltas, levels);
    Ok(HolderCurve { curve, certificate, origins, deltas, epsilons, table, skeleton: Some(skeleton), gaps })
}

/// Visits every cell the splice missed. Each missing cell goes into the middle
/// of the interval whose two new neighboring pairs have the smallest ratio
/// `d / omega(dt)`; ties go to the earliest interval.
fn complete_coverage(x: &Continuum, omega: &ModulusSpec, bp: &mut Vec<Breakpoint>, origins: &mut Vec<Origin>) {
    let mut seen = CellSet::new(x.len());
    bp.iter().for_each(|b| seen.insert(b.cell));
    for c in 0..x.len() {
        if seen.contains(c) || bp.len() < 2 {
            continue;
        }
        let cost = |i: usize| {
            let half = (bp[i + 1].t - bp[i].t) / 2.0;
            x.dist(bp[i].cell, c).max(x.dist(c, bp[i + 1].cell)) / omega.eval(half)
        };
        let best = (0..bp.len() - 1)
            .map(|i| (cost(i), i))
            .min_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)))
            .expect("at least one interval")
            .1;
        let t = (bp[best].t + bp[best + 1].t) / 2.0;
        bp.insert(best + 1, Breakpoint { t, cell: c });
        origins.insert(best + 1, Origin::Fill);
        seen.insert(c);
    }
}

/// Per-level maxima of `d` over breakpoint pairs closer than `deltas[n]`, the
/// worst ratio against `omega`, and exact cell coverage.
pub fn certify(x: &Continuum, curve: &ParamCurve, omega: &ModulusSpec, deltas: &[f64], levels: u32) -> Certificate {
    let bp = &curve.breakpoints;
    let top = levels as usize;
    let window = omega.inverse(1.0).unwrap_or(f64::INFINITY).max(deltas[1..=top].iter().copied().fold(0.0, f64::max));

    // best[k]: max distance over pairs whose gap is below deltas[n] exactly for n <= k.
    let (best, worst) = (0..bp.len())
        .into_par_iter()
        .map(|i| {
            let mut best = vec![0.0f64; top + 1];
            let mut worst = (0.0f64, None);
            for j in i + 1..bp.len() {
                let dt = bp[j].t - bp[i].t;
                if dt >= window {
                    break;
                }
                let d = x.dist(bp[i].cell, bp[j].cell);
                let k = (1..=top).take_while(|&n| dt < deltas[n]).last().unwrap_or(0);
                best[k] = best[k].max(d);
                let ratio = d / omega.eval(dt);
                if ratio > worst.0 {
                    worst = (ratio, Some((i, j)));
                }
            }
            (best, worst)
        })
        .reduce(
            || (vec![0.0; top + 1], (0.0, None)),
            |(mut a, wa), (b, wb)| {
                for (p, q) in a.iter_mut().zip(b) {
                    *p = p.max(q);
                }
                let w = if wb.0 > wa.0 || (wb.0 == wa.0 && wb.1 < wa.1 && wb.1.is_some()) { wb } else { wa };
                (a, w)
            },
        );

    let mut rows = Vec::with_capacity(top);
    let mut running = 0.0f64;
    for n in (1..=top).rev() {
        running = running.max(best[n]);
        rows.push(LevelRow { n: n as u32, delta: deltas[n], allowed: 32.0 * level_eps(n as u32), observed: running });
    }
    rows.reverse();

    let hit = CellSet::from_cells(x.len(), bp.iter().map(|b| b.cell));
    let coverage = hit.len() as f64 / x.len() as f64;
    let passed = coverage == 1.0 && worst.0 <= 1.0 && rows.iter().all(|r| r.observed <= r.allowed);
    Certificate {
        format_version: FORMAT_VERSION,
        levels: rows,
        coverage,
        s: curve.s,
        passed,
        valid_through: x.resolution_level().map_or(levels, |r| r.min(levels)),
        worst_ratio: worst.0,
        worst_pair: worst.1,
    }
}
