//! Dimension estimates, empirical moduli, and the closed-form bound on curve length.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::continuum::{level_eps, Continuum};
use crate::covers::{sierpinski_table, SierpinskiTable};
use crate::error::{Error, Result};
use crate::io::FORMAT_VERSION;
use crate::modulus::ModulusSpec;
use crate::path::ParamCurve;

/// Grid size cap for modulus scans.
pub const GRID_CAP: usize = 100_000;

/// Least-squares slope over a window of levels.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
    pub window: (u32, u32),
}

/// Fits `ln count` against `n ln 2` over the trailing half of the points.
fn trailing_fit(points: &[(u32, f64)]) -> SlopeFit {
    let take = points.len().div_ceil(2).max(2).min(points.len());
    let tail = &points[points.len() - take..];
    let xs: Vec<f64> = tail.iter().map(|&(n, _)| n as f64 * std::f64::consts::LN_2).collect();
    let ys: Vec<f64> = tail.iter().map(|&(_, c)| c.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let residual = (xs.iter().zip(&ys).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum::<f64>() / k).sqrt();
    SlopeFit { slope, residual, window: (tail[0].0, tail[tail.len() - 1].0) }
}

/// Boxes of side `2^-n / sqrt 2` (diameter `2^-n`) meeting the cells.
pub fn box_count(x: &Continuum, n: u32) -> usize {
    let side = level_eps(n) / std::f64::consts::SQRT_2;
    let [min_x, min_y, _, _] = x.bounding_box();
    x.cells()
        .iter()
        .map(|c| (((c.coords[0] - min_x) / side).floor() as i64, ((c.coords[1] - min_y) / side).floor() as i64))
        .collect::<HashSet<_>>()
        .len()
}

/// Box-counting dimension estimated over levels `0..=n_max` (at least 2).
pub fn box_dim(x: &Continuum, n_max: u32) -> f64 {
    let points: Vec<(u32, f64)> = (0..=n_max.max(2)).map(|n| (n, box_count(x, n) as f64)).collect();
    trailing_fit(&points).slope
}

/// S-dimension estimate from the table's upper bounds. Repeated levels count once.
pub fn estimate_sdim(table: &SierpinskiTable) -> Result<SlopeFit> {
    let mut points: Vec<(u32, f64)> = Vec::new();
    let mut entries = table.entries.clone();
    entries.sort_by_key(|e| e.n);
    for e in entries {
        if points.last().is_none_or(|&(n, _)| n != e.n) {
            points.push((e.n, e.upper as f64));
        }
    }
    if points.len() < 3 {
        return Err(Error::InsufficientLevels(points.len()));
    }
    Ok(trailing_fit(&points))
}

/// Smallest `c` with `upper(n) <= c * 2^(n r)` on every row.
pub fn fit_constant(table: &SierpinskiTable, r: f64) -> f64 {
    table.entries.iter().map(|e| e.upper as f64 / (e.n as f64 * r).exp2()).fold(0.0, f64::max)
}

/// Upper bound on the curve length for a power modulus with exponent `1/alpha`
/// when `S(2^-n) <= c * 2^(n r)`.
pub fn holder_bound(c: f64, r: f64, alpha: f64) -> Result<f64> {
    if c.is_nan() || c <= 0.0 || r.is_nan() || r <= 0.0 {
        return Err(Error::InvalidParameter(format!("need c > 0 and r > 0, got c = {c}, r = {r}")));
    }
    if alpha <= 2.0 * r {
        return Err(Error::DivergentSeries { r, alpha });
    }
    Ok((6.0 * alpha).exp2() * c * c * (2.0 * r - alpha).exp2()
        / ((1.0 - (r - alpha).exp2()) * (1.0 - (2.0 * r - alpha).exp2())))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub format_version: u32,
    pub box_dim: f64,
    pub s_dim: f64,
    pub s_dim_window: (u32, u32),
    pub holder_upper: f64,
    pub residual: f64,
}

/// Box and S-dimension estimates over levels `0..=n_max`.
pub fn dimension_report(x: &Continuum, n_max: u32) -> Result<DimensionReport> {
    let fit = estimate_sdim(&sierpinski_table(x, n_max))?;
    Ok(DimensionReport {
        format_version: FORMAT_VERSION,
        box_dim: if x.is_singleton() { 0.0 } else { box_dim(x, n_max) },
        s_dim: fit.slope,
        s_dim_window: fit.window,
        holder_upper: 2.0 * fit.slope,
        residual: fit.residual,
    })
}

/// Distinct parameter gaps between breakpoints, up to `limit`, sorted.
pub fn pair_gaps(curve: &ParamCurve, limit: f64) -> Vec<f64> {
    let bp = &curve.breakpoints;
    let mut gaps = Vec::new();
    for i in 0..bp.len() {
        for b in &bp[i + 1..] {
            let dt = b.t - bp[i].t;
            if dt > limit {
                break;
            }
            gaps.push(dt);
        }
    }
    gaps.sort_by(f64::total_cmp);
    gaps.dedup();
    gaps
}

/// Pair gaps up to `limit`, uniformly subsampled to at most `cap` values.
pub fn modulus_grid(curve: &ParamCurve, limit: f64, seed: u64, cap: usize) -> Vec<f64> {
    let gaps = pair_gaps(curve, limit);
    if gaps.len() <= cap {
        return gaps;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<f64> = sample(&mut rng, gaps.len(), cap).into_iter().map(|i| gaps[i]).collect();
    picked.sort_by(f64::total_cmp);
    picked
}

/// Max distance over breakpoint pairs with gap at most `t`, with the pair attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulusPoint {
    pub t: f64,
    pub omega_hat: f64,
    pub pair: Option<(usize, usize)>,
}

/// `omega_hat(t)` at each grid value; the grid must be sorted.
pub fn empirical_modulus(x: &Continuum, curve: &ParamCurve, grid: &[f64]) -> Vec<ModulusPoint> {
    let Some(&limit) = grid.last() else {
        return Vec::new();
    };
    let bp = &curve.breakpoints;
    let mut bucket: Vec<(f64, Option<(usize, usize)>)> = vec![(0.0, None); grid.len()];
    for i in 0..bp.len() {
        for j in i + 1..bp.len() {
            let dt = bp[j].t - bp[i].t;
            if dt > limit {
                break;
            }
            let d = x.dist(bp[i].cell, bp[j].cell);
            let g = grid.partition_point(|&t| t < dt);
            if d > bucket[g].0 {
                bucket[g] = (d, Some((i, j)));
            }
        }
    }
    let mut best = (0.0, None);
    grid.iter()
        .zip(bucket)
        .map(|(&t, b)| {
            if b.0 > best.0 {
                best = b;
            }
            ModulusPoint { t, omega_hat: best.0, pair: best.1 }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub format_version: u32,
    pub passed: bool,
    pub worst_ratio: f64,
    pub worst_t: Option<f64>,
    pub worst_pair: Option<(usize, usize)>,
    pub grid_size: usize,
}

/// Passes iff `omega_hat(t) <= omega(t)` at every grid value.
pub fn verify_certificate(x: &Continuum, curve: &ParamCurve, omega: &ModulusSpec, grid: &[f64]) -> Verification {
    let mut out = Verification {
        format_version: FORMAT_VERSION,
        passed: true,
        worst_ratio: 0.0,
        worst_t: None,
        worst_pair: None,
        grid_size: grid.len(),
    };
    for p in empirical_modulus(x, curve, grid) {
        let ratio = p.omega_hat / omega.eval(p.t);
        if ratio > out.worst_ratio {
            out.worst_ratio = ratio;
            out.worst_t = Some(p.t);
            out.worst_pair = p.pair;
        }
    }
    out.passed = out.worst_ratio <= 1.0;
    out
}
