//! Paths between two cells built by refining chains level by level.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::cellset::{CellSet, Region};
use crate::connectors::{minimal_connector, Chain};
use crate::continuum::Continuum;
use crate::covers::{Cover, NestedCovers};
use crate::error::{Error, Result};
use crate::io::{csv_err, FORMAT_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Breakpoint {
    pub t: f64,
    pub cell: usize,
}

/// Weight given to one representative and how far down the preference ladder it was found.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub level: u32,
    pub weight: f64,
    /// 1 = fresh exclusive cell; 2 = exclusive, reused; 3 = exclusive endpoint; 4 = shared cell.
    pub tier: u8,
}

/// A step function on `[0, s]`, constant from each breakpoint up to the next.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamCurve {
    pub s: f64,
    pub breakpoints: Vec<Breakpoint>,
    pub weightlog: Vec<WeightEntry>,
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    t: f64,
    cell_id: usize,
    x: f64,
    y: f64,
}

impl ParamCurve {
    /// The zero-length curve sitting at `cell`.
    pub fn point(cell: usize) -> Self {
        ParamCurve { s: 0.0, breakpoints: vec![Breakpoint { t: 0.0, cell }], weightlog: Vec::new() }
    }

    pub fn start(&self) -> usize {
        self.breakpoints[0].cell
    }

    pub fn end(&self) -> usize {
        self.breakpoints[self.breakpoints.len() - 1].cell
    }

    /// Cell at the greatest breakpoint not after `t`.
    pub fn eval(&self, t: f64) -> Result<usize> {
        if !(0.0..=self.s).contains(&t) {
            return Err(Error::OutOfDomain { t, s: self.s });
        }
        let i = self.breakpoints.partition_point(|b| b.t <= t);
        Ok(self.breakpoints[i.max(1) - 1].cell)
    }

    /// Maps `[0, s]` affinely onto `[u, v]`; a zero-length curve becomes constant on `[u, v]`.
    pub fn stretched(&self, u: f64, v: f64) -> ParamCurve {
        let mut breakpoints: Vec<Breakpoint> = if self.s > 0.0 {
            let k = (v - u) / self.s;
            self.breakpoints.iter().map(|b| Breakpoint { t: u + b.t * k, cell: b.cell }).collect()
        } else {
            vec![Breakpoint { t: u, cell: self.start() }, Breakpoint { t: v, cell: self.start() }]
        };
        breakpoints[0].t = u;
        let last = breakpoints.len() - 1;
        breakpoints[last].t = v;
        ParamCurve { s: v, breakpoints, weightlog: self.weightlog.clone() }
    }

    /// CSV with header `t,cell_id,x,y`, preceded by a version comment.
    pub fn write_csv<W: Write>(&self, x: &Continuum, mut out: W) -> Result<()> {
        writeln!(out, "# format_version: {FORMAT_VERSION}")?;
        let mut w = csv::Writer::from_writer(out);
        for b in &self.breakpoints {
            let [cx, cy] = x.coords(b.cell);
            w.serialize(CsvRow { t: b.t, cell_id: b.cell, x: cx, y: cy }).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads breakpoints written by [`ParamCurve::write_csv`]; `s` is the last `t`.
    pub fn read_csv<R: BufRead>(input: R) -> Result<ParamCurve> {
        let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
        let mut breakpoints = Vec::new();
        for row in rdr.deserialize::<CsvRow>() {
            let row = row.map_err(csv_err)?;
            breakpoints.push(Breakpoint { t: row.t, cell: row.cell_id });
        }
        let s = breakpoints.last().map(|b| b.t).ok_or_else(|| Error::Io("curve file has no rows".into()))?;
        if breakpoints.windows(2).any(|w| w[1].t <= w[0].t) {
            return Err(Error::Io("curve breakpoints are not strictly increasing".into()));
        }
        Ok(ParamCurve { s, breakpoints, weightlog: Vec::new() })
    }
}

/// The chain tower of one path, from level `first_level` down to the finest level.
#[derive(Clone, Debug)]
pub struct RefinementLevels {
    pub first_level: u32,
    pub chains: Vec<Chain>,
    /// `projections[k][j]`: position in `chains[k]` of the parent of part `j` of `chains[k + 1]`.
    pub projections: Vec<Vec<usize>>,
    /// `boundaries[k][i]`: the sets the children of part `i` of `chains[k]` connect.
    pub boundaries: Vec<Vec<(CellSet, CellSet)>>,
}

/// One refinement step: each parent part is replaced by a minimal chain of its
/// children running from where the previous sub-chain ended to where the next
/// parent begins.
pub fn refine_chain(parent: &Chain, next: &Cover, a: usize, b: usize) -> Result<(Chain, Vec<usize>)> {
    let children = parent
        .parts
        .iter()
        .map(|m| (0..next.parts.len()).filter(|&j| m.contains(&next.parts[j])).collect())
        .collect::<Vec<Vec<usize>>>();
    let (chain, mu, _) = refine_with(parent, &children, next, a, b)?;
    Ok((chain, mu))
}

type Refined = (Chain, Vec<usize>, Vec<(CellSet, CellSet)>);

fn refine_with(parent: &Chain, children: &[Vec<usize>], next: &Cover, a: usize, b: usize) -> Result<Refined> {
    let cap = parent.source.capacity();
    let k = parent.parts.len();
    let mut parts = Vec::new();
    let mut index = Vec::new();
    let mut mu = Vec::new();
    let mut boundaries = Vec::with_capacity(k);
    let mut last_max: Option<Region> = None;
    for (i, m) in parent.parts.iter().enumerate() {
        let source = match &last_max {
            None => CellSet::from_cells(cap, [a]),
            Some(prev) => m.cells().intersection(prev.cells()),
        };
        let sink = if i + 1 == k {
            CellSet::from_cells(cap, [b])
        } else {
            m.cells().intersection(parent.parts[i + 1].cells())
        };
        let family: Vec<Region> = children[i].iter().map(|&j| next.parts[j].clone()).collect();
        let sub = minimal_connector(&family, &source, &sink)
            .map_err(|_| Error::RefinementFailure { level: next.level.saturating_sub(1), part: parent.index[i] })?;
        last_max = Some(sub.last().clone());
        for (p, local) in sub.parts.into_iter().zip(sub.index) {
            parts.push(p);
            index.push(children[i][local]);
            mu.push(i);
        }
        boundaries.push((source, sink));
    }
    let chain = Chain { parts, index, source: CellSet::from_cells(cap, [a]), sink: CellSet::from_cells(cap, [b]) };
    Ok((chain, mu, boundaries))
}

/// Builds the chain tower for a path from `a` to `b` inside `f`, starting at level `m`.
pub fn refine_levels(
    x: &Continuum,
    nested: &NestedCovers,
    f: &Region,
    a: usize,
    b: usize,
    m: u32,
) -> Result<RefinementLevels> {
    if !f.cells().contains(a) {
        return Err(Error::EndpointOutsideF(a));
    }
    if !f.cells().contains(b) {
        return Err(Error::EndpointOutsideF(b));
    }
    if !f.is_connected(x) {
        return Err(Error::FDisconnected);
    }
    let top = nested.depth() as u32;
    if m > top {
        return Err(Error::InvalidParameter(format!("start level {m} is below the finest level {top}")));
    }
    let cover = &nested.levels[m as usize];
    let meeting = cover.meeting(f.cells());
    let family: Vec<Region> = meeting.iter().map(|&i| cover.parts[i].clone()).collect();
    let mut first = minimal_connector(&family, &CellSet::from_cells(x.len(), [a]), &CellSet::from_cells(x.len(), [b]))?;
    first.index = first.index.iter().map(|&i| meeting[i]).collect();

    let mut tower =
        RefinementLevels { first_level: m, chains: vec![first], projections: Vec::new(), boundaries: Vec::new() };
    for n in m..top {
        let parent = tower.chains.last().expect("tower starts nonempty");
        let children: Vec<Vec<usize>> = parent.index.iter().map(|&i| nested.children(n as usize, i).to_vec()).collect();
        let (chain, mu, bounds) = refine_with(parent, &children, &nested.levels[n as usize + 1], a, b)?;
        tower.chains.push(chain);
        tower.projections.push(mu);
        tower.boundaries.push(bounds);
    }
    Ok(tower)
}

/// Path from `a` to `b` within the `3 * 2^-m` neighborhood of `f`.
///
/// Every part of every chain in the tower contributes one representative cell
/// of weight `deltas[level]`. Representatives are ordered by the finest-level
/// part they sit in and placed at the total weight of the ones before them.
pub fn build_path(
    x: &Continuum,
    nested: &NestedCovers,
    f: &Region,
    a: usize,
    b: usize,
    m: u32,
    deltas: &[f64],
) -> Result<ParamCurve> {
    if a == b {
        if !f.cells().contains(a) {
            return Err(Error::EndpointOutsideF(a));
        }
        return Ok(ParamCurve::point(a));
    }
    let tower = refine_levels(x, nested, f, a, b, m)?;
    if deltas.len() <= nested.depth() {
        return Err(Error::InvalidParameter("one weight per level is required".into()));
    }
    Ok(parametrize(x, &tower, a, b, deltas))
}

fn parametrize(x: &Continuum, tower: &RefinementLevels, a: usize, b: usize, deltas: &[f64]) -> ParamCurve {
    let depth = tower.chains.len();
    let finest = tower.chains[depth - 1].len();

    // ancestor[k][p]: position in chains[k] of the ancestor of finest part p.
    let mut ancestor = vec![Vec::new(); depth];
    ancestor[depth - 1] = (0..finest).collect::<Vec<_>>();
    for k in (0..depth - 1).rev() {
        ancestor[k] = ancestor[k + 1].iter().map(|&p| tower.projections[k][p]).collect();
    }

    let mut used = CellSet::new(x.len());
    // (finest part, level, position, cell, tier)
    let mut reps: Vec<(usize, usize, usize, usize, u8)> = Vec::new();
    let mut multiplicity = vec![0u32; x.len()];
    for (k, chain) in tower.chains.iter().enumerate() {
        for p in &chain.parts {
            for c in p.cells().iter() {
                multiplicity[c] += 1;
            }
        }
        let mut start = 0;
        for j in 0..chain.len() {
            let end = start + ancestor[k][start..].iter().take_while(|&&q| q == j).count();
            let mut best: Option<(u8, usize, usize)> = None;
            for p in start..end {
                for c in tower.chains[depth - 1].parts[p].cells().iter() {
                    let exclusive = multiplicity[c] == 1;
                    let endpoint = c == a || c == b;
                    let tier = match (exclusive, endpoint, used.contains(c)) {
                        (true, false, false) => 1,
                        (true, false, true) => 2,
                        (true, true, _) => 3,
                        _ => 4,
                    };
                    if best.is_none_or(|(t, _, _)| tier < t) {
                        best = Some((tier, p, c));
                    }
                }
                if best.is_some_and(|(t, _, _)| t == 1) {
                    break;
                }
            }
            // The first part overall is represented by `a` itself, which owns position 0.
            if k == 0 && j == 0 {
                best = Some((3, start, a));
            }
            let (tier, p, c) = best.expect("every part has a finest descendant");
            used.insert(c);
            reps.push((p, k, j, c, tier));
            start = end;
        }
        for p in &chain.parts {
            for c in p.cells().iter() {
                multiplicity[c] -= 1;
            }
        }
    }
    reps.sort_unstable_by_key(|&(p, k, j, _, _)| (p, k, j));

    // Each representative sits at the total weight before it; the first is `a` at 0.
    let mut breakpoints = vec![Breakpoint { t: 0.0, cell: a }];
    let mut weightlog = Vec::with_capacity(reps.len());
    let mut g = 0.0;
    for (i, &(_, k, _, c, tier)) in reps.iter().enumerate() {
        let level = tower.first_level + k as u32;
        let w = deltas[level as usize];
        if i > 0 {
            breakpoints.push(Breakpoint { t: g, cell: c });
        }
        weightlog.push(WeightEntry { level, weight: w, tier });
        g += w;
    }
    breakpoints.push(Breakpoint { t: g, cell: b });
    ParamCurve { s: g, breakpoints, weightlog }
}
