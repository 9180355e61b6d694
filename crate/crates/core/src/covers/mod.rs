//! Connected covers, the Sierpiński table, and nested covers built by star saturation.

mod exact;
mod nested;
mod table;

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use crate::cellset::{CellSet, Region};
use crate::continuum::Continuum;

pub use exact::exact_min_cover;
pub use nested::{build_nested, saturate_range, star_saturate, NestedCovers};
pub use table::{raw_covers, sierpinski_table, sierpinski_table_with, SierpinskiTable, TableEntry};

/// Cell budget for exhaustive cover search.
pub const DEFAULT_BUDGET: usize = 20;

/// What a cover has to cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoverKind {
    /// Every cell lies in some part.
    Vertex,
    /// Every cell and every adjacency edge lies in some part.
    Closed,
}

#[derive(Clone, Debug)]
pub struct Cover {
    pub level: u32,
    pub epsilon: f64,
    pub parts: Vec<Region>,
    pub mesh: f64,
    pub kind: CoverKind,
    /// Found by exhaustive search, so minimal.
    pub exact: bool,
    /// Below the edge length: a closed cover degenerates to one part per edge.
    pub capped: bool,
}

impl Cover {
    fn new(x: &Continuum, epsilon: f64, parts: Vec<Region>, kind: CoverKind) -> Self {
        let mesh = parts.iter().map(|p| p.diameter(x)).fold(0.0, f64::max);
        Cover { level: 0, epsilon, parts, mesh, kind, exact: false, capped: false }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Indices of the parts meeting `cells`.
    pub fn meeting(&self, cells: &CellSet) -> Vec<usize> {
        (0..self.parts.len()).filter(|&i| self.parts[i].meets_cells(cells)).collect()
    }

    /// Checks that parts are nonempty and connected and that they cover what the kind requires.
    pub fn validate(&self, x: &Continuum) -> Result<(), String> {
        let mut union = Region::empty(x);
        for (i, p) in self.parts.iter().enumerate() {
            if p.is_empty() || !p.is_connected(x) {
                return Err(format!("part {i} is empty or disconnected"));
            }
            union.union_with(p);
        }
        if union.cells().len() != x.len() {
            return Err("parts miss some cells".into());
        }
        if self.kind == CoverKind::Closed && union.edge_count() != x.edges().len() {
            return Err("parts miss some edges".into());
        }
        Ok(())
    }
}

fn whole_cover(x: &Continuum, epsilon: f64, kind: CoverKind) -> Cover {
    let mut c = Cover::new(x, epsilon, vec![Region::whole(x)], kind);
    c.exact = true;
    c
}

fn edge_cover(x: &Continuum, epsilon: f64) -> Cover {
    let parts = (0..x.edges().len()).map(|e| Region::edge(x, e)).collect();
    let mut c = Cover::new(x, epsilon, parts, CoverKind::Closed);
    c.capped = true;
    c
}

/// Covers that need no search: trivial scales and capped closed covers.
fn forced_cover(x: &Continuum, eps: f64, kind: CoverKind) -> Option<Cover> {
    if x.is_singleton() || eps >= 1.0 {
        return Some(whole_cover(x, eps, kind));
    }
    if kind == CoverKind::Closed && eps < x.max_edge_length() {
        return Some(edge_cover(x, eps));
    }
    None
}

/// Greedy cover by connected parts of diameter at most `eps`.
///
/// Each part starts at the lowest uncovered cell (or, once all cells are
/// covered, at the lowest uncovered edge) and grows breadth-first. Candidates
/// that add coverage are tried before ones that only add reach.
pub fn greedy_cover(x: &Continuum, eps: f64, kind: CoverKind) -> Cover {
    if let Some(c) = forced_cover(x, eps, kind) {
        return c;
    }
    let closed = kind == CoverKind::Closed;
    let mut covered = CellSet::new(x.len());
    let mut covered_edges = FixedBitSet::with_capacity(x.edges().len());
    let mut parts = Vec::new();
    loop {
        let seed: Vec<usize> = match (0..x.len()).find(|&c| !covered.contains(c)) {
            Some(c) => vec![c],
            None if closed => match covered_edges.zeroes().next() {
                Some(e) => {
                    let (u, v) = x.edges()[e];
                    vec![u, v]
                }
                None => break,
            },
            None => break,
        };
        let part = grow(x, eps, &seed, &covered, &covered_edges, closed);
        let region = Region::induced(x, part);
        covered.union_with(region.cells());
        for e in region.edge_ids() {
            covered_edges.insert(e);
        }
        parts.push(region);
    }
    Cover::new(x, eps, parts, kind)
}

fn grow(
    x: &Continuum,
    eps: f64,
    seed: &[usize],
    covered: &CellSet,
    covered_edges: &FixedBitSet,
    closed: bool,
) -> CellSet {
    let mut part = CellSet::from_cells(x.len(), seed.iter().copied());
    let mut members = seed.to_vec();
    let mut rejected = CellSet::new(x.len());
    let mut frontier: BTreeMap<usize, usize> = BTreeMap::new();
    let push_neighbors =
        |c: usize, hops: usize, part: &CellSet, rejected: &CellSet, frontier: &mut BTreeMap<usize, usize>| {
            for &(nb, _) in x.neighbors(c) {
                if !part.contains(nb) && !rejected.contains(nb) {
                    let h = frontier.entry(nb).or_insert(hops);
                    *h = (*h).min(hops);
                }
            }
        };
    for &s in seed {
        push_neighbors(s, 1, &part, &rejected, &mut frontier);
    }
    while !frontier.is_empty() {
        let gain = |c: usize| {
            !covered.contains(c)
                || (closed && x.neighbors(c).iter().any(|&(nb, e)| part.contains(nb) && !covered_edges.contains(e)))
        };
        let (&cell, &hops) = frontier.iter().min_by_key(|&(&c, &h)| (!gain(c), h, c)).expect("frontier is nonempty");
        frontier.remove(&cell);
        if members.iter().all(|&m| x.dist(m, cell) <= eps) {
            part.insert(cell);
            members.push(cell);
            push_neighbors(cell, hops + 1, &part, &rejected, &mut frontier);
        } else {
            rejected.insert(cell);
        }
    }
    part
}

/// Farthest-point packing: cells pairwise more than `eps` apart.
///
/// A connected part of diameter at most `eps` holds at most one of them, so the
/// count bounds the minimal cover size from below.
pub fn packing(x: &Continuum, eps: f64) -> Vec<usize> {
    let mut chosen = vec![0];
    let mut gap: Vec<f64> = (0..x.len()).map(|c| x.dist(0, c)).collect();
    loop {
        let (far, &d) = gap
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("continuum is nonempty");
        if d <= eps {
            break;
        }
        chosen.push(far);
        for (c, g) in gap.iter_mut().enumerate() {
            *g = g.min(x.dist(far, c));
        }
    }
    chosen
}
