use std::collections::HashMap;

use super::{forced_cover, greedy_cover, packing, Cover, CoverKind};
use crate::cellset::{CellSet, Region};
use crate::continuum::Continuum;
use crate::error::{Error, Result};

/// Hard ceiling on exhaustive search, whatever the budget.
const MAX_CELLS: usize = 24;

/// Minimum-cardinality cover by connected parts of diameter at most `eps`.
///
/// Exhaustive over all connected cell subsets, so limited to `budget` cells.
pub fn exact_min_cover(x: &Continuum, eps: f64, budget: usize, kind: CoverKind) -> Result<Cover> {
    let n = x.len();
    if n > budget || n > MAX_CELLS || x.edges().len() > 128 {
        return Err(Error::BudgetExceeded { cells: n, budget: budget.min(MAX_CELLS) });
    }
    if let Some(c) = forced_cover(x, eps, kind) {
        return Ok(c);
    }
    let closed = kind == CoverKind::Closed;
    let adj: Vec<u32> = (0..n).map(|c| x.neighbors(c).iter().fold(0, |m, &(nb, _)| m | 1 << nb)).collect();
    let far: Vec<u32> = (0..n).map(|c| (0..n).filter(|&o| x.dist(c, o) > eps).fold(0, |m, o| m | 1 << o)).collect();
    let edge_masks: Vec<u32> = x.edges().iter().map(|&(u, v)| 1 << u | 1 << v).collect();

    let total = 1usize << n;
    let mut valid = vec![false; total];
    for (mask, slot) in valid.iter_mut().enumerate().skip(1) {
        let m = mask as u32;
        *slot = bits(m).all(|c| far[c] & m == 0) && connected(m, &adj);
    }
    let maximal: Vec<u32> = (1..total)
        .filter(|&mask| {
            let m = mask as u32;
            valid[mask] && bits(m).all(|c| bits(adj[c] & !m).all(|nb| !valid[(m | 1 << nb) as usize]))
        })
        .map(|m| m as u32)
        .collect();

    let edges_of = |m: u32| -> u128 {
        edge_masks.iter().enumerate().filter(|(_, &em)| m & em == em).fold(0u128, |acc, (e, _)| acc | 1 << e)
    };
    let candidates: Vec<(u32, u128)> = maximal.iter().map(|&m| (m, edges_of(m))).collect();
    let all_cells: u32 = (1 << n) - 1;
    let all_edges: u128 = if closed {
        if edge_masks.len() == 128 {
            u128::MAX
        } else {
            (1u128 << edge_masks.len()) - 1
        }
    } else {
        0
    };
    let largest = candidates.iter().map(|c| c.0.count_ones()).max().unwrap_or(1);

    let mut search = Search {
        candidates: &candidates,
        edge_masks: &edge_masks,
        all_cells,
        all_edges,
        largest,
        failed: HashMap::new(),
        picked: Vec::new(),
    };
    let lower = packing(x, eps).len();
    let upper = greedy_cover(x, eps, kind).len();
    let mut solution = None;
    for k in lower..=upper {
        if search.run(0, 0, k) {
            solution = Some(search.picked.clone());
            break;
        }
    }
    // Every greedy part extends to a maximal one, so k = upper always succeeds.
    let picked = solution.expect("greedy size bounds the search");
    let parts = picked.iter().map(|&m| Region::induced(x, CellSet::from_cells(n, bits(m)))).collect();
    let mut cover = Cover::new(x, eps, parts, kind);
    cover.exact = true;
    Ok(cover)
}

struct Search<'a> {
    candidates: &'a [(u32, u128)],
    edge_masks: &'a [u32],
    all_cells: u32,
    all_edges: u128,
    largest: u32,
    /// Largest remaining budget known to fail from a coverage state.
    failed: HashMap<(u32, u128), usize>,
    picked: Vec<u32>,
}

impl Search<'_> {
    fn run(&mut self, cells: u32, edges: u128, budget: usize) -> bool {
        let missing_cells = self.all_cells & !cells;
        let missing_edges = self.all_edges & !edges;
        if missing_cells == 0 && missing_edges == 0 {
            return true;
        }
        if budget == 0 || (missing_cells.count_ones() as usize) > budget * self.largest as usize {
            return false;
        }
        if self.failed.get(&(cells, edges)).is_some_and(|&b| b >= budget) {
            return false;
        }
        let need: u32 = if missing_cells != 0 {
            1 << missing_cells.trailing_zeros()
        } else {
            self.edge_masks[missing_edges.trailing_zeros() as usize]
        };
        for i in 0..self.candidates.len() {
            let (m, em) = self.candidates[i];
            if m & need != need {
                continue;
            }
            self.picked.push(m);
            if self.run(cells | m, edges | em, budget - 1) {
                return true;
            }
            self.picked.pop();
        }
        let entry = self.failed.entry((cells, edges)).or_insert(0);
        *entry = (*entry).max(budget);
        false
    }
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

fn connected(mask: u32, adj: &[u32]) -> bool {
    let start = mask & mask.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        for c in bits(frontier) {
            next |= adj[c];
        }
        next &= mask & !seen;
        seen |= next;
        frontier = next;
    }
    seen == mask
}
