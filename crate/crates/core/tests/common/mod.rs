//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use peano_core::{CellSet, Continuum, Region};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Euclidean distance recomputed from raw coordinates.
pub fn euclid(x: &Continuum, a: usize, b: usize) -> f64 {
    let (p, q) = (x.coords(a), x.coords(b));
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

pub fn diameter(x: &Continuum, cells: &[usize]) -> f64 {
    let mut d = 0.0f64;
    for (i, &a) in cells.iter().enumerate() {
        for &b in &cells[i + 1..] {
            d = d.max(euclid(x, a, b));
        }
    }
    d
}

fn find(p: &mut [usize], mut i: usize) -> usize {
    while p[i] != i {
        p[i] = p[p[i]];
        i = p[i];
    }
    i
}

/// Union-find connectivity of `cells` using only `edges` (pairs of cells).
pub fn connected_by(n: usize, cells: &[usize], edges: &[(usize, usize)]) -> bool {
    if cells.is_empty() {
        return false;
    }
    let mut p: Vec<usize> = (0..n).collect();
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut p, u), find(&mut p, v));
        p[ru] = rv;
    }
    let root = find(&mut p, cells[0]);
    cells.iter().all(|&c| find(&mut p, c) == root)
}

/// Connectivity of a cell set in the induced adjacency graph.
pub fn induced_connected(x: &Continuum, cells: &[usize]) -> bool {
    let inside: std::collections::HashSet<usize> = cells.iter().copied().collect();
    let edges: Vec<(usize, usize)> =
        x.edges().iter().copied().filter(|(u, v)| inside.contains(u) && inside.contains(v)).collect();
    connected_by(x.len(), cells, &edges)
}

/// Connectivity of a region through its own edges.
pub fn region_connected(x: &Continuum, r: &Region) -> bool {
    let cells = r.cells().to_vec();
    let edges: Vec<(usize, usize)> = r.edge_ids().map(|e| x.edges()[e]).collect();
    connected_by(x.len(), &cells, &edges)
}

/// Closed neighborhood by exhaustive scan.
pub fn neighborhood(x: &Continuum, set: &[usize], eps: f64) -> Vec<usize> {
    (0..x.len()).filter(|&c| set.iter().any(|&s| euclid(x, c, s) <= eps + 1e-12)).collect()
}

/// Minimum number of connected cell sets of diameter at most `eps` covering every cell,
/// by enumerating all subsets. Only for tiny spaces.
pub fn brute_min_cover(x: &Continuum, eps: f64) -> usize {
    let n = x.len();
    assert!(n <= 12, "oracle is exponential");
    let candidates: Vec<u32> = (1u32..1 << n)
        .filter(|&m| {
            let cells: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            induced_connected(x, &cells) && diameter(x, &cells) <= eps + 1e-12
        })
        .collect();
    let full = (1u32 << n) - 1;
    // Breadth-first over covered masks.
    let mut dist = vec![u32::MAX; 1 << n];
    dist[0] = 0;
    let mut frontier = vec![0u32];
    let mut k = 0;
    loop {
        if dist[full as usize] != u32::MAX {
            return k;
        }
        k += 1;
        let mut next = Vec::new();
        for &m in &frontier {
            for &c in &candidates {
                let u = m | c;
                if dist[u as usize] == u32::MAX {
                    dist[u as usize] = k as u32;
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
}

/// Random connected region grown breadth-first from a random cell.
pub fn random_region(x: &Continuum, rng: &mut ChaCha8Rng, max_size: usize) -> Region {
    let size = rng.gen_range(1..=max_size);
    let start = rng.gen_range(0..x.len());
    let mut cells = vec![start];
    while cells.len() < size {
        let frontier: Vec<usize> = cells
            .iter()
            .flat_map(|&c| x.neighbors(c).iter().map(|&(nb, _)| nb))
            .filter(|nb| !cells.contains(nb))
            .collect();
        if frontier.is_empty() {
            break;
        }
        cells.push(frontier[rng.gen_range(0..frontier.len())]);
    }
    Region::induced(x, CellSet::from_cells(x.len(), cells))
}

/// All minimal connectors of `family` between `source` and `sink`, as bitmasks,
/// by exhaustive search over subfamilies.
pub fn brute_minimal_connectors(x: &Continuum, family: &[Region], source: &CellSet, sink: &CellSet) -> Vec<u32> {
    let k = family.len();
    assert!(k <= 16);
    let is_conn = |m: u32| {
        let members: Vec<&Region> = (0..k).filter(|&i| m >> i & 1 == 1).map(|i| &family[i]).collect();
        let mut cells = Vec::new();
        let mut edges = Vec::new();
        for r in &members {
            cells.extend(r.cells().iter());
            edges.extend(r.edge_ids().map(|e| x.edges()[e]));
        }
        cells.sort_unstable();
        cells.dedup();
        let touches = |s: &CellSet| cells.iter().any(|&c| s.contains(c));
        !members.is_empty() && touches(source) && touches(sink) && connected_by(x.len(), &cells, &edges)
    };
    let conn: Vec<bool> = (0..1u32 << k).map(is_conn).collect();
    // has_sub[m]: some submask of m (m included) is a connector.
    let mut has_sub = conn.clone();
    for m in 0..1usize << k {
        for i in 0..k {
            if m >> i & 1 == 1 && has_sub[m & !(1 << i)] {
                has_sub[m] = true;
            }
        }
    }
    (1..1u32 << k)
        .filter(|&m| conn[m as usize] && (0..k).all(|i| m >> i & 1 == 0 || !has_sub[(m & !(1 << i)) as usize]))
        .collect()
}
