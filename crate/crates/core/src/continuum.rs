//! Discretized Peano continua: connected cell graphs with a normalized metric.

use std::fmt;
use std::str::FromStr;

use crate::cellset::CellSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub id: usize,
    pub coords: [f64; 2],
}

/// Built-in generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Interval(usize),
    Square(usize),
    Carpet(u32),
    Gasket(u32),
}

impl Shape {
    pub fn from_name(name: &str, param: usize) -> Result<Shape> {
        let depth = || u32::try_from(param).map_err(|_| Error::InvalidParameter(format!("depth {param}")));
        let shape = match name {
            "interval" => Shape::Interval(param),
            "square" => Shape::Square(param),
            "carpet" => Shape::Carpet(depth()?),
            "gasket" => Shape::Gasket(depth()?),
            other => return Err(Error::InvalidParameter(format!("unknown shape {other}"))),
        };
        shape.validate()?;
        Ok(shape)
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Shape::Interval(0) | Shape::Square(0) => Err(Error::InvalidParameter("size must be at least 1".into())),
            Shape::Carpet(d) if d > 6 => Err(Error::InvalidParameter("carpet depth above 6".into())),
            Shape::Gasket(d) if d > 10 => Err(Error::InvalidParameter("gasket depth above 10".into())),
            Shape::Square(k) if k > 512 => Err(Error::InvalidParameter("square side above 512".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Interval(k) => write!(f, "interval({k})"),
            Shape::Square(k) => write!(f, "square({k})"),
            Shape::Carpet(d) => write!(f, "carpet({d})"),
            Shape::Gasket(d) => write!(f, "gasket({d})"),
        }
    }
}

impl FromStr for Shape {
    type Err = Error;

    /// Parses `name(param)`, e.g. `carpet(2)`.
    fn from_str(s: &str) -> Result<Shape> {
        let bad = || Error::InvalidParameter(format!("cannot parse shape {s:?}"));
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let param = rest.strip_suffix(')').ok_or_else(bad)?;
        let param: usize = param.trim().parse().map_err(|_| bad())?;
        Shape::from_name(name.trim(), param)
    }
}

/// A finite connected cell graph with Euclidean distances rescaled to diameter 1.
#[derive(Clone, Debug)]
pub struct Continuum {
    cells: Vec<Cell>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
    scale: f64,
}

impl Continuum {
    /// Builds a continuum from raw coordinates and undirected adjacency pairs.
    ///
    /// Fails with `Disconnected` if the graph has several components.
    pub fn from_graph(raw: Vec<[f64; 2]>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Empty);
        }
        let n = raw.len();
        let mut edges: Vec<(usize, usize)> =
            pairs.into_iter().filter(|&(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, e));
            adjacency[v].push((u, e));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let mut scale = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                scale = scale.max(euclid(raw[i], raw[j]));
            }
        }
        let divisor = if scale > 0.0 { scale } else { 1.0 };
        let cells =
            raw.iter().enumerate().map(|(id, p)| Cell { id, coords: [p[0] / divisor, p[1] / divisor] }).collect();
        let x = Continuum { cells, edges, adjacency, scale: divisor };
        let components = x.component_count();
        if components > 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(x)
    }

    pub fn generate(shape: Shape) -> Self {
        let (raw, pairs) = match shape {
            Shape::Interval(k) => interval(k),
            Shape::Square(k) => square(k),
            Shape::Carpet(d) => carpet(d),
            Shape::Gasket(d) => gasket(d),
        };
        Self::from_graph(raw, pairs).expect("generators produce connected graphs")
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.cells.len() == 1
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn coords(&self, cell: usize) -> [f64; 2] {
        self.cells[cell].coords
    }

    /// Adjacency pairs `(u, v)` with `u < v`, sorted; their index is the edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of a cell as `(neighbor, edge id)`, sorted by neighbor.
    pub fn neighbors(&self, cell: usize) -> &[(usize, usize)] {
        &self.adjacency[cell]
    }

    /// Raw-to-normalized divisor.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn all(&self) -> CellSet {
        CellSet::full(self.len())
    }

    pub fn dist(&self, a: usize, b: usize) -> f64 {
        euclid(self.cells[a].coords, self.cells[b].coords)
    }

    pub fn diameter(&self, set: &CellSet) -> f64 {
        let members = set.to_vec();
        let mut best = 0.0f64;
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                best = best.max(self.dist(a, b));
            }
        }
        best
    }

    /// Cells within `eps` of `set`: `<= eps` when closed, `< eps` otherwise.
    pub fn neighborhood(&self, set: &CellSet, eps: f64, closed: bool) -> CellSet {
        let members = set.to_vec();
        CellSet::from_cells(
            self.len(),
            (0..self.len()).filter(|&c| {
                members.iter().any(|&a| {
                    let d = self.dist(a, c);
                    if closed {
                        d <= eps
                    } else {
                        d < eps
                    }
                })
            }),
        )
    }

    /// Whether `set` induces a connected subgraph. The empty set is not connected.
    pub fn is_connected(&self, set: &CellSet) -> bool {
        let Some(start) = set.first() else {
            return false;
        };
        let mut seen = CellSet::new(self.len());
        seen.insert(start);
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(c) = stack.pop() {
            for &(nb, _) in self.neighbors(c) {
                if set.contains(nb) && !seen.contains(nb) {
                    seen.insert(nb);
                    count += 1;
                    stack.push(nb);
                }
            }
        }
        count == set.len()
    }

    fn component_count(&self) -> usize {
        let mut seen = CellSet::new(self.len());
        let mut components = 0;
        for start in 0..self.len() {
            if seen.contains(start) {
                continue;
            }
            components += 1;
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(c) = stack.pop() {
                for &(nb, _) in self.neighbors(c) {
                    if !seen.contains(nb) {
                        seen.insert(nb);
                        stack.push(nb);
                    }
                }
            }
        }
        components
    }

    /// Length of the longest adjacency edge, 0 for a single cell.
    pub fn max_edge_length(&self) -> f64 {
        self.edges.iter().map(|&(u, v)| self.dist(u, v)).fold(0.0, f64::max)
    }

    /// Finest level `n` with `2^-n` at least the edge length, `None` for a single cell.
    pub fn resolution_level(&self) -> Option<u32> {
        let h = self.max_edge_length();
        if h == 0.0 {
            return None;
        }
        let mut n = 0;
        while level_eps(n + 1) >= h {
            n += 1;
        }
        Some(n)
    }

    /// `[min_x, min_y, max_x, max_y]` of the normalized coordinates.
    pub fn bounding_box(&self) -> [f64; 4] {
        self.cells.iter().fold([f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY], |b, c| {
            [b[0].min(c.coords[0]), b[1].min(c.coords[1]), b[2].max(c.coords[0]), b[3].max(c.coords[1])]
        })
    }
}

/// `2^-n`.
pub fn level_eps(n: u32) -> f64 {
    (-(n as f64)).exp2()
}

fn euclid(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

type Raw = (Vec<[f64; 2]>, Vec<(usize, usize)>);

fn interval(k: usize) -> Raw {
    let raw = (0..k).map(|i| [i as f64, 0.0]).collect();
    let pairs = (1..k).map(|i| (i - 1, i)).collect();
    (raw, pairs)
}

fn grid(side: usize, keep: impl Fn(usize, usize) -> bool) -> Raw {
    let mut ids = vec![usize::MAX; side * side];
    let mut raw = Vec::new();
    for r in 0..side {
        for c in 0..side {
            if keep(r, c) {
                ids[r * side + c] = raw.len();
                raw.push([c as f64, r as f64]);
            }
        }
    }
    let mut pairs = Vec::new();
    for r in 0..side {
        for c in 0..side {
            let id = ids[r * side + c];
            if id == usize::MAX {
                continue;
            }
            if c + 1 < side && ids[r * side + c + 1] != usize::MAX {
                pairs.push((id, ids[r * side + c + 1]));
            }
            if r + 1 < side && ids[(r + 1) * side + c] != usize::MAX {
                pairs.push((id, ids[(r + 1) * side + c]));
            }
        }
    }
    (raw, pairs)
}

fn square(k: usize) -> Raw {
    grid(k, |_, _| true)
}

fn carpet(depth: u32) -> Raw {
    let side = 3usize.pow(depth);
    grid(side, |mut r, mut c| {
        while r > 0 || c > 0 {
            if r % 3 == 1 && c % 3 == 1 {
                return false;
            }
            r /= 3;
            c /= 3;
        }
        true
    })
}

/// Rows of Pascal's triangle mod 2 on a unit triangular lattice.
fn gasket(depth: u32) -> Raw {
    let rows = 1usize << depth;
    let keep = |r: usize, c: usize| c <= r && r < rows && (c & (r - c)) == 0;
    let mut index = std::collections::HashMap::new();
    let mut raw = Vec::new();
    for r in 0..rows {
        for c in 0..=r {
            if keep(r, c) {
                index.insert((r, c), raw.len());
                raw.push([c as f64 - r as f64 / 2.0, r as f64 * 3f64.sqrt() / 2.0]);
            }
        }
    }
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..=r {
            let Some(&id) = index.get(&(r, c)) else { continue };
            for nb in [(r, c + 1), (r + 1, c), (r + 1, c + 1)] {
                if let Some(&other) = index.get(&nb) {
                    pairs.push((id, other));
                }
            }
        }
    }
    (raw, pairs)
}
