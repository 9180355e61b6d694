//! Bitset-backed cell sets and closed subcomplexes of the cell graph.

use fixedbitset::FixedBitSet;

use crate::continuum::Continuum;

/// A set of cell ids.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CellSet(FixedBitSet);

impl CellSet {
    pub fn new(capacity: usize) -> Self {
        CellSet(FixedBitSet::with_capacity(capacity))
    }

    pub fn from_cells(capacity: usize, cells: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::new(capacity);
        for c in cells {
            set.insert(c);
        }
        set
    }

    pub fn full(capacity: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        CellSet(bits)
    }

    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, cell: usize) {
        self.0.insert(cell);
    }

    pub fn remove(&mut self, cell: usize) {
        self.0.set(cell, false);
    }

    pub fn contains(&self, cell: usize) -> bool {
        self.0.contains(cell)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.ones().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn meets(&self, other: &CellSet) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union_with(&mut self, other: &CellSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        let mut out = self.clone();
        out.0.intersect_with(&other.0);
        out
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// A closed subcomplex of the cell graph: some cells plus some edges among them.
///
/// The pipeline treats the continuum as the geometric graph whose vertices are
/// cells and whose edges are the adjacency segments. Two subcomplexes meet iff
/// they share a cell, since the segments only touch at their endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Region {
    cells: CellSet,
    edges: FixedBitSet,
}

impl Region {
    pub fn empty(x: &Continuum) -> Self {
        Region { cells: CellSet::new(x.len()), edges: FixedBitSet::with_capacity(x.edges().len()) }
    }

    /// The cells together with every edge they span.
    pub fn induced(x: &Continuum, cells: CellSet) -> Self {
        let mut edges = FixedBitSet::with_capacity(x.edges().len());
        for (e, &(u, v)) in x.edges().iter().enumerate() {
            if cells.contains(u) && cells.contains(v) {
                edges.insert(e);
            }
        }
        Region { cells, edges }
    }

    /// A single closed edge.
    pub fn edge(x: &Continuum, e: usize) -> Self {
        let (u, v) = x.edges()[e];
        let mut r = Self::empty(x);
        r.cells.insert(u);
        r.cells.insert(v);
        r.edges.insert(e);
        r
    }

    pub fn whole(x: &Continuum) -> Self {
        Self::induced(x, CellSet::full(x.len()))
    }

    pub fn cells(&self) -> &CellSet {
        &self.cells
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.ones()
    }

    pub fn has_edge(&self, e: usize) -> bool {
        self.edges.contains(e)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn meets(&self, other: &Region) -> bool {
        self.cells.meets(&other.cells)
    }

    pub fn meets_cells(&self, cells: &CellSet) -> bool {
        self.cells.meets(cells)
    }

    pub fn contains(&self, other: &Region) -> bool {
        other.cells.is_subset(&self.cells) && other.edges.is_subset(&self.edges)
    }

    pub fn union_with(&mut self, other: &Region) {
        self.cells.union_with(&other.cells);
        self.edges.union_with(&other.edges);
    }

    /// Connectedness through the region's own edges.
    pub fn is_connected(&self, x: &Continuum) -> bool {
        let Some(start) = self.cells.first() else {
            return false;
        };
        let mut seen = CellSet::new(x.len());
        seen.insert(start);
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(c) = stack.pop() {
            for &(nb, e) in x.neighbors(c) {
                if self.edges.contains(e) && !seen.contains(nb) {
                    seen.insert(nb);
                    count += 1;
                    stack.push(nb);
                }
            }
        }
        count == self.cells.len()
    }

    pub fn diameter(&self, x: &Continuum) -> f64 {
        x.diameter(&self.cells)
    }
}
