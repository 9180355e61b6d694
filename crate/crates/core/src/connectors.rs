//! Minimal connectors and the chains that order them.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use crate::cellset::{CellSet, Region};
use crate::continuum::Continuum;
use crate::error::{Error, Result};

/// Parts ordered so that only the first meets the source, only the last meets
/// the sink, and two parts meet exactly when they are adjacent in the list.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub parts: Vec<Region>,
    /// Position of each part in the family it was drawn from.
    pub index: Vec<usize>,
    pub source: CellSet,
    pub sink: CellSet,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first(&self) -> &Region {
        &self.parts[0]
    }

    pub fn last(&self) -> &Region {
        &self.parts[self.parts.len() - 1]
    }

    /// Orders an unordered minimal connector by walking from the part that meets the source.
    ///
    /// Returns `None` when no such walk visits every part exactly once.
    pub fn from_parts(parts: &[(usize, Region)], source: &CellSet, sink: &CellSet) -> Option<Chain> {
        let starts: Vec<usize> = (0..parts.len()).filter(|&i| parts[i].1.meets_cells(source)).collect();
        if starts.len() != 1 {
            return None;
        }
        let mut used = vec![false; parts.len()];
        let mut order = vec![starts[0]];
        used[order[0]] = true;
        while order.len() < parts.len() {
            let tail = &parts[*order.last()?].1;
            let mut next = (0..parts.len()).filter(|&i| !used[i] && parts[i].1.meets(tail));
            let pick = next.next()?;
            if next.next().is_some() {
                return None;
            }
            used[pick] = true;
            order.push(pick);
        }
        Some(Chain {
            parts: order.iter().map(|&i| parts[i].1.clone()).collect(),
            index: order.iter().map(|&i| parts[i].0).collect(),
            source: source.clone(),
            sink: sink.clone(),
        })
    }
}

/// Shortest chain of family members leading from `source` to `sink`.
///
/// Among shortest paths of the intersection graph, the one with the
/// lexicographically smallest index sequence is returned. A shortest path has
/// no chords and its interior avoids both ends, so it is a chain.
pub fn minimal_connector(family: &[Region], source: &CellSet, sink: &CellSet) -> Result<Chain> {
    if source.is_empty() || sink.is_empty() {
        return Err(Error::NotAConnector("source or sink is empty".into()));
    }
    if source.meets(sink) {
        return Err(Error::NotAConnector("source and sink intersect".into()));
    }
    let at_source: Vec<usize> = (0..family.len()).filter(|&i| family[i].meets_cells(source)).collect();
    if at_source.is_empty() || !family.iter().any(|p| p.meets_cells(sink)) {
        return Err(Error::NotAConnector("no part meets the source or the sink".into()));
    }
    let adjacency: Vec<Vec<usize>> = (0..family.len())
        .map(|i| (0..family.len()).filter(|&j| j != i && family[i].meets(&family[j])).collect())
        .collect();

    let mut to_sink = vec![usize::MAX; family.len()];
    let mut queue = VecDeque::new();
    for (i, p) in family.iter().enumerate() {
        if p.meets_cells(sink) {
            to_sink[i] = 1;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        for &j in &adjacency[i] {
            if to_sink[j] == usize::MAX {
                to_sink[j] = to_sink[i] + 1;
                queue.push_back(j);
            }
        }
    }

    let mut current = *at_source.iter().min_by_key(|&&i| (to_sink[i], i)).expect("checked nonempty");
    if to_sink[current] == usize::MAX {
        return Err(Error::NoPath);
    }
    let mut index = vec![current];
    while to_sink[current] > 1 {
        current = *adjacency[current]
            .iter()
            .find(|&&j| to_sink[j] + 1 == to_sink[current])
            .expect("distance labels decrease along some neighbor");
        index.push(current);
    }
    Ok(Chain {
        parts: index.iter().map(|&i| family[i].clone()).collect(),
        index,
        source: source.clone(),
        sink: sink.clone(),
    })
}

/// First chain condition a chain breaks, with witnessing positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainViolation {
    Empty,
    /// Part `0` misses the source, or a later part meets it.
    Source(usize),
    /// The last part misses the sink, or an earlier part meets it.
    Sink(usize),
    /// Parts `i` and `j` meet although not adjacent, or are adjacent and disjoint.
    Overlap(usize, usize),
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainViolation::Empty => write!(f, "chain has no parts"),
            ChainViolation::Source(i) => write!(f, "source condition fails at part {i}"),
            ChainViolation::Sink(i) => write!(f, "sink condition fails at part {i}"),
            ChainViolation::Overlap(i, j) => write!(f, "overlap condition fails for parts {i} and {j}"),
        }
    }
}

/// Checks the three chain conditions in order. A chain that passes is a minimal connector.
pub fn validate_chain(chain: &Chain) -> std::result::Result<(), ChainViolation> {
    let k = chain.parts.len();
    if k == 0 {
        return Err(ChainViolation::Empty);
    }
    for (i, p) in chain.parts.iter().enumerate() {
        if p.meets_cells(&chain.source) != (i == 0) {
            return Err(ChainViolation::Source(i));
        }
    }
    for (i, p) in chain.parts.iter().enumerate() {
        if p.meets_cells(&chain.sink) != (i + 1 == k) {
            return Err(ChainViolation::Sink(i));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if chain.parts[i].meets(&chain.parts[j]) != (j == i + 1) {
                return Err(ChainViolation::Overlap(i, j));
            }
        }
    }
    Ok(())
}

/// Compares two family members by their position in the chain.
pub fn canonical_compare(chain: &Chain, a: usize, b: usize) -> Result<Ordering> {
    let pos = |p: usize| chain.index.iter().position(|&i| i == p).ok_or(Error::NotInChain(p));
    Ok(pos(a)?.cmp(&pos(b)?))
}

/// Whether the union of `parts` is connected and meets both `source` and `sink`.
pub fn is_connector(x: &Continuum, parts: &[&Region], source: &CellSet, sink: &CellSet) -> bool {
    let mut union = Region::empty(x);
    for p in parts {
        union.union_with(p);
    }
    union.meets_cells(source) && union.meets_cells(sink) && union.is_connected(x)
}
