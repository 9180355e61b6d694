mod common;

use std::cmp::Ordering;

use peano_core::connectors::{
    canonical_compare, is_connector, minimal_connector, validate_chain, Chain, ChainViolation,
};
use peano_core::{CellSet, Continuum, Error, Region, Shape};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn line() -> Continuum {
    Continuum::generate(Shape::Interval(12))
}

fn seg(x: &Continuum, cells: std::ops::RangeInclusive<usize>) -> Region {
    Region::induced(x, CellSet::from_cells(x.len(), cells))
}

fn cell(x: &Continuum, c: usize) -> CellSet {
    CellSet::from_cells(x.len(), [c])
}

#[test]
fn single_part() {
    let x = line();
    let chain = minimal_connector(&[seg(&x, 0..=5)], &cell(&x, 0), &cell(&x, 5)).unwrap();
    assert_eq!(chain.index, vec![0]);
    validate_chain(&chain).unwrap();
}

#[test]
fn linear_family_and_dangling_part() {
    let x = Continuum::generate(Shape::Square(5));
    // Cells are row-major on a 5x5 grid; C4 hangs off C2 in the next row.
    let c1 = Region::induced(&x, CellSet::from_cells(25, [0, 1]));
    let c2 = Region::induced(&x, CellSet::from_cells(25, [1, 2, 3]));
    let c3 = Region::induced(&x, CellSet::from_cells(25, [3, 4]));
    let c4 = Region::induced(&x, CellSet::from_cells(25, [2, 7, 12]));
    let (a, b) = (cell(&x, 0), cell(&x, 4));
    let three = [c1.clone(), c2.clone(), c3.clone()];
    assert_eq!(minimal_connector(&three, &a, &b).unwrap().index, vec![0, 1, 2]);

    let four = [c1, c2, c3, c4];
    let chain = minimal_connector(&four, &a, &b).unwrap();
    assert_eq!(chain.index, vec![0, 1, 2]);
    let minimal = brute_minimal_connectors(&x, &four, &a, &b);
    assert_eq!(minimal, vec![0b0111]);
}

#[test]
fn violations() {
    let x = line();
    let (a, b) = (cell(&x, 0), cell(&x, 11));
    let chain =
        |parts: Vec<Region>| Chain { index: (0..parts.len()).collect(), parts, source: a.clone(), sink: b.clone() };
    let chord = chain(vec![seg(&x, 0..=4), seg(&x, 3..=7), seg(&x, 4..=11)]);
    assert_eq!(validate_chain(&chord), Err(ChainViolation::Overlap(0, 2)));
    let early = chain(vec![seg(&x, 0..=4), seg(&x, 0..=7), seg(&x, 7..=11)]);
    assert_eq!(validate_chain(&early), Err(ChainViolation::Source(1)));
    let late = chain(vec![seg(&x, 0..=4), seg(&x, 4..=11), seg(&x, 11..=11)]);
    assert_eq!(validate_chain(&late), Err(ChainViolation::Sink(1)));
    assert_eq!(validate_chain(&chain(Vec::new())), Err(ChainViolation::Empty));
}

#[test]
fn failures() {
    let x = line();
    let family = [seg(&x, 0..=3), seg(&x, 6..=11)];
    assert!(matches!(minimal_connector(&family, &cell(&x, 0), &cell(&x, 11)), Err(Error::NoPath)));
    assert!(matches!(minimal_connector(&family, &cell(&x, 4), &cell(&x, 11)), Err(Error::NotAConnector(_))));
    assert!(matches!(minimal_connector(&family, &cell(&x, 1), &cell(&x, 1)), Err(Error::NotAConnector(_))));
}

#[test]
fn compare_examples() {
    let x = line();
    let family = [seg(&x, 0..=4), seg(&x, 6..=11), seg(&x, 4..=6), seg(&x, 9..=10)];
    let chain = minimal_connector(&family, &cell(&x, 0), &cell(&x, 11)).unwrap();
    assert_eq!(chain.index, vec![0, 2, 1]);
    assert_eq!(canonical_compare(&chain, 0, 1).unwrap(), Ordering::Less);
    assert_eq!(canonical_compare(&chain, 1, 2).unwrap(), Ordering::Greater);
    assert_eq!(canonical_compare(&chain, 2, 2).unwrap(), Ordering::Equal);
    assert!(matches!(canonical_compare(&chain, 3, 0), Err(Error::NotInChain(3))));
}

#[test]
fn connector_predicate() {
    let x = line();
    let (p, q) = (seg(&x, 0..=4), seg(&x, 4..=11));
    assert!(is_connector(&x, &[&p, &q], &cell(&x, 0), &cell(&x, 11)));
    // Disjoint parts do not connect even when their cells are adjacent.
    let q = seg(&x, 5..=11);
    assert!(!is_connector(&x, &[&p, &q], &cell(&x, 0), &cell(&x, 11)));
    let r = seg(&x, 7..=11);
    assert!(!is_connector(&x, &[&p, &r], &cell(&x, 0), &cell(&x, 11)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn chains_are_canonical(seed in any::<u64>(), k in 1usize..10) {
        let x = Continuum::generate(Shape::Square(5));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let family: Vec<Region> = (0..k).map(|_| random_region(&x, &mut rng, 9)).collect();
        let a = family[0].cells().first().unwrap();
        let b = family[k - 1].cells().iter().last().unwrap();
        prop_assume!(a != b);
        let (source, sink) = (cell(&x, a), cell(&x, b));
        let minimal = brute_minimal_connectors(&x, &family, &source, &sink);
        match minimal_connector(&family, &source, &sink) {
            Ok(chain) => {
                prop_assert!(validate_chain(&chain).is_ok());
                let mask = chain.index.iter().fold(0u32, |m, &i| m | 1 << i);
                prop_assert!(minimal.contains(&mask));
                for (i, &p) in chain.index.iter().enumerate() {
                    prop_assert_eq!(canonical_compare(&chain, chain.index[0], p).unwrap(), 0.cmp(&i));
                    for (j, &q) in chain.index.iter().enumerate().skip(i + 1) {
                        prop_assert_eq!(canonical_compare(&chain, p, q).unwrap(), Ordering::Less);
                        prop_assert_eq!(family[p].meets(&family[q]), j == i + 1);
                    }
                }
            }
            Err(_) => prop_assert!(minimal.is_empty()),
        }
    }
}
