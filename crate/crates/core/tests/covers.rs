mod common;

use peano_core::covers::{
    build_nested, exact_min_cover, greedy_cover, packing, raw_covers, sierpinski_table, sierpinski_table_with,
    star_saturate, Cover, CoverKind, NestedCovers, DEFAULT_BUDGET,
};
use peano_core::{CellSet, Continuum, Error, Region, Shape};
use proptest::prelude::*;

use common::*;

fn interval(k: usize) -> Continuum {
    Continuum::generate(Shape::Interval(k))
}

/// Independent validity check: nonempty connected parts of diameter at most `eps`
/// covering every cell, and every edge for closed covers.
fn assert_valid(x: &Continuum, c: &Cover, eps: f64) {
    let mut cells = vec![false; x.len()];
    let mut edges = vec![false; x.edges().len()];
    for p in &c.parts {
        let members = p.cells().to_vec();
        assert!(!members.is_empty());
        assert!(region_connected(x, p), "disconnected part {members:?}");
        if !c.capped {
            assert!(diameter(x, &members) <= eps + 1e-12, "part {members:?} too wide");
        }
        members.iter().for_each(|&m| cells[m] = true);
        p.edge_ids().for_each(|e| edges[e] = true);
    }
    assert!(cells.iter().all(|&b| b));
    if c.kind == CoverKind::Closed {
        assert!(edges.iter().all(|&b| b));
    }
}

#[test]
fn greedy_examples() {
    let x = interval(5);
    for kind in [CoverKind::Vertex, CoverKind::Closed] {
        assert_eq!(greedy_cover(&x, 0.5, kind).len(), 2);
        assert_eq!(greedy_cover(&x, 1.0, kind).len(), 1);
    }
    let singles = greedy_cover(&x, 0.0, CoverKind::Vertex);
    assert_eq!(singles.len(), 5);
    assert!(singles.parts.iter().all(|p| p.cells().len() == 1));
}

#[test]
fn closed_cover_below_edge_length_is_the_edge_cover() {
    let x = interval(5);
    let c = greedy_cover(&x, 0.1, CoverKind::Closed);
    assert!(c.capped);
    assert_eq!(c.len(), 4);
    assert_valid(&x, &c, 0.25);
}

#[test]
fn exact_examples() {
    assert_eq!(exact_min_cover(&interval(5), 0.5, DEFAULT_BUDGET, CoverKind::Vertex).unwrap().len(), 2);
    assert_eq!(exact_min_cover(&interval(3), 0.0, DEFAULT_BUDGET, CoverKind::Vertex).unwrap().len(), 3);
    let sq = Continuum::generate(Shape::Square(2));
    let c = exact_min_cover(&sq, 0.71, DEFAULT_BUDGET, CoverKind::Vertex).unwrap();
    assert_eq!(c.len(), 2);
    assert!(c.exact);
    assert_eq!(brute_min_cover(&sq, 0.71), 2);
}

#[test]
fn exact_respects_budget() {
    let x = interval(30);
    assert!(matches!(
        exact_min_cover(&x, 0.2, DEFAULT_BUDGET, CoverKind::Vertex),
        Err(Error::BudgetExceeded { cells: 30, .. })
    ));
}

#[test]
fn table_examples() {
    let t = sierpinski_table_with(&interval(5), 3, CoverKind::Vertex, DEFAULT_BUDGET);
    assert_eq!(t.upper(0), Some(1));
    let row = &t.entries[1];
    assert_eq!((row.upper, row.exact), (2, true));
    let closed = sierpinski_table(&Continuum::generate(Shape::Carpet(2)), 4);
    assert_eq!(closed.upper(0), Some(1));
}

#[test]
fn table_is_monotone_and_bracketed() {
    for shape in [Shape::Interval(33), Shape::Carpet(2), Shape::Gasket(4), Shape::Square(8)] {
        let x = Continuum::generate(shape);
        let t = sierpinski_table(&x, 6);
        for w in t.entries.windows(2) {
            assert!(w[0].upper <= w[1].upper && w[0].lower <= w[1].lower, "{shape}");
        }
        for e in &t.entries {
            assert!(e.lower <= e.upper, "{shape}");
            if e.epsilon >= x.max_edge_length() {
                assert!(packing(&x, e.epsilon).len() <= e.upper, "{shape}");
            }
        }
    }
}

#[test]
fn table_csv_layout() {
    let mut buf = Vec::new();
    sierpinski_table(&interval(9), 3).write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# format_version: 1"));
    assert_eq!(lines.next(), Some("n,epsilon,lower,upper,exact"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn saturation_examples() {
    let x = Continuum::generate(Shape::Carpet(2));
    let raw = raw_covers(&x, 4, CoverKind::Closed, DEFAULT_BUDGET);
    assert_eq!(star_saturate(&raw, &Region::whole(&x), 1), Region::whole(&x));
    let a = Region::induced(&x, CellSet::from_cells(x.len(), [0, 1]));
    let sat = star_saturate(&raw, &a, 2);
    assert!(region_connected(&x, &sat));
    assert!(sat.contains(&a));
}

#[test]
fn nested_covers_hold_on_generators() {
    for shape in [Shape::Interval(33), Shape::Square(8), Shape::Carpet(2), Shape::Gasket(4)] {
        let x = Continuum::generate(shape);
        let nested = build_nested(&x, 6).unwrap();
        nested.check(&x).unwrap();
        for (n, kids) in nested.refinement.iter().enumerate() {
            for (i, list) in kids.iter().enumerate() {
                assert!(!list.is_empty(), "{shape}: part {i} of level {n} has no children");
            }
        }
    }
}

#[test]
fn nesting_rejects_vertex_covers_and_broken_parts() {
    let x = interval(9);
    let raw = raw_covers(&x, 3, CoverKind::Vertex, DEFAULT_BUDGET);
    assert!(matches!(NestedCovers::from_raw(&x, raw), Err(Error::NestingViolation(_))));

    let mut nested = build_nested(&x, 3).unwrap();
    nested.levels[1].parts[0] = Region::induced(&x, CellSet::from_cells(x.len(), [0]));
    assert!(matches!(nested.check(&x), Err(Error::NestingViolation(_))));
}

fn tiny() -> impl Strategy<Value = Continuum> {
    prop_oneof![
        (2usize..=12).prop_map(interval),
        (2usize..=3).prop_map(|k| Continuum::generate(Shape::Square(k))),
        Just(Continuum::generate(Shape::Carpet(1))),
        Just(Continuum::generate(Shape::Gasket(2))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_matches_brute_force(x in tiny(), eps in 0.0f64..1.1) {
        let c = exact_min_cover(&x, eps, DEFAULT_BUDGET, CoverKind::Vertex).unwrap();
        assert_valid(&x, &c, eps);
        prop_assert_eq!(c.len(), brute_min_cover(&x, eps));
    }

    #[test]
    fn greedy_is_valid_and_bounded_below(x in tiny(), eps in 0.0f64..1.1) {
        let g = greedy_cover(&x, eps, CoverKind::Vertex);
        assert_valid(&x, &g, eps);
        let e = exact_min_cover(&x, eps, DEFAULT_BUDGET, CoverKind::Vertex).unwrap();
        prop_assert!(g.len() >= e.len());
        prop_assert!(packing(&x, eps).len() <= e.len());
    }

    #[test]
    fn closed_covers_are_valid(x in tiny(), eps in 0.0f64..1.1) {
        let g = greedy_cover(&x, eps, CoverKind::Closed);
        assert_valid(&x, &g, eps);
        let e = exact_min_cover(&x, eps, DEFAULT_BUDGET, CoverKind::Closed).unwrap();
        assert_valid(&x, &e, eps);
        prop_assert!(e.len() <= g.len());
    }

    #[test]
    fn nesting_holds_on_random_intervals(k in 2usize..40, n in 1u32..7) {
        let x = interval(k);
        let nested = build_nested(&x, n).unwrap();
        prop_assert!(nested.check(&x).is_ok());
        prop_assert_eq!(nested.depth(), n as usize);
    }
}
