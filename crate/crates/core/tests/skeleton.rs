mod common;

use peano_core::assembler::epsilon_sequence;
use peano_core::continuum::level_eps;
use peano_core::covers::{raw_covers, sierpinski_table, Cover, CoverKind, DEFAULT_BUDGET};
use peano_core::skeleton::{build_skeleton, gap_records, Skeleton, Token};
use peano_core::{Continuum, Error, Region, Shape};
use proptest::prelude::*;

use common::*;

fn setup(shape: Shape) -> (Continuum, Vec<Cover>, Vec<f64>, Skeleton) {
    let x = Continuum::generate(shape);
    let n = x.resolution_level().unwrap();
    let covers = raw_covers(&x, n, CoverKind::Closed, DEFAULT_BUDGET);
    let deltas: Vec<f64> = (0..=n).map(|k| 0.25f64.powi(k as i32)).collect();
    let eps = epsilon_sequence(&sierpinski_table(&x, n), &deltas);
    let sk = build_skeleton(&x, &covers, &eps).unwrap();
    (x, covers, eps, sk)
}

const SHAPES: [Shape; 4] = [Shape::Interval(17), Shape::Carpet(1), Shape::Carpet(2), Shape::Gasket(3)];

#[test]
fn total_length_is_the_weighted_count() {
    for shape in SHAPES {
        let (_, covers, eps, sk) = setup(shape);
        let want: f64 = (1..covers.len()).map(|n| covers[n].len() as f64 * eps[n]).sum();
        assert!((sk.s - want).abs() <= 1e-12 * want, "{shape}: {} vs {want}", sk.s);
        assert_eq!(sk.points.first().unwrap().t, 0.0);
        assert_eq!(sk.points.last().unwrap().t, sk.s);
        assert!(sk.points.windows(2).all(|w| w[0].t < w[1].t));
    }
}

#[test]
fn nearby_points_map_close() {
    for shape in SHAPES {
        let (x, _, eps, sk) = setup(shape);
        let pts = &sk.points;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let (dt, d) = (pts[j].t - pts[i].t, euclid(&x, pts[i].cell, pts[j].cell));
                for (n, &e) in eps.iter().enumerate().skip(1) {
                    if dt < e {
                        assert!(d <= 4.0 * level_eps(n as u32) + 1e-12, "{shape} level {n}: {d}");
                    }
                }
            }
        }
    }
}

#[test]
fn order_and_retractions() {
    for shape in SHAPES {
        let (x, covers, _, sk) = setup(shape);
        assert_eq!(sk.order.len(), covers.iter().map(Cover::len).sum::<usize>());
        assert_eq!(*sk.order.last().unwrap(), Token { level: 0, part: 0 });
        let pos = |t: Token| sk.order.iter().position(|&o| o == t).unwrap();
        for &tok in &sk.order {
            assert_eq!(sk.retract(tok, tok.level), tok);
            if tok.level == 0 {
                continue;
            }
            let up = sk.retract(tok, tok.level - 1);
            assert_eq!(up.level, tok.level - 1);
            assert!(covers[up.level as usize].parts[up.part].meets(&covers[tok.level as usize].parts[tok.part]));
            // Children sit before their parent.
            assert!(pos(tok) < pos(up));
            // The representative and its retraction share a small connected set.
            let mut joint = Region::empty(&x);
            joint.union_with(&covers[tok.level as usize].parts[tok.part]);
            joint.union_with(&covers[up.level as usize].parts[up.part]);
            let cells = joint.cells().to_vec();
            assert!(cells.contains(&sk.rep(tok)) && cells.contains(&sk.rep(up)));
            assert!(region_connected(&x, &joint));
            if up.level > 0 {
                assert!(diameter(&x, &cells) < 2.0 * level_eps(tok.level - 1), "{shape}");
            }
        }
    }
}

#[test]
fn gaps() {
    for shape in SHAPES {
        let (x, covers, eps, sk) = setup(shape);
        let gaps = gap_records(&x, &covers, &sk);
        assert_eq!(gaps.len(), sk.points.len() - 1);
        for g in &gaps {
            assert_eq!(g.v - g.u, eps[g.level as usize], "{shape}");
            assert_eq!(g.length, eps[g.level as usize]);
            let cells = g.connector_set.cells().to_vec();
            assert!(cells.contains(&g.endpoints.0) && cells.contains(&g.endpoints.1));
            assert!(region_connected(&x, &g.connector_set));
            assert!(diameter(&x, &cells) <= 8.0 * level_eps(g.level) + 1e-12);
        }
    }
}

#[test]
fn representatives_are_mostly_distinct() {
    let (_, covers, _, sk) = setup(Shape::Interval(17));
    let mut used = std::collections::HashMap::new();
    for (n, reps) in sk.reps.iter().enumerate() {
        for (i, &c) in reps.iter().enumerate() {
            assert!(covers[n].parts[i].cells().contains(c));
            *used.entry(c).or_insert(0) += 1;
        }
    }
    let repeats: usize = used.values().map(|&k| k - 1).sum();
    assert_eq!(repeats, sk.reused.len());
}

#[test]
fn json_layout() {
    let (x, covers, _, sk) = setup(Shape::Carpet(1));
    let v = sk.to_json(&gap_records(&x, &covers, &sk));
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["points"].as_array().unwrap().len(), sk.points.len());
    let g = &v["gaps"][0];
    assert!(g["u"].is_f64() && g["v"].is_f64() && g["level"].is_u64() && g["connector_cells"].is_array());
}

#[test]
fn singleton_is_degenerate() {
    let x = Continuum::generate(Shape::Interval(1));
    let covers = raw_covers(&x, 2, CoverKind::Closed, DEFAULT_BUDGET);
    assert!(matches!(build_skeleton(&x, &covers, &[1.0, 0.5, 0.25]), Err(Error::DegenerateSpace)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn skeleton_bounds_on_intervals(k in 2usize..60) {
        let (x, covers, eps, sk) = setup(Shape::Interval(k));
        for g in gap_records(&x, &covers, &sk) {
            prop_assert!(region_connected(&x, &g.connector_set));
            prop_assert!(diameter(&x, &g.connector_set.cells().to_vec()) <= 8.0 * level_eps(g.level) + 1e-12);
            prop_assert_eq!(g.v - g.u, eps[g.level as usize]);
        }
    }
}
