use peano_core::path::{Breakpoint, ParamCurve};
use peano_core::svg::render_svg;
use peano_core::{Continuum, Shape};

#[test]
fn one_vertex_per_breakpoint() {
    let x = Continuum::generate(Shape::Interval(3));
    let curve = ParamCurve {
        s: 1.0,
        breakpoints: vec![
            Breakpoint { t: 0.0, cell: 0 },
            Breakpoint { t: 0.5, cell: 2 },
            Breakpoint { t: 1.0, cell: 1 },
        ],
        weightlog: Vec::new(),
    };
    let svg = render_svg(&curve, &x);
    let points = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    assert_eq!(points.split_whitespace().count(), 3);
    assert_eq!(svg.matches("<rect").count(), 3);
    assert_eq!(svg, render_svg(&curve, &x));
}
