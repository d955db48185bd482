use baycam::geometry::{
    buffer_polygon, bundled_a320, discretize, discretize_on, parse_perimeter, scale_to_length, CoverageSide,
    GridLattice, PerimeterFormat, Point, Polygon, Rect,
};
use proptest::prelude::*;

fn rect_poly(x0: f64, y0: f64, w: f64, h: f64) -> Polygon<f64> {
    Polygon::new(vec![
        Point::new(x0, y0),
        Point::new(x0 + w, y0),
        Point::new(x0 + w, y0 + h),
        Point::new(x0, y0 + h),
    ])
    .unwrap()
}

#[test]
fn svg_and_json_perimeters_agree() {
    let svg = r#"<svg xmlns="http://www.w3.org/2000/svg"><path d="M 0 0 L 4 0 L 4 2 L 0 2 Z"/></svg>"#;
    let json = r#"{"units": "px", "vertices": [[0, 0], [4, 0], [4, 2], [0, 2]]}"#;
    let a: Polygon<f64> = parse_perimeter(svg, PerimeterFormat::SvgPath).unwrap();
    let b: Polygon<f64> = parse_perimeter(json, PerimeterFormat::JsonVertices).unwrap();
    assert_eq!(a.vertices(), b.vertices());
}

#[test]
fn bundled_envelope_grows_monotonically() {
    let a320 = scale_to_length(&bundled_a320(), 37.6).unwrap();
    let mut last = a320.area();
    for delta in [0.25, 0.5, 1.0, 2.0] {
        let region = buffer_polygon(&a320, delta, 0.01).unwrap();
        assert!(region.area() > last, "delta {delta}");
        last = region.area();
    }
}

#[test]
fn generic_over_f32() {
    let p: Polygon<f32> = parse_perimeter("M 0 0 L 10 0 L 10 10 L 0 10 Z", PerimeterFormat::SvgPath).unwrap();
    let region = buffer_polygon(&p, 1.0_f32, 0.01).unwrap();
    let grid = discretize(&region, 1.0_f32, CoverageSide::Internal, None).unwrap();
    assert!(grid.len() >= 121);
}

proptest! {
    #[test]
    fn scaling_hits_requested_length(w in 0.5..500.0_f64, h in 0.5..500.0_f64, len in 1.0..100.0_f64) {
        let s = scale_to_length(&rect_poly(3.0, -7.0, w, h), len).unwrap();
        let b = s.bounds();
        prop_assert!(((b.max.x - b.min.x) - len).abs() <= 1e-9 * len);
        prop_assert!((s.area() - w * h * (len / w).powi(2)).abs() <= 1e-9 * s.area());
    }

    #[test]
    fn rectangle_buffer_area_matches_closed_form(w in 0.5..20.0_f64, h in 0.5..20.0_f64, d in 0.1..3.0_f64) {
        let region = buffer_polygon(&rect_poly(0.0, 0.0, w, h), d, 0.005).unwrap();
        let exact = w * h + 2.0 * (w + h) * d + std::f64::consts::PI * d * d;
        prop_assert!(region.area() <= exact + 1e-9);
        // Chord error of at most 0.005 m along the four quarter arcs.
        prop_assert!(exact - region.area() <= 2.0 * std::f64::consts::PI * d * 0.005 + 1e-9);
    }

    #[test]
    fn envelope_contains_original(w in 1.0..20.0_f64, h in 1.0..20.0_f64, d in 0.0..2.0_f64) {
        let p = rect_poly(0.0, 0.0, w, h);
        let region = buffer_polygon(&p, d, 0.01).unwrap();
        for v in p.vertices() {
            prop_assert!(region.contains(v));
        }
        prop_assert!(region.contains(&p.centroid()));
    }

    #[test]
    fn internal_and_external_partition_the_bay(
        w in 2.0..15.0_f64, h in 2.0..15.0_f64, d in 0.0..1.5_f64, spacing in 0.3..2.0_f64,
    ) {
        let region = buffer_polygon(&rect_poly(0.0, 0.0, w, h), d, 0.01).unwrap();
        let bay = region.bounds().expand(3.0, 3.0);
        let lattice = GridLattice::over(&bay, spacing).unwrap();
        let inside = discretize_on(&region, &lattice, CoverageSide::Internal, Some(&bay)).unwrap();
        let outside = discretize_on(&region, &lattice, CoverageSide::External, Some(&bay)).unwrap();
        let all: Vec<Point<f64>> = lattice.nodes().filter(|p| bay.contains(p)).collect();
        prop_assert_eq!(inside.len() + outside.len(), all.len());
        for p in &inside.points {
            prop_assert!(!outside.points.contains(p));
        }
    }

    #[test]
    fn rectangle_membership(x in -5.0..15.0_f64, y in -5.0..15.0_f64) {
        let p = rect_poly(0.0, 0.0, 10.0, 10.0);
        let r = Rect::new(Point::new(0.0, 0.0), Point::new(10.0, 10.0));
        prop_assert_eq!(p.contains(&Point::new(x, y)), r.contains(&Point::new(x, y)));
    }
}
