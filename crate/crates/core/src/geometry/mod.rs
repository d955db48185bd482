//! Aircraft outline handling: parsing, metric scaling, envelope offsetting and
//! discretisation into the target point set.

mod buffer;
mod grid;
mod parse;
mod polygon;

pub use buffer::{buffer_polygon, BufferedRegion, DEFAULT_ARC_TOLERANCE_M};
pub use grid::{discretize, discretize_on, CoverageSide, GridLattice, TargetGrid};
pub use parse::{parse_perimeter, PerimeterFile, PerimeterFormat, Units};
pub use polygon::{point_in_polygon, Point, Polygon, Rect};

use thiserror::Error;

use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("malformed perimeter source: {0}")]
    MalformedSource(String),
    #[error("unsupported SVG path command '{0}' (only M, L, H, V, Z are accepted)")]
    UnsupportedCommand(char),
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("polygon edges {edge_a} and {edge_b} intersect")]
    SelfIntersecting { edge_a: usize, edge_b: usize },
    #[error("polygon has zero x-extent")]
    ZeroExtent,
    #[error("offset distance must be >= 0, got {0}")]
    NegativeOffset(f64),
    #[error("{0} must be positive")]
    NonPositiveParameter(&'static str),
    #[error("external coverage requires a bay rectangle")]
    BayRequired,
    #[error("bay rectangle does not enclose the envelope")]
    BayDoesNotEnclose,
    #[error("no lattice point satisfies the coverage predicate")]
    EmptyGrid,
}

/// Hand-traced A320 top-view perimeter shipped with the crate, as SVG.
pub const BUNDLED_A320_SVG: &str = include_str!("../../data/a320.svg");

/// The bundled A320 outline in drawing units (25 px per metre, nose at x = 0).
pub fn bundled_a320() -> Polygon<f64> {
    parse_perimeter(BUNDLED_A320_SVG, PerimeterFormat::SvgPath).expect("bundled outline is valid")
}

/// Scales `p` uniformly so that its x-extent equals `true_length_m`.
///
/// The drawing length is `max x - min x`; every vertex is multiplied by
/// `true_length_m / drawing_length`.
pub fn scale_to_length<T: Scalar>(p: &Polygon<T>, true_length_m: T) -> Result<Polygon<T>, GeometryError> {
    if !(true_length_m > T::zero()) {
        return Err(GeometryError::NonPositiveParameter("true_length_m"));
    }
    let factor = scale_factor(p, true_length_m)?;
    if factor == T::one() {
        return Ok(p.clone());
    }
    Ok(p.map_vertices(|v| Point::new(v.x * factor, v.y * factor)))
}

/// Metres per drawing unit for a given true length.
pub fn scale_factor<T: Scalar>(p: &Polygon<T>, true_length_m: T) -> Result<T, GeometryError> {
    let b = p.bounds();
    let extent = b.max.x - b.min.x;
    if !(extent > T::zero()) {
        return Err(GeometryError::ZeroExtent);
    }
    Ok(true_length_m / extent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[(f64, f64)]) -> Polygon<f64> {
        Polygon::new(c.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn unit_square_to_aircraft_length() {
        let p = poly(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]);
        let s = scale_to_length(&p, 37.6).unwrap();
        let b = s.bounds();
        assert!(((b.max.x - b.min.x) - 37.6).abs() <= 1e-9 * 37.6);
    }

    #[test]
    fn scale_factor_from_pixels() {
        let p = poly(&[(0., 0.), (940., 0.), (940., 100.), (0., 100.)]);
        assert!((scale_factor(&p, 37.6).unwrap() - 0.04).abs() < 1e-15);
    }

    #[test]
    fn bundled_outline_scales_to_length() {
        let s = scale_to_length(&bundled_a320(), 37.6).unwrap();
        let b = s.bounds();
        assert!(((b.max.x - b.min.x) - 37.6).abs() < 1e-9);
        assert!(s.area() > 100.0 && s.area() < 600.0);
    }

    #[test]
    fn rejects_bad_length() {
        let p = poly(&[(0., 0.), (1., 0.), (1., 1.)]);
        assert!(scale_to_length(&p, 0.0).is_err());
        assert!(scale_to_length(&p, -2.0).is_err());
    }
}
