//! Minkowski-sum envelope of a polygon with a disc.
//!
//! Backed by `geo`'s outline offset: every edge is pushed out by the radius,
//! convex corners get polyline arcs, and the result is cleaned by a union so
//! that concave corners and close-passing edges do not self-intersect.

use geo::algorithm::buffer::{Buffer, BufferStyle, LineJoin};
use geo::{Area, Coord, LineString};
use serde::{Deserialize, Serialize};

use super::{GeometryError, Point, Polygon, Rect};
use crate::Scalar;

/// Default maximum sagitta of the arc approximation, metres.
pub const DEFAULT_ARC_TOLERANCE_M: f64 = 0.01;

/// The aircraft outline together with its safety envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct BufferedRegion<T: Scalar> {
    pub base: Polygon<T>,
    pub offset_m: T,
    pub boundary: Polygon<T>,
}

impl<T: Scalar> BufferedRegion<T> {
    /// Closed membership in the envelope.
    pub fn contains(&self, p: &Point<T>) -> bool {
        self.boundary.contains(p)
    }

    pub fn area(&self) -> T {
        self.boundary.area()
    }

    pub fn centroid(&self) -> Point<T> {
        self.boundary.centroid()
    }

    pub fn bounds(&self) -> Rect<T> {
        self.boundary.bounds()
    }
}

/// Offsets `p` outward by `delta_m`, approximating arcs so that no chord
/// deviates from the true circle by more than `arc_tolerance`.
///
/// `delta_m == 0` returns the input unchanged.
pub fn buffer_polygon<T: Scalar>(
    p: &Polygon<T>,
    delta_m: T,
    arc_tolerance: T,
) -> Result<BufferedRegion<T>, GeometryError> {
    if !(delta_m >= T::zero()) || !delta_m.is_finite() {
        return Err(GeometryError::NegativeOffset(delta_m.to_f64().unwrap_or(f64::NAN)));
    }
    if !(arc_tolerance > T::zero()) {
        return Err(GeometryError::NonPositiveParameter("arc_tolerance"));
    }
    if delta_m == T::zero() {
        return Ok(BufferedRegion { base: p.clone(), offset_m: delta_m, boundary: p.clone() });
    }

    let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
    let ring: LineString<f64> =
        p.vertices().iter().map(|v| Coord { x: f(v.x), y: f(v.y) }).collect::<Vec<_>>().into();
    let gp = geo::Polygon::new(ring, vec![]);
    let style =
        BufferStyle::new(f(delta_m)).line_join(LineJoin::Round(join_angle(f(delta_m), f(arc_tolerance))));
    let out = gp.buffer_with_style(style);

    // A buffered simple polygon is connected; keep the largest piece in case
    // the boolean clean-up leaves slivers behind.
    let best = out
        .0
        .iter()
        .max_by(|a, b| a.unsigned_area().partial_cmp(&b.unsigned_area()).unwrap_or(std::cmp::Ordering::Equal))
        .ok_or_else(|| GeometryError::DegeneratePolygon("offset produced no outline".into()))?;
    let mut vertices: Vec<Point<T>> =
        best.exterior().coords().map(|c| Point::new(T::lit(c.x), T::lit(c.y))).collect();
    if vertices.len() > 1 && vertices.first() == vertices.last() {
        vertices.pop();
    }
    if vertices.len() < 3 {
        return Err(GeometryError::DegeneratePolygon("offset outline collapsed".into()));
    }
    Ok(BufferedRegion { base: p.clone(), offset_m: delta_m, boundary: Polygon::from_trusted(vertices) })
}

/// Arc step angle whose chord sagitta equals `tol` on a circle of radius `r`:
/// `s = r (1 - cos(θ/2))`.
fn join_angle(r: f64, tol: f64) -> f64 {
    let ratio = (1.0 - tol / r).max(0.0);
    (2.0 * ratio.acos()).min(std::f64::consts::FRAC_PI_4)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(w: f64, h: f64) -> Polygon<f64> {
        Polygon::new(vec![Point::new(0.0, 0.0), Point::new(w, 0.0), Point::new(w, h), Point::new(0.0, h)])
            .unwrap()
    }

    #[test]
    fn zero_offset_is_identity() {
        let p = rect(4.0, 2.0);
        let b = buffer_polygon(&p, 0.0, 0.01).unwrap();
        assert_eq!(b.boundary, p);
    }

    #[test]
    fn rectangle_offset_area_closed_form() {
        // A + P δ + π δ² for a convex polygon.
        let p = rect(4.0, 2.0);
        let b = buffer_polygon(&p, 1.0, 0.01).unwrap();
        let exact = 8.0 + 12.0 * 1.0 + std::f64::consts::PI;
        // Chords cut at most sagitta × perimeter of the corner arcs.
        let slack = 0.01 * 2.0 * std::f64::consts::PI + 1e-6;
        assert!(b.area() <= exact + 1e-6, "{} > {}", b.area(), exact);
        assert!(b.area() >= exact - slack, "{} < {}", b.area(), exact - slack);
    }

    #[test]
    fn boundary_within_delta_plus_tolerance() {
        let p = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(6.0, 0.0),
            Point::new(6.0, 1.0),
            Point::new(2.0, 1.0),
            Point::new(2.0, 5.0),
            Point::new(0.0, 5.0),
        ])
        .unwrap();
        let b = buffer_polygon(&p, 0.75, 0.01).unwrap();
        for v in b.boundary.vertices() {
            let d = p.distance_to_boundary(v);
            assert!((0.75 - 0.01 - 1e-6..=0.75 + 0.01).contains(&d), "vertex at distance {d}");
        }
        for v in p.vertices() {
            assert!(b.contains(v));
        }
    }

    #[test]
    fn negative_offset_rejected() {
        assert!(matches!(buffer_polygon(&rect(1.0, 1.0), -0.1, 0.01), Err(GeometryError::NegativeOffset(_))));
    }
}
