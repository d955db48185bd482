//! Square-lattice discretisation of the region of interest.

use serde::{Deserialize, Serialize};

use super::{BufferedRegion, GeometryError, Point, Rect};
use crate::Scalar;

/// Which side of the envelope the target points are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageSide {
    /// Points inside or on the envelope (aircraft-focused scenarios).
    Internal,
    /// Bay points strictly outside the envelope (floor monitoring).
    External,
}

/// A regular square lattice `origin + (kΔ, ℓΔ)` clipped to `nx × ny` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridLattice<T> {
    pub origin: Point<T>,
    pub spacing_m: T,
    pub nx: usize,
    pub ny: usize,
}

impl<T: Scalar> GridLattice<T> {
    /// Lattice seeded at `rect.min` covering the closed rectangle.
    pub fn over(rect: &Rect<T>, spacing_m: T) -> Result<Self, GeometryError> {
        if !(spacing_m > T::zero()) {
            return Err(GeometryError::NonPositiveParameter("spacing_m"));
        }
        let count = |extent: T| -> usize {
            // Nodes landing within rounding noise of the far edge are kept.
            let steps = (extent / spacing_m + T::boundary_eps()).floor();
            steps.to_usize().unwrap_or(0) + 1
        };
        Ok(Self { origin: rect.min, spacing_m, nx: count(rect.width()), ny: count(rect.height()) })
    }

    pub fn node(&self, k: usize, l: usize) -> Point<T> {
        Point::new(
            self.origin.x + T::from_usize(k).unwrap() * self.spacing_m,
            self.origin.y + T::from_usize(l).unwrap() * self.spacing_m,
        )
    }

    /// All nodes in lexicographic (x, then y) order.
    pub fn nodes(&self) -> impl Iterator<Item = Point<T>> + '_ {
        (0..self.nx).flat_map(move |k| (0..self.ny).map(move |l| self.node(k, l)))
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The target point set the cameras must cover.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetGrid<T> {
    pub spacing_m: T,
    pub origin: Point<T>,
    pub points: Vec<Point<T>>,
    pub side: CoverageSide,
    pub bay: Option<Rect<T>>,
}

impl<T> TargetGrid<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Seeds the lattice and keeps the points on the requested side.
///
/// Internal grids are seeded over the envelope's bounding rectangle; external
/// grids over the bay, which must enclose the envelope.
pub fn discretize<T: Scalar>(
    region: &BufferedRegion<T>,
    spacing_m: T,
    side: CoverageSide,
    bay: Option<&Rect<T>>,
) -> Result<TargetGrid<T>, GeometryError> {
    let lattice = match side {
        CoverageSide::Internal => GridLattice::over(&region.bounds(), spacing_m)?,
        CoverageSide::External => {
            let bay = bay.ok_or(GeometryError::BayRequired)?;
            if !bay.contains_rect(&region.bounds()) {
                return Err(GeometryError::BayDoesNotEnclose);
            }
            GridLattice::over(bay, spacing_m)?
        }
    };
    discretize_on(region, &lattice, side, bay)
}

/// Filters an explicit lattice. Useful when internal and external sets must
/// share nodes.
pub fn discretize_on<T: Scalar>(
    region: &BufferedRegion<T>,
    lattice: &GridLattice<T>,
    side: CoverageSide,
    bay: Option<&Rect<T>>,
) -> Result<TargetGrid<T>, GeometryError> {
    let mut points: Vec<Point<T>> = lattice
        .nodes()
        .filter(|p| match side {
            CoverageSide::Internal => region.contains(p),
            CoverageSide::External => bay.is_none_or(|b| b.contains(p)) && !region.contains(p),
        })
        .collect();
    points.sort_by(|a, b| a.lex_cmp(b));
    points.dedup();
    if points.is_empty() {
        return Err(GeometryError::EmptyGrid);
    }
    Ok(TargetGrid { spacing_m: lattice.spacing_m, origin: lattice.origin, points, side, bay: bay.copied() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{buffer_polygon, Polygon};

    fn square(x0: f64, y0: f64, s: f64) -> BufferedRegion<f64> {
        let p = Polygon::new(vec![
            Point::new(x0, y0),
            Point::new(x0 + s, y0),
            Point::new(x0 + s, y0 + s),
            Point::new(x0, y0 + s),
        ])
        .unwrap();
        buffer_polygon(&p, 0.0, 0.01).unwrap()
    }

    #[test]
    fn internal_two_by_two() {
        let g = discretize(&square(1.0, 1.0, 2.0), 1.0, CoverageSide::Internal, None).unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g.points[0], Point::new(1.0, 1.0));
        assert_eq!(g.points[1], Point::new(1.0, 2.0));
    }

    #[test]
    fn external_over_four_by_four_bay() {
        let bay = Rect::new(Point::new(0.0, 0.0), Point::new(4.0, 4.0));
        let g = discretize(&square(1.0, 1.0, 2.0), 1.0, CoverageSide::External, Some(&bay)).unwrap();
        assert_eq!(g.len(), 16);
    }

    #[test]
    fn external_needs_enclosing_bay() {
        let r = square(1.0, 1.0, 2.0);
        assert!(matches!(discretize(&r, 1.0, CoverageSide::External, None), Err(GeometryError::BayRequired)));
        let small = Rect::new(Point::new(0.0, 0.0), Point::new(2.0, 2.0));
        assert!(matches!(
            discretize(&r, 1.0, CoverageSide::External, Some(&small)),
            Err(GeometryError::BayDoesNotEnclose)
        ));
    }

    #[test]
    fn bay_equal_to_region_is_empty_externally() {
        let r = square(0.0, 0.0, 2.0);
        let bay = r.bounds();
        assert!(matches!(
            discretize(&r, 0.5, CoverageSide::External, Some(&bay)),
            Err(GeometryError::EmptyGrid)
        ));
    }

    #[test]
    fn spacing_must_be_positive() {
        assert!(matches!(
            discretize(&square(0.0, 0.0, 1.0), 0.0, CoverageSide::Internal, None),
            Err(GeometryError::NonPositiveParameter(_))
        ));
    }
}
