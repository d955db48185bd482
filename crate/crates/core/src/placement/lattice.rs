use serde::{Deserialize, Serialize};

use super::PlacementError;
use crate::geometry::{BufferedRegion, Point, Rect};
use crate::optics::Footprint;
use crate::Scalar;

/// Regular grid of candidate camera centres.
///
/// Pitch is `(1 - overlap) · footprint` on each axis, so an overlap of 0.1
/// spaces cameras at 0.9 W by 0.9 L.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateLattice<T> {
    pub step_x_m: T,
    pub step_y_m: T,
    /// Lexicographically sorted (x, then y).
    pub centres: Vec<Point<T>>,
    pub footprint: Footprint<T>,
    pub overlap_fraction: T,
    /// The lattice node the grid is aligned to.
    pub anchor: Point<T>,
}

impl<T> CandidateLattice<T> {
    pub fn len(&self) -> usize {
        self.centres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centres.is_empty()
    }
}

/// Lattice anchored at the envelope centroid, spanning the envelope's
/// bounding rectangle grown by one footprint on every side.
pub fn candidate_lattice<T: Scalar>(
    region: &BufferedRegion<T>,
    footprint: &Footprint<T>,
    overlap_fraction: T,
) -> Result<CandidateLattice<T>, PlacementError> {
    candidate_lattice_over(region.centroid(), &region.bounds(), footprint, overlap_fraction)
}

/// Lattice through `anchor` spanning `extent` grown by one footprint on every
/// side.
pub fn candidate_lattice_over<T: Scalar>(
    anchor: Point<T>,
    extent: &Rect<T>,
    footprint: &Footprint<T>,
    overlap_fraction: T,
) -> Result<CandidateLattice<T>, PlacementError> {
    let (w, l) = (footprint.width_m, footprint.length_m);
    if !(w > T::zero() && l > T::zero()) || !w.is_finite() || !l.is_finite() {
        return Err(PlacementError::NonPositiveFootprint);
    }
    if !(overlap_fraction >= T::zero() && overlap_fraction < T::one()) {
        return Err(PlacementError::InvalidOverlap(overlap_fraction.to_f64().unwrap_or(f64::NAN)));
    }
    let spacing = T::one() - overlap_fraction;
    let (sx, sy) = (spacing * w, spacing * l);
    let span = extent.expand(w, l);
    let eps = T::boundary_eps();
    let range = |lo: T, hi: T, origin: T, step: T| -> (i64, i64) {
        let k0 = ((lo - origin) / step - eps).ceil();
        let k1 = ((hi - origin) / step + eps).floor();
        (k0.to_i64().unwrap_or(0), k1.to_i64().unwrap_or(-1))
    };
    let (kx0, kx1) = range(span.min.x, span.max.x, anchor.x, sx);
    let (ky0, ky1) = range(span.min.y, span.max.y, anchor.y, sy);
    let at = |k: i64, step: T, origin: T| {
        if k == 0 {
            origin
        } else {
            origin + T::from_i64(k).expect("lattice index") * step
        }
    };
    let mut centres = Vec::new();
    for kx in kx0..=kx1 {
        let x = at(kx, sx, anchor.x);
        for ky in ky0..=ky1 {
            centres.push(Point::new(x, at(ky, sy, anchor.y)));
        }
    }
    Ok(CandidateLattice {
        step_x_m: sx,
        step_y_m: sy,
        centres,
        footprint: *footprint,
        overlap_fraction,
        anchor,
    })
}
