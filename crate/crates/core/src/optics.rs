//! Pinhole-camera relations: field of view, ground sampling distance, the
//! scalar distortion heuristic, angular field of view and ceiling footprints.
//!
//! Sensor sizes, focal lengths and working distances are in millimetres.
//! Ground extents that feed bay-scale geometry are reported in metres.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpticsError {
    #[error("{0} must be positive")]
    NonPositiveInput(&'static str),
    #[error("frame rate must be positive")]
    NonPositiveFrameRate,
    #[error("velocity must be non-negative")]
    NegativeVelocity,
}

pub const MM_PER_M: f64 = 1000.0;

pub fn mm_to_m<T: Scalar>(mm: T) -> T {
    mm / T::lit(MM_PER_M)
}

pub fn m_to_mm<T: Scalar>(m: T) -> T {
    m * T::lit(MM_PER_M)
}

fn positive<T: Scalar>(v: T, what: &'static str) -> Result<T, OpticsError> {
    if v > T::zero() && v.is_finite() {
        Ok(v)
    } else {
        Err(OpticsError::NonPositiveInput(what))
    }
}

/// Physical sensor size and pixel grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensorGeometry<T> {
    pub width_mm: T,
    pub height_mm: T,
    pub res_w_px: u32,
    pub res_h_px: u32,
    pub pixel_um: T,
}

impl<T: Scalar> SensorGeometry<T> {
    pub fn diagonal_mm(&self) -> T {
        self.width_mm.hypot(self.height_mm)
    }

    /// Relative mismatch between the listed pixel pitch and the pitch implied
    /// by sensor size over resolution, worst of both axes.
    pub fn pitch_mismatch(&self) -> T {
        let thousand = T::lit(1000.0);
        let w = self.width_mm * thousand / T::from_u32(self.res_w_px).unwrap();
        let h = self.height_mm * thousand / T::from_u32(self.res_h_px).unwrap();
        let rel = |v: T| ((v - self.pixel_um) / self.pixel_um).abs();
        rel(w).max(rel(h))
    }

    fn validate(&self) -> Result<(), OpticsError> {
        positive(self.width_mm, "sensor width")?;
        positive(self.height_mm, "sensor height")?;
        if self.res_w_px == 0 || self.res_h_px == 0 {
            return Err(OpticsError::NonPositiveInput("sensor resolution"));
        }
        Ok(())
    }
}

/// Ground-plane coverage of one camera at a working distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldOfView<T> {
    pub width_m: T,
    pub height_m: T,
    pub diag_m: T,
    pub gsd_w_mm_px: T,
    pub gsd_h_mm_px: T,
    /// Diagonal field of view (metres) over focal length (mm).
    pub distortion: T,
}

impl<T: Scalar> FieldOfView<T> {
    pub fn width_mm(&self) -> T {
        m_to_mm(self.width_m)
    }

    pub fn height_mm(&self) -> T {
        m_to_mm(self.height_m)
    }

    /// The coarser of the two sampling distances.
    pub fn worst_gsd(&self) -> T {
        self.gsd_w_mm_px.max(self.gsd_h_mm_px)
    }
}

/// Projects the sensor onto a plane `distance_mm` away.
///
/// `FoV = d·S/f` per axis, `GSD = FoV/R`, and `D = FoV_diag/f`.
pub fn fov_at_distance<T: Scalar>(
    sensor: &SensorGeometry<T>,
    focal_mm: T,
    distance_mm: T,
) -> Result<FieldOfView<T>, OpticsError> {
    sensor.validate()?;
    let f = positive(focal_mm, "focal length")?;
    let d = positive(distance_mm, "working distance")?;
    let w_mm = d * sensor.width_mm / f;
    let h_mm = d * sensor.height_mm / f;
    let width_m = mm_to_m(w_mm);
    let height_m = mm_to_m(h_mm);
    let diag_m = width_m.hypot(height_m);
    Ok(FieldOfView {
        width_m,
        height_m,
        diag_m,
        gsd_w_mm_px: w_mm / T::from_u32(sensor.res_w_px).unwrap(),
        gsd_h_mm_px: h_mm / T::from_u32(sensor.res_h_px).unwrap(),
        distortion: diag_m / f,
    })
}

/// Distance at which the horizontal GSD equals `gsd_mm_px`.
pub fn working_distance_for_gsd<T: Scalar>(
    sensor: &SensorGeometry<T>,
    focal_mm: T,
    gsd_mm_px: T,
) -> Result<T, OpticsError> {
    sensor.validate()?;
    let f = positive(focal_mm, "focal length")?;
    let g = positive(gsd_mm_px, "GSD")?;
    Ok(g * T::from_u32(sensor.res_w_px).unwrap() * f / sensor.width_mm)
}

/// Full angular field of view in degrees: `2·atan(s / 2f)`.
pub fn angular_fov_deg<T: Scalar>(sensor_dim_mm: T, focal_mm: T) -> Result<T, OpticsError> {
    let s = positive(sensor_dim_mm, "sensor dimension")?;
    let f = positive(focal_mm, "focal length")?;
    let two = T::lit(2.0);
    Ok((two * (s / (two * f)).atan()).to_degrees())
}

/// Ground rectangle seen by a downward-looking camera mounted `height_m`
/// above the target plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Footprint<T> {
    pub width_m: T,
    pub length_m: T,
    pub height_m: T,
    pub theta_h_deg: T,
    pub theta_v_deg: T,
}

impl<T: Scalar> Footprint<T> {
    /// Footprint from angular fields: `W = 2h·tan(θh/2)`, `L = 2h·tan(θv/2)`.
    pub fn from_angles(height_m: T, theta_h_deg: T, theta_v_deg: T) -> Result<Self, OpticsError> {
        let h = positive(height_m, "mounting height")?;
        let two = T::lit(2.0);
        let half = |deg: T| (deg.to_radians() / two).tan();
        Ok(Self {
            width_m: two * h * half(theta_h_deg),
            length_m: two * h * half(theta_v_deg),
            height_m: h,
            theta_h_deg,
            theta_v_deg,
        })
    }

    /// Shrinks the footprint to at most `max_w × max_l`, keeping the angles
    /// consistent with the clipped extents.
    pub fn capped(&self, max_w: T, max_l: T) -> Self {
        let w = self.width_m.min(max_w);
        let l = self.length_m.min(max_l);
        let two = T::lit(2.0);
        let angle = |extent: T| (two * (extent / (two * self.height_m)).atan()).to_degrees();
        Self {
            width_m: w,
            length_m: l,
            height_m: self.height_m,
            theta_h_deg: if w < self.width_m { angle(w) } else { self.theta_h_deg },
            theta_v_deg: if l < self.length_m { angle(l) } else { self.theta_v_deg },
        }
    }

    pub fn area_m2(&self) -> T {
        self.width_m * self.length_m
    }
}

pub fn ground_footprint<T: Scalar>(
    sensor: &SensorGeometry<T>,
    focal_mm: T,
    height_m: T,
) -> Result<Footprint<T>, OpticsError> {
    sensor.validate()?;
    let th = angular_fov_deg(sensor.width_mm, focal_mm)?;
    let tv = angular_fov_deg(sensor.height_mm, focal_mm)?;
    Footprint::from_angles(height_m, th, tv)
}

/// Distance an object moving at `velocity_m_s` travels between frames.
pub fn distance_per_frame<T: Scalar>(velocity_m_s: T, fps: T) -> Result<T, OpticsError> {
    if !(fps > T::zero()) || !fps.is_finite() {
        return Err(OpticsError::NonPositiveFrameRate);
    }
    if !(velocity_m_s >= T::zero()) {
        return Err(OpticsError::NegativeVelocity);
    }
    Ok(velocity_m_s / fps)
}
