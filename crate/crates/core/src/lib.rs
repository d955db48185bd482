//! Camera-lens selection and minimum ceiling-camera placement for aircraft
//! maintenance bays.
//!
//! The geometric and optical layers are generic over [`Scalar`] (`f32` or
//! `f64`); the aliases below fix them to `f64`, which is what the pipeline
//! and CLI use.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod costing;
pub mod geometry;
pub mod money;
pub mod optics;
pub mod pipeline;
pub mod placement;
mod scalar;

pub use money::Money;
pub use scalar::Scalar;

pub type Point64 = geometry::Point<f64>;
pub type Rect64 = geometry::Rect<f64>;
pub type Polygon64 = geometry::Polygon<f64>;
pub type BufferedRegion64 = geometry::BufferedRegion<f64>;
pub type TargetGrid64 = geometry::TargetGrid<f64>;
pub type FieldOfView64 = optics::FieldOfView<f64>;
pub type Footprint64 = optics::Footprint<f64>;
