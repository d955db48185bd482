//! Camera and lens market data, feasibility filtering and cost ranking.

mod load;
mod select;

pub use load::{load_cameras_csv, load_catalog_json, load_lenses_csv, Catalog};
pub use select::{
    feasibility_scan, feasible_pairs, fps_penalty, rank_pairs, select_best, FilterStats, ObjectiveWeights,
    RankedPair, SelectionRequirement,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::optics::SensorGeometry;
use crate::Money;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shutter {
    Global,
    Rolling,
}

impl std::str::FromStr for Shutter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "global" => Ok(Shutter::Global),
            "rolling" => Ok(Shutter::Rolling),
            other => Err(format!("unknown shutter type {other:?}")),
        }
    }
}

impl std::fmt::Display for Shutter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Shutter::Global => "global",
            Shutter::Rolling => "rolling",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CameraSpec {
    pub id: String,
    pub brand: String,
    pub sensor: SensorGeometry<f64>,
    pub format: String,
    pub megapixels: f64,
    pub shutter: Shutter,
    pub fps: f64,
    pub gige_gbps: f64,
    pub price_gbp: Money,
}

impl CameraSpec {
    /// Uncompressed 8-bit stream rate over link capacity.
    pub fn link_utilisation(&self) -> f64 {
        let bits_per_s = f64::from(self.sensor.res_w_px) * f64::from(self.sensor.res_h_px) * self.fps * 8.0;
        bits_per_s / (self.gige_gbps * 1e9)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LensSpec {
    pub id: String,
    pub description: String,
    pub focal_mm: f64,
    pub price_gbp: Money,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("missing column {0:?}")]
    MissingColumn(String),
    #[error("{id}: {field} must be positive")]
    NonPositiveValue { id: String, field: &'static str },
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("catalog parse error: {0}")]
    Parse(String),
    #[error("no camera-lens pair is feasible ({0})")]
    NoFeasiblePair(FilterStats),
    #[error("nothing to rank")]
    EmptyInput,
    #[error("invalid requirement: {0}")]
    InvalidRequirement(&'static str),
}
