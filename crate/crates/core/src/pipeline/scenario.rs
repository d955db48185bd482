use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::catalog::SelectionRequirement;
use crate::geometry::CoverageSide;
use crate::optics::m_to_mm;
use crate::Money;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    DefectDetection,
    DroneLocalisation,
    GroundRobotLocalisation,
    VehicleMonitoring,
    HumanMonitoring,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::DefectDetection => "defect detection",
            Mode::DroneLocalisation => "drone localisation",
            Mode::GroundRobotLocalisation => "ground robot localisation",
            Mode::VehicleMonitoring => "vehicle monitoring",
            Mode::HumanMonitoring => "human monitoring",
        })
    }
}

/// Published figures a preset is expected to land near. Used only for
/// diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceDesign {
    pub camera: String,
    pub lens: String,
    pub camera_count: u32,
    #[serde(default, with = "crate::money::opt_pounds")]
    pub quoted_cost_gbp: Option<Money>,
    /// GSD quoted alongside the design, mm/px.
    pub quoted_gsd_mm_px: Option<f64>,
}

fn default_arc_tolerance() -> f64 {
    crate::geometry::DEFAULT_ARC_TOLERANCE_M
}

fn default_bay() -> [f64; 2] {
    [40.0, 50.0]
}

fn default_aircraft_length() -> f64 {
    37.6
}

/// Everything needed to plan one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub name: String,
    pub mode: Mode,
    /// Size of the object to detect, millimetres.
    pub target_w_mm: f64,
    pub target_h_mm: f64,
    /// Pixels the object must span along width and height.
    pub target_px: [u32; 2],
    /// Ground cell each camera must see, metres (width, length).
    pub target_area_m: [f64; 2],
    pub ceiling_height_m: f64,
    /// Height range of the target above the floor, metres.
    pub target_height_band_m: [f64; 2],
    /// Fixed camera-to-target distance; defaults to the ceiling height minus
    /// the middle of the target height band.
    #[serde(default)]
    pub working_distance_m: Option<f64>,
    #[serde(default)]
    pub velocity_band_m_s: Option<[f64; 2]>,
    pub overlap_fraction: f64,
    pub envelope_offset_m: f64,
    #[serde(default = "default_arc_tolerance")]
    pub arc_tolerance_m: f64,
    pub coverage_side: CoverageSide,
    pub grid_spacing_m: f64,
    /// Bay size, metres: across the aircraft, then along it.
    #[serde(default = "default_bay")]
    pub bay_m: [f64; 2],
    #[serde(default = "default_aircraft_length")]
    pub aircraft_length_m: f64,
    #[serde(default)]
    pub require_global_shutter: bool,
    #[serde(default, with = "crate::money::opt_pounds")]
    pub budget_gbp: Option<Money>,
    /// Optional cable allowance, metres.
    #[serde(default)]
    pub cabling_m: Option<u32>,
    #[serde(default)]
    pub reference: Option<ReferenceDesign>,
}

pub const PRESET_NAMES: [&str; 5] = ["defect", "drone", "ground_robot", "vehicle", "human"];

const PRESETS: [(&str, &str); 5] = [
    ("defect", include_str!("../../data/presets/defect.toml")),
    ("drone", include_str!("../../data/presets/drone.toml")),
    ("ground_robot", include_str!("../../data/presets/ground_robot.toml")),
    ("vehicle", include_str!("../../data/presets/vehicle.toml")),
    ("human", include_str!("../../data/presets/human.toml")),
];

impl ScenarioSpec {
    /// One of the bundled presets; see [`PRESET_NAMES`].
    pub fn preset(name: &str) -> Result<Self, PipelineError> {
        let key = name.replace('-', "_");
        let (_, text) = PRESETS
            .iter()
            .find(|(n, _)| *n == key)
            .ok_or_else(|| PipelineError::UnknownPreset(name.to_string()))?;
        Self::from_toml(text)
    }

    pub fn from_toml(text: &str) -> Result<Self, PipelineError> {
        let spec: Self = toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_json(text: &str) -> Result<Self, PipelineError> {
        let spec: Self = serde_json::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Parses by file extension: `.json` as JSON, anything else as TOML.
    pub fn from_file_contents(path: &Path, text: &str) -> Result<Self, PipelineError> {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Self::from_json(text),
            _ => Self::from_toml(text),
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let bad = |msg: &str| Err(PipelineError::InvalidScenario(format!("{}: {msg}", self.name)));
        let pos = |v: f64| v > 0.0 && v.is_finite();
        if !pos(self.target_w_mm) || !pos(self.target_h_mm) {
            return bad("target size must be positive");
        }
        if self.target_px.contains(&0) {
            return bad("target pixel counts must be positive");
        }
        if !self.target_area_m.iter().all(|&v| pos(v)) {
            return bad("target area must be positive");
        }
        let [lo, hi] = self.target_height_band_m;
        if !(lo >= 0.0 && lo <= hi) {
            return bad("target height band must satisfy 0 <= low <= high");
        }
        if !(self.working_distance_m()? > 0.0) {
            return bad("working distance must be positive");
        }
        if let Some([vlo, vhi]) = self.velocity_band_m_s {
            if !(vlo >= 0.0 && vlo <= vhi) {
                return bad("velocity band must satisfy 0 <= low <= high");
            }
        }
        if !(self.overlap_fraction >= 0.0 && self.overlap_fraction < 1.0) {
            return bad("overlap fraction must lie in [0, 1)");
        }
        if !(self.envelope_offset_m >= 0.0) {
            return bad("envelope offset must be >= 0");
        }
        if !pos(self.arc_tolerance_m) || !pos(self.grid_spacing_m) || !pos(self.aircraft_length_m) {
            return bad("arc tolerance, grid spacing and aircraft length must be positive");
        }
        if !self.bay_m.iter().all(|&v| pos(v)) {
            return bad("bay dimensions must be positive");
        }
        Ok(())
    }

    /// Largest admissible GSD: the smaller target dimension over the pixels
    /// required along that axis.
    pub fn gsd_max_mm_px(&self) -> f64 {
        if self.target_w_mm <= self.target_h_mm {
            self.target_w_mm / f64::from(self.target_px[0])
        } else {
            self.target_h_mm / f64::from(self.target_px[1])
        }
    }

    /// Camera-to-target distance band implied by the ceiling height.
    pub fn working_distance_band_m(&self) -> [f64; 2] {
        let [lo, hi] = self.target_height_band_m;
        [self.ceiling_height_m - hi, self.ceiling_height_m - lo]
    }

    pub fn working_distance_m(&self) -> Result<f64, PipelineError> {
        if let Some(d) = self.working_distance_m {
            return Ok(d);
        }
        let [near, far] = self.working_distance_band_m();
        if !(near > 0.0) {
            return Err(PipelineError::InvalidScenario(format!(
                "{}: target height band reaches the ceiling",
                self.name
            )));
        }
        Ok((near + far) / 2.0)
    }

    /// Camera-lens constraints for this scenario: the camera must see the
    /// whole target cell at the working distance and resolve the target.
    pub fn selection_requirement(&self) -> Result<SelectionRequirement, PipelineError> {
        Ok(SelectionRequirement {
            target_w_mm: m_to_mm(self.target_area_m[0]),
            target_h_mm: m_to_mm(self.target_area_m[1]),
            gsd_max_mm_px: self.gsd_max_mm_px(),
            working_distance_mm: m_to_mm(self.working_distance_m()?),
            budget_gbp: self.budget_gbp,
            require_global_shutter: self.require_global_shutter,
        })
    }
}
