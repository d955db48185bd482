use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CameraSpec, CatalogError, LensSpec, Shutter};
use crate::optics::{fov_at_distance, FieldOfView};
use crate::Money;

/// Hard constraints a camera-lens pair must meet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionRequirement {
    /// Required coverage cell, millimetres.
    pub target_w_mm: f64,
    pub target_h_mm: f64,
    pub gsd_max_mm_px: f64,
    pub working_distance_mm: f64,
    #[serde(default)]
    pub budget_gbp: Option<Money>,
    #[serde(default)]
    pub require_global_shutter: bool,
}

/// Trade-off weights for ranking feasible pairs:
/// `O = C_total + α·D - β·[global shutter] + γ·fps_penalty`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveWeights {
    /// £ per unit of distortion metric.
    pub alpha_distortion: f64,
    /// £ credited to global-shutter cameras.
    pub beta_shutter_bonus: f64,
    /// £ per fps outside `fps_band`.
    pub gamma_fps_penalty: f64,
    pub fps_band: [f64; 2],
}

impl Default for ObjectiveWeights {
    fn default() -> Self {
        Self {
            alpha_distortion: 50.0,
            beta_shutter_bonus: 200.0,
            gamma_fps_penalty: 10.0,
            fps_band: [20.0, 50.0],
        }
    }
}

impl ObjectiveWeights {
    pub fn validate(&self) -> Result<(), CatalogError> {
        let all = [
            self.alpha_distortion,
            self.beta_shutter_bonus,
            self.gamma_fps_penalty,
            self.fps_band[0],
            self.fps_band[1],
        ];
        if all.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(CatalogError::InvalidRequirement("weights must be finite and >= 0"));
        }
        if self.fps_band[0] > self.fps_band[1] {
            return Err(CatalogError::InvalidRequirement("fps band is inverted"));
        }
        Ok(())
    }
}

/// Frames per second outside `[low, high]`.
pub fn fps_penalty(fps: f64, band: [f64; 2]) -> f64 {
    (band[0] - fps).max(0.0) + (fps - band[1]).max(0.0)
}

/// A camera-lens pair evaluated at the requirement's working distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedPair {
    pub camera: CameraSpec,
    pub lens: LensSpec,
    pub fov: FieldOfView<f64>,
    pub total_cost_gbp: Money,
    /// Ranking objective in pounds. Before ranking this is the plain
    /// hardware cost.
    pub objective: f64,
}

impl RankedPair {
    fn objective_with(&self, w: &ObjectiveWeights) -> f64 {
        let global = if self.camera.shutter == Shutter::Global { 1.0 } else { 0.0 };
        self.total_cost_gbp.as_pounds_f64() + w.alpha_distortion * self.fov.distortion
            - w.beta_shutter_bonus * global
            + w.gamma_fps_penalty * fps_penalty(self.camera.fps, w.fps_band)
    }
}

/// How many of the evaluated pairs failed each constraint. A pair can fail
/// several.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterStats {
    pub evaluated: usize,
    pub passed: usize,
    pub failed_coverage: usize,
    pub failed_resolution: usize,
    pub failed_budget: usize,
    pub failed_shutter: usize,
}

impl fmt::Display for FilterStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = |failed: usize| self.evaluated - failed;
        write!(
            f,
            "{} pairs evaluated; {} passed coverage, {} passed resolution, {} passed budget, {} passed shutter",
            self.evaluated,
            ok(self.failed_coverage),
            ok(self.failed_resolution),
            ok(self.failed_budget),
            ok(self.failed_shutter)
        )
    }
}

impl SelectionRequirement {
    fn validate(&self) -> Result<(), CatalogError> {
        if !(self.target_w_mm > 0.0 && self.target_h_mm > 0.0) {
            return Err(CatalogError::InvalidRequirement("target size must be positive"));
        }
        if !(self.working_distance_mm > 0.0) {
            return Err(CatalogError::InvalidRequirement("working distance must be positive"));
        }
        if !(self.gsd_max_mm_px >= 0.0) {
            return Err(CatalogError::InvalidRequirement("GSD bound must be >= 0"));
        }
        Ok(())
    }
}

/// Evaluates every camera × lens pair and keeps those meeting coverage,
/// resolution, budget and (optionally) shutter constraints.
pub fn feasibility_scan(
    cams: &[CameraSpec],
    lenses: &[LensSpec],
    req: &SelectionRequirement,
) -> Result<(Vec<RankedPair>, FilterStats), CatalogError> {
    req.validate()?;
    let mut stats = FilterStats::default();
    let mut out = Vec::new();
    for cam in cams {
        for lens in lenses {
            stats.evaluated += 1;
            let fov = fov_at_distance(&cam.sensor, lens.focal_mm, req.working_distance_mm)
                .map_err(|_| CatalogError::NonPositiveValue { id: cam.id.clone(), field: "sensor" })?;
            let total = cam.price_gbp + lens.price_gbp;
            let coverage = fov.width_mm() >= req.target_w_mm && fov.height_mm() >= req.target_h_mm;
            let resolution = fov.gsd_w_mm_px <= req.gsd_max_mm_px && fov.gsd_h_mm_px <= req.gsd_max_mm_px;
            let budget = req.budget_gbp.is_none_or(|cap| total <= cap);
            let shutter = !req.require_global_shutter || cam.shutter == Shutter::Global;
            stats.failed_coverage += usize::from(!coverage);
            stats.failed_resolution += usize::from(!resolution);
            stats.failed_budget += usize::from(!budget);
            stats.failed_shutter += usize::from(!shutter);
            if coverage && resolution && budget && shutter {
                stats.passed += 1;
                out.push(RankedPair {
                    camera: cam.clone(),
                    lens: lens.clone(),
                    fov,
                    total_cost_gbp: total,
                    objective: total.as_pounds_f64(),
                });
            }
        }
    }
    Ok((out, stats))
}

pub fn feasible_pairs(
    cams: &[CameraSpec],
    lenses: &[LensSpec],
    req: &SelectionRequirement,
) -> Result<Vec<RankedPair>, CatalogError> {
    feasibility_scan(cams, lenses, req).map(|(pairs, _)| pairs)
}

fn rank_order(a: &RankedPair, b: &RankedPair) -> Ordering {
    a.objective
        .total_cmp(&b.objective)
        .then_with(|| a.total_cost_gbp.cmp(&b.total_cost_gbp))
        .then_with(|| a.camera.id.cmp(&b.camera.id))
        .then_with(|| a.lens.id.cmp(&b.lens.id))
}

/// Scores pairs with `weights` and sorts ascending, ties broken by hardware
/// cost, then camera id, then lens id.
pub fn rank_pairs(
    mut pairs: Vec<RankedPair>,
    weights: &ObjectiveWeights,
) -> Result<Vec<RankedPair>, CatalogError> {
    if pairs.is_empty() {
        return Err(CatalogError::EmptyInput);
    }
    weights.validate()?;
    for p in &mut pairs {
        p.objective = p.objective_with(weights);
    }
    pairs.sort_by(rank_order);
    Ok(pairs)
}

pub fn select_best(
    cams: &[CameraSpec],
    lenses: &[LensSpec],
    req: &SelectionRequirement,
    weights: &ObjectiveWeights,
) -> Result<RankedPair, CatalogError> {
    let (pairs, stats) = feasibility_scan(cams, lenses, req)?;
    if pairs.is_empty() {
        return Err(CatalogError::NoFeasiblePair(stats));
    }
    Ok(rank_pairs(pairs, weights)?.swap_remove(0))
}
