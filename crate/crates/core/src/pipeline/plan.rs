use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{PipelineError, ScenarioSpec};
use crate::catalog::{select_best, Catalog, ObjectiveWeights, RankedPair};
use crate::costing::{bill_of_materials, BillOfMaterials, LineItem, SwitchSpec};
use crate::geometry::{buffer_polygon, discretize, scale_to_length, CoverageSide, Point, Polygon, Rect};
use crate::optics::{distance_per_frame, ground_footprint, Footprint};
use crate::placement::{
    build_coverage_matrix, candidate_lattice_over, solve_set_cover_exact, verify_solution, SolverStats,
    DEFAULT_TIME_BUDGET,
};
use crate::Money;

pub const SCHEMA_VERSION: u32 = 1;

/// Link utilisation above which a bandwidth warning is raised.
const GIGE_WARN_UTILISATION: f64 = 0.9;
/// Relative gap between the quoted and recomputed cost that triggers a note.
const COST_NOTE_FRACTION: f64 = 0.10;

#[derive(Debug, Clone)]
pub struct PlanOptions {
    pub weights: ObjectiveWeights,
    pub time_budget: Duration,
    /// `None` leaves networking out of the bill of materials.
    pub switch: Option<SwitchSpec>,
}

impl Default for PlanOptions {
    fn default() -> Self {
        Self {
            weights: ObjectiveWeights::default(),
            time_budget: DEFAULT_TIME_BUDGET,
            switch: Some(SwitchSpec::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeSummary {
    pub offset_m: f64,
    pub outline_area_m2: f64,
    pub envelope_area_m2: f64,
    pub envelope_vertices: usize,
    pub bounds: Rect<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSummary {
    pub spacing_m: f64,
    pub side: CoverageSide,
    pub point_count: usize,
    pub bay: Option<Rect<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSummary {
    pub camera_count: usize,
    pub optimal: bool,
    pub lower_bound: usize,
    /// Lattice nodes considered, and how many saw at least one target point.
    pub lattice_candidates: usize,
    pub useful_candidates: usize,
    /// Camera centres, metres, in the scaled aircraft frame.
    pub positions: Vec<[f64; 2]>,
    pub solver: SolverStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageSummary {
    pub verified: bool,
    pub violations: usize,
    /// `histogram[k]` = target points seen by exactly `k` cameras.
    pub histogram: Vec<usize>,
}

/// Blur check: how far the fastest target moves between frames.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionCheck {
    pub velocity_m_s: f64,
    pub fps: f64,
    pub distance_per_frame_m: f64,
    /// Half the smaller target dimension.
    pub threshold_m: f64,
    pub adequate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanReport {
    pub schema_version: u32,
    pub scenario: ScenarioSpec,
    pub gsd_max_mm_px: f64,
    pub working_distance_m: f64,
    pub selected: RankedPair,
    /// Optical footprint at the working distance.
    pub optical_footprint: Footprint<f64>,
    /// Footprint used for placement: the optical one capped at the target cell.
    pub footprint: Footprint<f64>,
    pub envelope: EnvelopeSummary,
    pub grid: GridSummary,
    pub solution: SolutionSummary,
    pub coverage: CoverageSummary,
    pub motion: Option<MotionCheck>,
    pub bom: BillOfMaterials,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

/// Shapes needed to draw a plan.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanGeometry {
    pub outline: Polygon<f64>,
    pub envelope: Polygon<f64>,
    pub grid_points: Vec<Point<f64>>,
    pub bay: Option<Rect<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub report: PlanReport,
    pub geometry: PlanGeometry,
}

/// Runs selection, geometry, placement, verification and costing for one
/// scenario. `outline` is the aircraft top view in drawing units; it is
/// scaled to the scenario's aircraft length.
pub fn plan_scenario(
    spec: &ScenarioSpec,
    catalog: &Catalog,
    outline: &Polygon<f64>,
    opts: &PlanOptions,
) -> Result<Plan, PipelineError> {
    spec.validate()?;
    let scenario = spec.name.clone();
    let geo = |source| PipelineError::Geometry { scenario: scenario.clone(), source };
    let place = |source| PipelineError::Placement { scenario: scenario.clone(), source };

    let gsd_max = spec.gsd_max_mm_px();
    let distance_m = spec.working_distance_m()?;
    let req = spec.selection_requirement()?;
    let selected = select_best(&catalog.cameras, &catalog.lenses, &req, &opts.weights)
        .map_err(|source| PipelineError::Catalog { scenario: scenario.clone(), source })?;

    let scaled = scale_to_length(outline, spec.aircraft_length_m).map_err(geo)?;
    let region = buffer_polygon(&scaled, spec.envelope_offset_m, spec.arc_tolerance_m).map_err(geo)?;
    let env_bounds = region.bounds();
    let bay = match spec.coverage_side {
        CoverageSide::Internal => None,
        CoverageSide::External => Some(Rect::centred(env_bounds.centre(), spec.bay_m[1], spec.bay_m[0])),
    };
    let grid = discretize(&region, spec.grid_spacing_m, spec.coverage_side, bay.as_ref()).map_err(geo)?;

    let optical = ground_footprint(&selected.camera.sensor, selected.lens.focal_mm, distance_m)
        .map_err(|source| PipelineError::Optics { scenario: scenario.clone(), source })?;
    let footprint = optical.capped(spec.target_area_m[0], spec.target_area_m[1]);

    let extent = bay.map_or(env_bounds, |b| b.union(&env_bounds));
    let lattice = candidate_lattice_over(region.centroid(), &extent, &footprint, spec.overlap_fraction)
        .map_err(place)?;
    let lattice_len = lattice.len();
    let inst = build_coverage_matrix(&grid, &lattice).map_err(place)?;
    let sol = solve_set_cover_exact(&inst.matrix, opts.time_budget).map_err(place)?;
    let check = verify_solution(&inst, &sol.chosen);
    if !check.is_complete() {
        return Err(PipelineError::Verification { scenario, violations: check.violations.len() });
    }

    let mut warnings = Vec::new();
    let mut notes = Vec::new();
    if !sol.optimal {
        warnings.push(format!(
            "solver stopped at the time budget: {} cameras, lower bound {}",
            sol.count, sol.lower_bound
        ));
    }
    let util = selected.camera.link_utilisation();
    if util > GIGE_WARN_UTILISATION {
        warnings.push(format!(
            "{}: uncompressed 8-bit stream needs {:.0}% of its {} Gbit/s link",
            selected.camera.id,
            util * 100.0,
            selected.camera.gige_gbps
        ));
    }
    let prefix = format!("{}:", selected.camera.id);
    warnings.extend(catalog.warnings.iter().filter(|w| w.starts_with(&prefix)).cloned());

    let motion = match spec.velocity_band_m_s {
        Some([_, v]) => {
            let dpf = distance_per_frame(v, selected.camera.fps)
                .map_err(|source| PipelineError::Optics { scenario: scenario.clone(), source })?;
            let threshold = spec.target_w_mm.min(spec.target_h_mm) / 1000.0 / 2.0;
            let adequate = dpf <= threshold;
            if !adequate {
                warnings.push(format!(
                    "target moves {:.3} m per frame at {} m/s, more than half its size ({:.3} m)",
                    dpf, v, threshold
                ));
            }
            Some(MotionCheck {
                velocity_m_s: v,
                fps: selected.camera.fps,
                distance_per_frame_m: dpf,
                threshold_m: threshold,
                adequate,
            })
        }
        None => None,
    };

    let count = u32::try_from(sol.count).expect("camera count fits in u32");
    let extras: Vec<LineItem> = spec.cabling_m.map(LineItem::cabling).into_iter().collect();
    let bom = bill_of_materials(&selected, count, opts.switch.as_ref(), &extras)
        .map_err(|source| PipelineError::Costing { scenario: scenario.clone(), source })?;

    if let Some(r) = &spec.reference {
        if r.camera != selected.camera.id || r.lens != selected.lens.id {
            notes.push(format!(
                "selected {} + {}; reference design uses {} + {}",
                selected.camera.id, selected.lens.id, r.camera, r.lens
            ));
        }
        if let (Some(quoted), Some(cam), Some(lens)) =
            (r.quoted_cost_gbp, catalog.camera(&r.camera), catalog.lens(&r.lens))
        {
            let unit = cam.price_gbp + lens.price_gbp;
            let pair = RankedPair {
                camera: cam.clone(),
                lens: lens.clone(),
                total_cost_gbp: unit,
                ..selected.clone()
            };
            if let Ok(ref_bom) = bill_of_materials(&pair, r.camera_count, opts.switch.as_ref(), &[]) {
                let gap =
                    (ref_bom.total_gbp.pence() - quoted.pence()).abs() as f64 / quoted.pence().max(1) as f64;
                if gap > COST_NOTE_FRACTION {
                    notes.push(format!(
                        "quoted reference cost {} differs from {} x ({} + {}) plus switches = {}",
                        quoted, r.camera_count, cam.price_gbp, lens.price_gbp, ref_bom.total_gbp
                    ));
                }
            }
        }
        if let Some(g) = r.quoted_gsd_mm_px {
            if (gsd_max - g).abs() > 0.01 * g {
                notes.push(format!(
                    "GSD bound {:.3} mm/px differs from the reference {:.2} mm/px by more than 1%",
                    gsd_max, g
                ));
            }
        }
    }

    let report = PlanReport {
        schema_version: SCHEMA_VERSION,
        scenario: spec.clone(),
        gsd_max_mm_px: gsd_max,
        working_distance_m: distance_m,
        optical_footprint: optical,
        footprint,
        envelope: EnvelopeSummary {
            offset_m: spec.envelope_offset_m,
            outline_area_m2: scaled.area(),
            envelope_area_m2: region.area(),
            envelope_vertices: region.boundary.len(),
            bounds: env_bounds,
        },
        grid: GridSummary { spacing_m: grid.spacing_m, side: grid.side, point_count: grid.len(), bay },
        solution: SolutionSummary {
            camera_count: sol.count,
            optimal: sol.optimal,
            lower_bound: sol.lower_bound,
            lattice_candidates: lattice_len,
            useful_candidates: inst.candidates.len(),
            positions: sol
                .chosen
                .iter()
                .map(|&j| {
                    let c = inst.candidates.centres[j];
                    [c.x, c.y]
                })
                .collect(),
            solver: sol.stats.clone(),
        },
        coverage: CoverageSummary { verified: true, violations: 0, histogram: check.histogram },
        motion,
        bom,
        selected,
        warnings,
        notes,
    };
    let geometry = PlanGeometry { outline: scaled, envelope: region.boundary, grid_points: grid.points, bay };
    Ok(Plan { report, geometry })
}

impl PlanReport {
    /// Deterministic pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn total_cost(&self) -> Money {
        self.bom.total_gbp
    }

    /// `cameras=<n> cost=£<total> optimal=<bool>`
    pub fn summary_line(&self) -> String {
        format!(
            "cameras={} cost={} optimal={}",
            self.solution.camera_count, self.bom.total_gbp, self.solution.optimal
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{parse_perimeter, PerimeterFormat};

    fn toy_spec() -> ScenarioSpec {
        let mut s = ScenarioSpec::preset("defect").unwrap();
        s.name = "toy".into();
        s.target_area_m = [3.0, 3.0];
        s.target_w_mm = 300.0;
        s.target_h_mm = 300.0;
        s.target_px = [10, 10];
        s.overlap_fraction = 0.0;
        s.envelope_offset_m = 0.0;
        s.aircraft_length_m = 6.0;
        s.reference = None;
        s
    }

    fn toy_outline() -> Polygon<f64> {
        parse_perimeter(include_str!("../../data/toy_square.json"), PerimeterFormat::JsonVertices).unwrap()
    }

    #[test]
    fn toy_square_plan() {
        let plan =
            plan_scenario(&toy_spec(), &Catalog::bundled(), &toy_outline(), &PlanOptions::default()).unwrap();
        let r = &plan.report;
        assert_eq!(r.footprint.width_m, 3.0);
        assert_eq!(r.footprint.length_m, 3.0);
        // Centroid-aligned lattice on a 3 m pitch puts columns at x = 0, 3, 6,
        // and the square's edges at 0 and 6 each need their own column.
        assert_eq!(r.solution.camera_count, 9);
        assert!(r.solution.optimal);
        assert_eq!(r.grid.point_count, 13 * 13);
        assert!(r.coverage.verified);
        assert_eq!(r.schema_version, 1);
    }

    #[test]
    fn report_numbers_recompute() {
        let plan =
            plan_scenario(&toy_spec(), &Catalog::bundled(), &toy_outline(), &PlanOptions::default()).unwrap();
        let r = &plan.report;
        let fov = crate::optics::fov_at_distance(
            &r.selected.camera.sensor,
            r.selected.lens.focal_mm,
            r.working_distance_m * 1000.0,
        )
        .unwrap();
        assert_eq!(fov, r.selected.fov);
        let bom =
            bill_of_materials(&r.selected, r.solution.camera_count as u32, Some(&SwitchSpec::default()), &[])
                .unwrap();
        assert_eq!(bom, r.bom);
    }

    #[test]
    fn unsatisfiable_gsd_is_infeasible() {
        let mut s = toy_spec();
        s.target_px = [100_000, 100_000];
        let err =
            plan_scenario(&s, &Catalog::bundled(), &toy_outline(), &PlanOptions::default()).unwrap_err();
        assert!(err.is_infeasible(), "{err}");
    }

    #[test]
    fn motion_check_only_with_velocity() {
        let cat = Catalog::bundled();
        let mut s = toy_spec();
        let plan = plan_scenario(&s, &cat, &toy_outline(), &PlanOptions::default()).unwrap();
        assert!(plan.report.motion.is_none());
        s.velocity_band_m_s = Some([0.5, 1.5]);
        let plan = plan_scenario(&s, &cat, &toy_outline(), &PlanOptions::default()).unwrap();
        let m = plan.report.motion.unwrap();
        assert_eq!(m.distance_per_frame_m, 1.5 / m.fps);
        assert_eq!(m.adequate, m.distance_per_frame_m <= 0.15);
    }
}
