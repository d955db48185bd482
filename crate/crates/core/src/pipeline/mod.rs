//! End-to-end scenario planning: camera selection, coverage geometry,
//! placement, costing and layout rendering.

mod plan;
mod scenario;
mod svg;
mod sweep;

pub use plan::{
    plan_scenario, CoverageSummary, EnvelopeSummary, GridSummary, MotionCheck, Plan, PlanGeometry,
    PlanOptions, PlanReport, SolutionSummary, SCHEMA_VERSION,
};
pub use scenario::{Mode, ReferenceDesign, ScenarioSpec, PRESET_NAMES};
pub use svg::render_layout_svg;
pub use sweep::{sweep_time, SweepPlan, DEFAULT_PASS_LENGTH_M};

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::costing::CostingError;
use crate::geometry::GeometryError;
use crate::optics::OpticsError;
use crate::placement::PlacementError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("scenario config: {0}")]
    Config(String),
    #[error("invalid scenario {0}")]
    InvalidScenario(String),
    #[error("{scenario}: {source}")]
    Catalog { scenario: String, source: CatalogError },
    #[error("{scenario}: {source}")]
    Geometry { scenario: String, source: GeometryError },
    #[error("{scenario}: {source}")]
    Optics { scenario: String, source: OpticsError },
    #[error("{scenario}: {source}")]
    Placement { scenario: String, source: PlacementError },
    #[error("{scenario}: {source}")]
    Costing { scenario: String, source: CostingError },
    #[error("{scenario}: solution leaves {violations} target point(s) uncovered")]
    Verification { scenario: String, violations: usize },
    #[error("sweep: {0} must be positive")]
    NonPositiveInput(&'static str),
}

impl PipelineError {
    /// True when the scenario is well formed but cannot be satisfied.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            PipelineError::Catalog { source: CatalogError::NoFeasiblePair(_), .. }
                | PipelineError::Placement {
                    source: PlacementError::UncoverablePoint { .. } | PlacementError::Infeasible { .. },
                    ..
                }
                | PipelineError::Geometry { source: GeometryError::EmptyGrid, .. }
        )
    }
}
