//! Candidate camera lattice, Boolean visibility matrix and minimum set cover.

mod lattice;
mod matrix;
mod solver;

pub use lattice::{candidate_lattice, candidate_lattice_over, CandidateLattice};
pub use matrix::{
    build_coverage_matrix, verify_cover, verify_solution, CoverMatrix, CoverageInstance, CoverageReport,
    InstanceDump,
};
pub use solver::{
    solve_set_cover_exact, solve_set_cover_greedy, PlacementSolution, SolverStats, DEFAULT_TIME_BUDGET,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlacementError {
    #[error("camera footprint must have positive width and length")]
    NonPositiveFootprint,
    #[error("overlap fraction must lie in [0, 1), got {0}")]
    InvalidOverlap(f64),
    #[error("coverage instance has no {0}")]
    EmptyInput(&'static str),
    #[error("{} target point(s) not covered by any candidate, first at ({:.3}, {:.3})", .points.len(), .points[0][0], .points[0][1])]
    UncoverablePoint { points: Vec<[f64; 2]> },
    #[error("row {row} has no covering column")]
    Infeasible { row: usize },
    #[error("column {col} references row {row} outside 0..{n_rows}")]
    RowOutOfRange { col: usize, row: usize, n_rows: usize },
    #[error("time budget exhausted before any cover was found")]
    TimeBudgetExceeded,
}
