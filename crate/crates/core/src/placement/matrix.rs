use serde::{Deserialize, Serialize};

use super::{CandidateLattice, PlacementError};
use crate::geometry::{Point, TargetGrid};
use crate::Scalar;

/// Sparse Boolean incidence matrix: `rows[i]` lists the columns covering
/// row `i`, `cols[j]` the rows column `j` covers. Both sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverMatrix {
    n_rows: usize,
    cols: Vec<Vec<u32>>,
    rows: Vec<Vec<u32>>,
}

impl CoverMatrix {
    pub fn from_columns(n_rows: usize, columns: Vec<Vec<u32>>) -> Result<Self, PlacementError> {
        let mut cols = columns;
        let mut rows = vec![Vec::new(); n_rows];
        for (j, col) in cols.iter_mut().enumerate() {
            col.sort_unstable();
            col.dedup();
            for &i in col.iter() {
                let slot = rows.get_mut(i as usize).ok_or(PlacementError::RowOutOfRange {
                    col: j,
                    row: i as usize,
                    n_rows,
                })?;
                slot.push(j as u32);
            }
        }
        Ok(Self { n_rows, cols, rows })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.cols[j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i]
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.cols
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].binary_search(&(j as u32)).is_ok()
    }

    /// Rows no column covers.
    pub fn uncovered_rows(&self) -> Vec<usize> {
        (0..self.n_rows).filter(|&i| self.rows[i].is_empty()).collect()
    }

    /// Number of chosen columns covering each row.
    pub fn multiplicity(&self, chosen: &[usize]) -> Vec<u32> {
        let mut m = vec![0u32; self.n_rows];
        for &j in chosen {
            for &i in &self.cols[j] {
                m[i as usize] += 1;
            }
        }
        m
    }
}

/// Target points, candidate centres and their visibility matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageInstance<T> {
    pub points: TargetGrid<T>,
    /// Candidates left after dropping those that see no target point.
    pub candidates: CandidateLattice<T>,
    pub matrix: CoverMatrix,
    /// How many lattice nodes were dropped for covering nothing.
    pub pruned_candidates: usize,
}

fn covers<T: Scalar>(c: &Point<T>, p: &Point<T>, half_w: T, half_l: T, tol: T) -> bool {
    (p.x - c.x).abs() <= half_w + tol && (p.y - c.y).abs() <= half_l + tol
}

fn tolerance<T: Scalar>(lattice: &CandidateLattice<T>) -> T {
    let fp = &lattice.footprint;
    let scale =
        T::one().max(lattice.anchor.x.abs()).max(lattice.anchor.y.abs()).max(fp.width_m).max(fp.length_m);
    T::boundary_eps() * scale
}

/// Builds the closed-rectangle visibility matrix and drops empty columns.
pub fn build_coverage_matrix<T: Scalar>(
    points: &TargetGrid<T>,
    lattice: &CandidateLattice<T>,
) -> Result<CoverageInstance<T>, PlacementError> {
    if points.is_empty() {
        return Err(PlacementError::EmptyInput("target points"));
    }
    if lattice.is_empty() {
        return Err(PlacementError::EmptyInput("candidates"));
    }
    let two = T::lit(2.0);
    let half_w = lattice.footprint.width_m / two;
    let half_l = lattice.footprint.length_m / two;
    let tol = tolerance(lattice);

    // Points are x-sorted, so each candidate scans a contiguous x band.
    let mut pts: Vec<(usize, Point<T>)> = points.points.iter().copied().enumerate().collect();
    pts.sort_by(|a, b| a.1.lex_cmp(&b.1));

    let mut kept = Vec::new();
    let mut columns = Vec::new();
    for c in &lattice.centres {
        let lo = pts.partition_point(|(_, p)| p.x < c.x - half_w - tol);
        let mut col: Vec<u32> = pts[lo..]
            .iter()
            .take_while(|(_, p)| p.x <= c.x + half_w + tol)
            .filter(|(_, p)| covers(c, p, half_w, half_l, tol))
            .map(|&(i, _)| i as u32)
            .collect();
        if !col.is_empty() {
            col.sort_unstable();
            kept.push(*c);
            columns.push(col);
        }
    }
    let matrix = CoverMatrix::from_columns(points.len(), columns)?;
    let uncovered = matrix.uncovered_rows();
    if !uncovered.is_empty() {
        let points = uncovered
            .iter()
            .map(|&i| {
                let p = points.points[i];
                [p.x.to_f64().unwrap_or(f64::NAN), p.y.to_f64().unwrap_or(f64::NAN)]
            })
            .collect();
        return Err(PlacementError::UncoverablePoint { points });
    }
    let pruned = lattice.len() - kept.len();
    Ok(CoverageInstance {
        points: points.clone(),
        candidates: CandidateLattice { centres: kept, ..lattice.clone() },
        matrix,
        pruned_candidates: pruned,
    })
}

/// Coverage recount for a set of chosen candidates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    /// Chosen cameras seeing each target point.
    pub multiplicity: Vec<u32>,
    /// Indices of target points seen by no chosen camera.
    pub violations: Vec<usize>,
    /// `histogram[k]` = number of points seen by exactly `k` cameras.
    pub histogram: Vec<usize>,
}

impl CoverageReport {
    fn from_multiplicity(multiplicity: Vec<u32>) -> Self {
        let violations = (0..multiplicity.len()).filter(|&i| multiplicity[i] == 0).collect();
        let top = multiplicity.iter().copied().max().unwrap_or(0) as usize;
        let mut histogram = vec![0usize; top + 1];
        for &m in &multiplicity {
            histogram[m as usize] += 1;
        }
        Self { multiplicity, violations, histogram }
    }

    pub fn is_complete(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Recomputes coverage geometrically from the points, candidate centres and
/// footprint, independent of the stored matrix.
pub fn verify_solution<T: Scalar>(inst: &CoverageInstance<T>, chosen: &[usize]) -> CoverageReport {
    let two = T::lit(2.0);
    let half_w = inst.candidates.footprint.width_m / two;
    let half_l = inst.candidates.footprint.length_m / two;
    let tol = tolerance(&inst.candidates);
    let centres: Vec<Point<T>> =
        chosen.iter().filter_map(|&j| inst.candidates.centres.get(j).copied()).collect();
    let multiplicity = inst
        .points
        .points
        .iter()
        .map(|p| centres.iter().filter(|c| covers(c, p, half_w, half_l, tol)).count() as u32)
        .collect();
    CoverageReport::from_multiplicity(multiplicity)
}

/// Coverage recount against an abstract matrix.
pub fn verify_cover(matrix: &CoverMatrix, chosen: &[usize]) -> CoverageReport {
    CoverageReport::from_multiplicity(matrix.multiplicity(chosen))
}

/// Self-contained JSON form of a coverage instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDump {
    pub footprint_w_m: f64,
    pub footprint_l_m: f64,
    pub points: Vec<[f64; 2]>,
    pub candidates: Vec<[f64; 2]>,
    /// `columns[j]` lists the point indices candidate `j` covers.
    pub columns: Vec<Vec<u32>>,
}

impl InstanceDump {
    pub fn matrix(&self) -> Result<CoverMatrix, PlacementError> {
        CoverMatrix::from_columns(self.points.len(), self.columns.clone())
    }
}

impl<T: Scalar> CoverageInstance<T> {
    pub fn dump(&self) -> InstanceDump {
        let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
        let xy = |p: &Point<T>| [f(p.x), f(p.y)];
        InstanceDump {
            footprint_w_m: f(self.candidates.footprint.width_m),
            footprint_l_m: f(self.candidates.footprint.length_m),
            points: self.points.points.iter().map(xy).collect(),
            candidates: self.candidates.centres.iter().map(xy).collect(),
            columns: self.matrix.columns().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CoverageSide;
    use crate::optics::Footprint;

    fn grid(points: Vec<Point<f64>>) -> TargetGrid<f64> {
        TargetGrid {
            spacing_m: 1.0,
            origin: Point::new(0.0, 0.0),
            points,
            side: CoverageSide::Internal,
            bay: None,
        }
    }

    fn lattice(centres: Vec<Point<f64>>, w: f64, l: f64) -> CandidateLattice<f64> {
        CandidateLattice {
            step_x_m: w,
            step_y_m: l,
            centres,
            footprint: Footprint {
                width_m: w,
                length_m: l,
                height_m: 10.0,
                theta_h_deg: 0.0,
                theta_v_deg: 0.0,
            },
            overlap_fraction: 0.0,
            anchor: Point::new(0.0, 0.0),
        }
    }

    fn three_by_three() -> TargetGrid<f64> {
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                pts.push(Point::new(f64::from(x), f64::from(y)));
            }
        }
        grid(pts)
    }

    #[test]
    fn single_candidate_sees_everything() {
        let inst =
            build_coverage_matrix(&three_by_three(), &lattice(vec![Point::new(1.0, 1.0)], 4.0, 4.0)).unwrap();
        assert_eq!(inst.matrix.column(0).len(), 9);
    }

    #[test]
    fn edge_point_is_covered() {
        let inst = build_coverage_matrix(
            &grid(vec![Point::new(1.5, 0.0)]),
            &lattice(vec![Point::new(0.0, 0.0)], 3.0, 3.0),
        )
        .unwrap();
        assert!(inst.matrix.get(0, 0));
    }

    #[test]
    fn hand_enumerated_nine_by_four() {
        // Points on {0,1,2}², candidates at the quadrant centres, W = L = 1.
        let cands =
            vec![Point::new(0.5, 0.5), Point::new(0.5, 1.5), Point::new(1.5, 0.5), Point::new(1.5, 1.5)];
        let inst = build_coverage_matrix(&three_by_three(), &lattice(cands, 1.0, 1.0)).unwrap();
        // Row order is x-major: (0,0) (0,1) (0,2) (1,0) ... (2,2).
        let expected: [&[u32]; 9] =
            [&[0], &[0, 1], &[1], &[0, 2], &[0, 1, 2, 3], &[1, 3], &[2], &[2, 3], &[3]];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(inst.matrix.row(i), *want, "row {i}");
        }
    }

    #[test]
    fn empty_columns_are_pruned_and_holes_reported() {
        let cands = vec![Point::new(0.0, 0.0), Point::new(50.0, 50.0)];
        let inst =
            build_coverage_matrix(&grid(vec![Point::new(0.0, 0.0)]), &lattice(cands.clone(), 1.0, 1.0))
                .unwrap();
        assert_eq!(inst.pruned_candidates, 1);
        assert_eq!(inst.candidates.centres, vec![Point::new(0.0, 0.0)]);
        let err = build_coverage_matrix(
            &grid(vec![Point::new(0.0, 0.0), Point::new(9.0, 9.0)]),
            &lattice(cands, 1.0, 1.0),
        );
        assert_eq!(err.unwrap_err(), PlacementError::UncoverablePoint { points: vec![[9.0, 9.0]] });
    }

    #[test]
    fn verify_detects_missing_camera() {
        let cands =
            vec![Point::new(0.5, 0.5), Point::new(0.5, 1.5), Point::new(1.5, 0.5), Point::new(1.5, 1.5)];
        let inst = build_coverage_matrix(&three_by_three(), &lattice(cands, 1.0, 1.0)).unwrap();
        let full = verify_solution(&inst, &[0, 1, 2, 3]);
        assert!(full.is_complete());
        assert_eq!(full.histogram, vec![0, 4, 4, 0, 1]);
        // Dropping candidate 3 leaves exactly the point only it covers.
        assert_eq!(verify_solution(&inst, &[0, 1, 2]).violations, vec![8]);
        assert_eq!(verify_solution(&inst, &[]).violations.len(), 9);
        assert_eq!(verify_cover(&inst.matrix, &[0, 1, 2]), verify_solution(&inst, &[0, 1, 2]));
    }

    #[test]
    fn dump_round_trips() {
        let inst =
            build_coverage_matrix(&three_by_three(), &lattice(vec![Point::new(1.0, 1.0)], 2.0, 2.0)).unwrap();
        let dump = inst.dump();
        let back: InstanceDump = serde_json::from_str(&serde_json::to_string(&dump).unwrap()).unwrap();
        assert_eq!(back.matrix().unwrap(), inst.matrix);
    }

    #[test]
    fn out_of_range_row_rejected() {
        assert!(matches!(
            CoverMatrix::from_columns(2, vec![vec![0, 5]]),
            Err(PlacementError::RowOutOfRange { row: 5, .. })
        ));
    }
}
