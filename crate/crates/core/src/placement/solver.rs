use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{CoverMatrix, PlacementError};

pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverStats {
    pub nodes_explored: u64,
    /// Columns fixed by reductions before branching.
    pub forced_columns: usize,
    /// Independent sub-problems after reductions.
    pub components: usize,
    /// Rows and columns left after reductions.
    pub reduced_rows: usize,
    pub reduced_cols: usize,
    /// Wall-clock time. Not serialised so that reports are reproducible.
    #[serde(skip)]
    pub runtime: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementSolution {
    /// Chosen column indices, ascending.
    pub chosen: Vec<usize>,
    pub count: usize,
    /// True when no smaller cover exists.
    pub optimal: bool,
    pub lower_bound: usize,
    /// `per_point_cover_count[k]` = rows covered by exactly `k` chosen columns.
    pub per_point_cover_count: Vec<usize>,
    pub stats: SolverStats,
}

impl PlacementSolution {
    fn new(m: &CoverMatrix, mut chosen: Vec<usize>, lower_bound: usize, stats: SolverStats) -> Self {
        chosen.sort_unstable();
        chosen.dedup();
        let count = chosen.len();
        let mult = m.multiplicity(&chosen);
        let top = mult.iter().copied().max().unwrap_or(0) as usize;
        let mut hist = vec![0usize; top + 1];
        for k in mult {
            hist[k as usize] += 1;
        }
        Self {
            optimal: count <= lower_bound,
            chosen,
            count,
            lower_bound: lower_bound.min(count),
            per_point_cover_count: hist,
            stats,
        }
    }
}

fn check_feasible(m: &CoverMatrix) -> Result<(), PlacementError> {
    match m.uncovered_rows().first() {
        Some(&row) => Err(PlacementError::Infeasible { row }),
        None => Ok(()),
    }
}

/// Repeatedly takes the column covering the most uncovered rows, lowest
/// index on ties.
pub fn solve_set_cover_greedy(m: &CoverMatrix) -> Result<PlacementSolution, PlacementError> {
    let start = Instant::now();
    check_feasible(m)?;
    let chosen = greedy_cover(m.rows(), m.columns());
    let lb = packing_bound_full(m);
    let stats = SolverStats { runtime: start.elapsed(), ..SolverStats::default() };
    Ok(PlacementSolution::new(m, chosen, lb, stats))
}

fn greedy_cover(rows: &[Vec<u32>], cols: &[Vec<u32>]) -> Vec<usize> {
    let mut covered = vec![false; rows.len()];
    let mut remaining = rows.len();
    let mut gain: Vec<usize> =
        cols.iter().map(|c| c.iter().filter(|&&i| !covered[i as usize]).count()).collect();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let (best, &g) = gain
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("at least one column");
        debug_assert!(g > 0);
        chosen.push(best);
        for &i in &cols[best] {
            let i = i as usize;
            if !covered[i] {
                covered[i] = true;
                remaining -= 1;
                for &j in &rows[i] {
                    gain[j as usize] -= 1;
                }
            }
        }
    }
    chosen
}

/// Greedy packing of rows with pairwise disjoint column sets; each needs its
/// own column.
fn packing_bound_full(m: &CoverMatrix) -> usize {
    let mut order: Vec<usize> = (0..m.n_rows()).collect();
    order.sort_by_key(|&i| (m.row(i).len(), i));
    let mut used = vec![false; m.n_cols()];
    let mut n = 0;
    for i in order {
        let r = m.row(i);
        if r.iter().all(|&j| !used[j as usize]) {
            n += 1;
            r.iter().for_each(|&j| used[j as usize] = true);
        }
    }
    n
}

/// Solves minimum set cover exactly by reduction plus branch and bound.
///
/// When the budget runs out the best cover found so far is returned with
/// `optimal = false`.
pub fn solve_set_cover_exact(
    m: &CoverMatrix,
    time_budget: Duration,
) -> Result<PlacementSolution, PlacementError> {
    let start = Instant::now();
    let deadline = start.checked_add(time_budget);
    check_feasible(m)?;

    let reduced = reduce(m);
    let mut stats = SolverStats {
        forced_columns: reduced.forced.len(),
        reduced_rows: reduced.rows.len(),
        reduced_cols: {
            let mut c: Vec<u32> = reduced.rows.iter().flatten().copied().collect();
            c.sort_unstable();
            c.dedup();
            c.len()
        },
        ..SolverStats::default()
    };
    let mut chosen: Vec<usize> = reduced.forced.iter().map(|&j| j as usize).collect();
    let mut lower = chosen.len();
    let comps = components(&reduced.rows);
    stats.components = comps.len();
    for comp in comps {
        let mut sub = SubProblem::new(&comp, deadline);
        sub.search();
        stats.nodes_explored += sub.nodes;
        chosen.extend(sub.best.iter().map(|&l| sub.col_ids[l as usize] as usize));
        lower += if sub.timed_out { sub.root_bound } else { sub.best.len() };
    }
    stats.runtime = start.elapsed();
    Ok(PlacementSolution::new(m, chosen, lower, stats))
}

struct Reduced {
    forced: Vec<u32>,
    /// Surviving rows, each a sorted list of original column ids.
    rows: Vec<Vec<u32>>,
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

/// Essential-column forcing, row dominance and column dominance to a
/// fixpoint.
fn reduce(m: &CoverMatrix) -> Reduced {
    let mut rows: Vec<Vec<u32>> = m.rows().to_vec();
    let mut forced: Vec<u32> = Vec::new();
    let mut is_forced = vec![false; m.n_cols()];
    loop {
        let before = (rows.len(), rows.iter().map(Vec::len).sum::<usize>());

        rows.sort_unstable();
        rows.dedup();

        let mut newly = false;
        for r in &rows {
            if r.len() == 1 && !is_forced[r[0] as usize] {
                is_forced[r[0] as usize] = true;
                forced.push(r[0]);
                newly = true;
            }
        }
        if newly {
            rows.retain(|r| !r.iter().any(|&j| is_forced[j as usize]));
        }

        // Row dominance: a row whose columns include all of a smaller row's
        // is satisfied whenever the smaller one is.
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.n_cols()];
        for (i, r) in rows.iter().enumerate() {
            for &j in r {
                col_rows[j as usize].push(i as u32);
            }
        }
        let mut drop_row = vec![false; rows.len()];
        for (i, r) in rows.iter().enumerate() {
            let pivot = *r.iter().min_by_key(|&&j| (col_rows[j as usize].len(), j)).expect("non-empty row");
            for &k in &col_rows[pivot as usize] {
                let k = k as usize;
                if k != i && !drop_row[k] && rows[k].len() >= r.len() && is_subset(r, &rows[k]) {
                    drop_row[k] = true;
                }
            }
        }
        let mut idx = 0;
        rows.retain(|_| {
            idx += 1;
            !drop_row[idx - 1]
        });

        // Column dominance: drop j if some k covers every row j does; equal
        // columns keep the lowest index.
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.n_cols()];
        for (i, r) in rows.iter().enumerate() {
            for &j in r {
                col_rows[j as usize].push(i as u32);
            }
        }
        let mut dead = vec![false; m.n_cols()];
        for j in 0..m.n_cols() {
            let cj = &col_rows[j];
            if cj.is_empty() {
                continue;
            }
            let pivot = *cj.iter().min_by_key(|&&i| (rows[i as usize].len(), i)).expect("non-empty");
            for &k in &rows[pivot as usize] {
                let k = k as usize;
                if k == j || dead[k] {
                    continue;
                }
                let ck = &col_rows[k];
                let dominated = ck.len() > cj.len() || (ck.len() == cj.len() && k < j);
                if dominated && is_subset(cj, ck) {
                    dead[j] = true;
                    break;
                }
            }
        }
        if dead.iter().any(|&d| d) {
            for r in &mut rows {
                r.retain(|&j| !dead[j as usize]);
            }
        }

        let after = (rows.len(), rows.iter().map(Vec::len).sum::<usize>());
        if after == before && !newly {
            break;
        }
    }
    forced.sort_unstable();
    Reduced { forced, rows }
}

/// Splits rows into groups that share no column.
fn components(rows: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    let n = rows.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut owner: std::collections::BTreeMap<u32, usize> = std::collections::BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for &j in r {
            match owner.get(&j) {
                Some(&o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, i));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                None => {
                    owner.insert(j, i);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Vec<u32>>> = std::collections::BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(r.clone());
    }
    groups.into_values().collect()
}

struct SubProblem {
    /// Local column index -> original column id.
    col_ids: Vec<u32>,
    rows: Vec<Vec<u32>>,
    cols: Vec<Vec<u32>>,
    cover: Vec<u32>,
    uncovered: usize,
    banned: Vec<bool>,
    chosen: Vec<u32>,
    best: Vec<u32>,
    root_bound: usize,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl SubProblem {
    fn new(rows_global: &[Vec<u32>], deadline: Option<Instant>) -> Self {
        let mut col_ids: Vec<u32> = rows_global.iter().flatten().copied().collect();
        col_ids.sort_unstable();
        col_ids.dedup();
        let local = |j: u32| col_ids.binary_search(&j).expect("column present") as u32;
        let rows: Vec<Vec<u32>> = rows_global.iter().map(|r| r.iter().map(|&j| local(j)).collect()).collect();
        let mut cols = vec![Vec::new(); col_ids.len()];
        for (i, r) in rows.iter().enumerate() {
            for &j in r {
                cols[j as usize].push(i as u32);
            }
        }
        let best: Vec<u32> = greedy_cover(&rows, &cols).into_iter().map(|j| j as u32).collect();
        let n_rows = rows.len();
        let n_cols = cols.len();
        let mut sp = Self {
            col_ids,
            rows,
            cols,
            cover: vec![0; n_rows],
            uncovered: n_rows,
            banned: vec![false; n_cols],
            chosen: Vec::new(),
            best,
            root_bound: 0,
            nodes: 0,
            deadline,
            timed_out: false,
        };
        sp.root_bound = sp.lower_bound();
        sp
    }

    fn available(&self, i: usize) -> impl Iterator<Item = u32> + '_ {
        self.rows[i].iter().copied().filter(move |&j| !self.banned[j as usize])
    }

    fn gain(&self, j: u32) -> usize {
        self.cols[j as usize].iter().filter(|&&i| self.cover[i as usize] == 0).count()
    }

    fn lower_bound(&self) -> usize {
        let mut used = vec![false; self.cols.len()];
        let mut packed = 0;
        let mut order: Vec<(usize, usize)> = (0..self.rows.len())
            .filter(|&i| self.cover[i] == 0)
            .map(|i| (self.available(i).count(), i))
            .collect();
        order.sort_unstable();
        for &(_, i) in &order {
            if self.available(i).all(|j| !used[j as usize]) {
                packed += 1;
                for j in self.available(i).collect::<Vec<_>>() {
                    used[j as usize] = true;
                }
            }
        }
        let max_gain = (0..self.cols.len() as u32)
            .filter(|&j| !self.banned[j as usize])
            .map(|j| self.gain(j))
            .max()
            .unwrap_or(0);
        let size = if max_gain == 0 { 0 } else { self.uncovered.div_ceil(max_gain) };
        packed.max(size)
    }

    fn take(&mut self, j: u32) {
        self.chosen.push(j);
        for &i in &self.cols[j as usize] {
            let c = &mut self.cover[i as usize];
            if *c == 0 {
                self.uncovered -= 1;
            }
            *c += 1;
        }
    }

    fn untake(&mut self, j: u32) {
        self.chosen.pop();
        for &i in &self.cols[j as usize] {
            let c = &mut self.cover[i as usize];
            *c -= 1;
            if *c == 0 {
                self.uncovered += 1;
            }
        }
    }

    fn out_of_time(&mut self) -> bool {
        if !self.timed_out && self.nodes.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                self.timed_out = Instant::now() >= d;
            }
        }
        self.timed_out
    }

    fn search(&mut self) {
        self.nodes += 1;
        if self.out_of_time() {
            return;
        }
        if self.uncovered == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + 1 >= self.best.len() {
            return;
        }
        if self.chosen.len() + self.lower_bound() >= self.best.len() {
            return;
        }
        // Most constrained uncovered row, lowest index on ties.
        let row = (0..self.rows.len())
            .filter(|&i| self.cover[i] == 0)
            .min_by_key(|&i| (self.available(i).count(), i))
            .expect("an uncovered row");
        let mut branch: Vec<(usize, u32)> = self.available(row).map(|j| (self.gain(j), j)).collect();
        if branch.is_empty() {
            return;
        }
        branch.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut banned_here = Vec::with_capacity(branch.len());
        for &(_, j) in &branch {
            self.take(j);
            self.search();
            self.untake(j);
            if self.timed_out {
                break;
            }
            self.banned[j as usize] = true;
            banned_here.push(j);
        }
        for j in banned_here {
            self.banned[j as usize] = false;
        }
    }
}
