//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use baycam::catalog::{feasible_pairs, Catalog, RankedPair};
use baycam::costing::{bill_of_materials, SwitchSpec};
use baycam::geometry::{bundled_a320, Point, Rect};
use baycam::optics::{
    distance_per_frame, fov_at_distance, ground_footprint, working_distance_for_gsd, SensorGeometry,
};
use baycam::pipeline::{
    plan_scenario, render_layout_svg, sweep_time, PlanOptions, ScenarioSpec, DEFAULT_PASS_LENGTH_M,
};
use baycam::placement::{solve_set_cover_exact, CoverMatrix};
use baycam::Money;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// (preset, camera, lens, published camera count, published GSD mm/px)
const TABLE: [(&str, &str, &str, usize, f64); 5] = [
    ("defect", "Allied(7)", "Techspec(7)", 49, 0.89),
    ("drone", "Basler(1)", "Techspec(4)", 15, 6.02),
    ("ground_robot", "Lucid(2)", "Techspec(3)", 8, 6.94),
    ("vehicle", "Lucid(11)", "Techspec(3)", 6, 4.91),
    ("human", "Allied(3)", "Techspec(2)", 9, 4.94),
];

fn pair(cat: &Catalog, camera: &str, lens: &str) -> RankedPair {
    let camera = cat.camera(camera).unwrap().clone();
    let lens = cat.lens(lens).unwrap().clone();
    let total = camera.price_gbp + lens.price_gbp;
    let fov = fov_at_distance(&camera.sensor, lens.focal_mm, 1000.0).unwrap();
    RankedPair { camera, lens, fov, total_cost_gbp: total, objective: total.as_pounds_f64() }
}

fn bom_exactness() -> Outcome {
    let cat = Catalog::bundled();
    let p = pair(&cat, "Allied(7)", "Techspec(7)");
    let t = Instant::now();
    let bom = bill_of_materials(&p, 49, Some(&SwitchSpec::default()), &[]).unwrap();
    let elapsed = t.elapsed();
    let expected = Money::from_pounds(76_809);
    outcome(
        bom.total_gbp == expected && bom.switch_count == 3 && elapsed < Duration::from_millis(1),
        format!(
            "49 x Allied(7)+Techspec(7) + {} switches = {} (want {expected}) in {elapsed:?}",
            bom.switch_count, bom.total_gbp
        ),
    )
}

fn unit_cost() -> Outcome {
    let cat = Catalog::bundled();
    let p = pair(&cat, "Lucid(11)", "Techspec(3)");
    let expected = Money::from_pounds(2_061);
    outcome(
        p.total_cost_gbp == expected,
        format!("Lucid(11)+Techspec(3) = {} (want {expected})", p.total_cost_gbp),
    )
}

fn gsd_reproduction() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, _, _, _, quoted) in TABLE {
        let g = ScenarioSpec::preset(name).unwrap().gsd_max_mm_px();
        let rel = (g - quoted).abs() / quoted;
        let ok = rel <= 0.01;
        pass &= ok;
        parts.push(format!(
            "{name} {g:.3} vs {quoted} ({:+.2}%{})",
            (g - quoted) / quoted * 100.0,
            if ok { "" } else { " OUT" }
        ));
    }
    outcome(pass, parts.join("; "))
}

fn feasibility_membership() -> Outcome {
    let cat = Catalog::bundled();
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, camera, lens, _, _) in TABLE {
        let spec = ScenarioSpec::preset(name).unwrap();
        let req = spec.selection_requirement().unwrap();
        let feasible = feasible_pairs(&cat.cameras, &cat.lenses, &req).unwrap();
        let ok = feasible.iter().any(|p| p.camera.id == camera && p.lens.id == lens);
        pass &= ok;
        parts.push(format!(
            "{name}: {camera}+{lens} at {:.2} m {}",
            req.working_distance_mm / 1000.0,
            if ok { "feasible" } else { "INFEASIBLE" }
        ));
    }
    outcome(pass, parts.join("; "))
}

fn motion_check() -> Outcome {
    let d = distance_per_frame(1.5_f64, 40.0).unwrap();
    outcome(d == 0.0375, format!("1.5 m/s at 40 fps -> {d} m"))
}

fn sweep_estimate() -> Outcome {
    let s = sweep_time(63.0, 1.0, 0.5, DEFAULT_PASS_LENGTH_M, 5.0).unwrap();
    outcome(
        (140.0..=160.0).contains(&s.total_time_s),
        format!("{} passes, {:.1} s", s.pass_count, s.total_time_s),
    )
}

fn brute_force_min(m: &CoverMatrix) -> usize {
    let n = m.n_rows();
    let cols: Vec<u64> = m.columns().iter().map(|c| c.iter().fold(0u64, |acc, &i| acc | (1 << i))).collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for k in 0..=cols.len() {
        if any_cover(&cols, k, 0, 0, full) {
            return k;
        }
    }
    unreachable!("instances are generated feasible")
}

fn any_cover(cols: &[u64], k: usize, start: usize, acc: u64, full: u64) -> bool {
    if acc == full {
        return true;
    }
    if k == 0 {
        return false;
    }
    (start..cols.len()).any(|j| any_cover(cols, k - 1, j + 1, acc | cols[j], full))
}

fn random_instance(rng: &mut ChaCha8Rng) -> CoverMatrix {
    let n_rows = rng.gen_range(1..=40);
    let n_cols = rng.gen_range(1..=20);
    let density = rng.gen_range(0.05..0.5);
    let mut columns: Vec<Vec<u32>> =
        (0..n_cols).map(|_| (0..n_rows as u32).filter(|_| rng.gen_bool(density)).collect()).collect();
    for i in 0..n_rows as u32 {
        if !columns.iter().any(|c| c.contains(&i)) {
            let j = rng.gen_range(0..n_cols);
            columns[j].push(i);
            columns[j].sort_unstable();
        }
    }
    CoverMatrix::from_columns(n_rows, columns).unwrap()
}

fn set_cover_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = Instant::now();
    let mut mismatches = 0;
    let mut not_proven = 0;
    for _ in 0..200 {
        let m = random_instance(&mut rng);
        let sol = solve_set_cover_exact(&m, Duration::from_secs(10)).unwrap();
        not_proven += usize::from(!sol.optimal);
        mismatches += usize::from(sol.count != brute_force_min(&m));
    }
    let elapsed = t.elapsed();
    outcome(
        mismatches == 0 && not_proven == 0 && elapsed < Duration::from_secs(60),
        format!("200 random instances (m <= 20): {mismatches} mismatches vs brute force, {not_proven} unproven, {elapsed:.2?}"),
    )
}

fn preset_counts() -> Outcome {
    let cat = Catalog::bundled();
    let outline = bundled_a320();
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, _, _, published, _) in TABLE {
        let spec = ScenarioSpec::preset(name).unwrap();
        match plan_scenario(&spec, &cat, &outline, &PlanOptions::default()) {
            Ok(plan) => {
                let r = &plan.report;
                let n = r.solution.camera_count;
                let dev = (n as f64 - published as f64) / published as f64;
                let ok = dev.abs() <= 0.25 && r.coverage.verified && r.coverage.violations == 0;
                pass &= ok;
                parts.push(format!(
                    "{name} {n} vs {published} ({:+.0}%{})",
                    dev * 100.0,
                    if ok { "" } else { " OUT" }
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{name} error: {e}"));
            }
        }
    }
    outcome(pass, format!("counts within 25% and fully covered: {}", parts.join("; ")))
}

fn covered(point: &Point<f64>, centres: &[[f64; 2]], w: f64, l: f64, tol: f64) -> bool {
    centres.iter().any(|&[x, y]| {
        let r = Rect::centred(Point::new(x, y), w, l).expand(tol, tol);
        r.contains(point)
    })
}

fn coverage_soundness() -> Outcome {
    let cat = Catalog::bundled();
    let outline = bundled_a320();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let opts = PlanOptions { time_budget: Duration::from_secs(5), ..PlanOptions::default() };
    let (mut plans, mut infeasible, mut bad) = (0, 0, Vec::new());
    for k in 0..100 {
        let name = baycam::pipeline::PRESET_NAMES[k % 5];
        let mut spec = ScenarioSpec::preset(name).unwrap();
        spec.overlap_fraction = rng.gen_range(0.0..0.4);
        spec.grid_spacing_m = rng.gen_range(0.4..1.0);
        spec.envelope_offset_m = rng.gen_range(0.0..1.5);
        let d = spec.working_distance_m().unwrap();
        spec.working_distance_m = Some(d * rng.gen_range(0.9..1.1));
        spec.bay_m = [rng.gen_range(42.0..60.0), rng.gen_range(45.0..60.0)];
        match plan_scenario(&spec, &cat, &outline, &opts) {
            Ok(plan) => {
                plans += 1;
                let r = &plan.report;
                let (w, l) = (r.footprint.width_m, r.footprint.length_m);
                let misses = plan
                    .geometry
                    .grid_points
                    .iter()
                    .filter(|p| !covered(p, &r.solution.positions, w, l, 1e-9 * 50.0))
                    .count();
                if misses > 0 || r.coverage.violations > 0 || !r.coverage.verified {
                    bad.push(format!("#{k} {name}: {misses} uncovered"));
                }
            }
            Err(e) if e.is_infeasible() => infeasible += 1,
            Err(e) => bad.push(format!("#{k} {name}: {e}")),
        }
    }
    outcome(
        bad.is_empty() && plans > 0,
        format!(
            "{plans} plans re-verified, {infeasible} infeasible perturbations{}",
            if bad.is_empty() { String::new() } else { format!("; failures: {}", bad.join(", ")) }
        ),
    )
}

fn optics_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut worst_fov, mut worst_gsd) = (0.0_f64, 0.0_f64);
    for _ in 0..100_000 {
        let sensor = SensorGeometry {
            width_mm: rng.gen_range(1.0..40.0),
            height_mm: rng.gen_range(1.0..30.0),
            res_w_px: rng.gen_range(100..8000),
            res_h_px: rng.gen_range(100..6000),
            pixel_um: 3.45,
        };
        let f = rng.gen_range(2.0..100.0);
        let d_mm = rng.gen_range(100.0..50_000.0);
        let fov = fov_at_distance(&sensor, f, d_mm).unwrap();
        let fp = ground_footprint(&sensor, f, d_mm / 1000.0).unwrap();
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
        worst_fov = worst_fov.max(rel(fp.width_m, fov.width_m)).max(rel(fp.length_m, fov.height_m));
        let back = working_distance_for_gsd(&sensor, f, fov.gsd_w_mm_px).unwrap();
        worst_gsd = worst_gsd
            .max(rel(back, d_mm))
            .max(rel(fov.gsd_w_mm_px * f64::from(sensor.res_w_px), fov.width_mm()));
    }
    outcome(
        worst_fov <= 1e-9 && worst_gsd <= 1e-9,
        format!("10^5 samples: pinhole forms agree to {worst_fov:.1e}, GSD round trip to {worst_gsd:.1e}"),
    )
}

fn determinism() -> Outcome {
    let cat = Catalog::bundled();
    let outline = bundled_a320();
    let mut parts = Vec::new();
    let mut pass = true;
    for name in baycam::pipeline::PRESET_NAMES {
        let spec = ScenarioSpec::preset(name).unwrap();
        let run = || {
            let p = plan_scenario(&spec, &cat, &outline, &PlanOptions::default()).unwrap();
            (p.report.to_json(), render_layout_svg(&p.report, &p.geometry))
        };
        let ok = run() == run();
        pass &= ok;
        if !ok {
            parts.push(format!("{name} differs"));
        }
    }
    outcome(
        pass,
        if pass {
            "JSON and SVG byte-identical across two runs of every preset".into()
        } else {
            parts.join(", ")
        },
    )
}

type Check = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Check; 11] = [
        ("1 BOM exactness", bom_exactness),
        ("2 unit cost", unit_cost),
        ("3 GSD reproduction (1%)", gsd_reproduction),
        ("4 feasibility membership", feasibility_membership),
        ("5 motion check", motion_check),
        ("6 sweep estimate (140-160 s)", sweep_estimate),
        ("7a set-cover optimality", set_cover_optimality),
        ("7b preset camera counts", preset_counts),
        ("8 coverage soundness", coverage_soundness),
        ("9 optics invariants (1e-9)", optics_invariants),
        ("10 determinism", determinism),
    ];
    let mut failed = 0;
    for (label, check) in criteria {
        let t = Instant::now();
        let o = check();
        failed += usize::from(!o.pass);
        println!("{} {label}: {} [{:.2?}]", if o.pass { "PASS" } else { "FAIL" }, o.detail, t.elapsed());
    }
    println!("acceptance: {} of {} checks passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
