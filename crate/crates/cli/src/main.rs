mod args;

use std::fmt::Write as _;
use std::io::{IsTerminal, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use baycam::catalog::{
    feasibility_scan, load_catalog_json, rank_pairs, Catalog, CatalogError, ObjectiveWeights,
};
use baycam::costing::{bundled_blueprints, compare_blueprints, load_blueprints};
use baycam::geometry::{bundled_a320, parse_perimeter, PerimeterFile, PerimeterFormat, Polygon, Units};
use baycam::pipeline::{
    plan_scenario, render_layout_svg, sweep_time, PipelineError, PlanOptions, PlanReport, ScenarioSpec,
};
use clap::Parser;

use args::{Cli, Command, CompareArgs, PlanArgs, ScenarioArgs, SelectArgs, SweepArgs};

const EXIT_INFEASIBLE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io { path: PathBuf, source: std::io::Error },
    Data(String),
    Infeasible(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Data(_) => EXIT_DATA,
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Infeasible(m) | CliError::Failed(m) => {
                f.write_str(m)
            }
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        let msg = e.to_string();
        if e.is_infeasible() {
            return CliError::Infeasible(msg);
        }
        match e {
            PipelineError::UnknownPreset(_)
            | PipelineError::InvalidScenario(_)
            | PipelineError::NonPositiveInput(_) => CliError::Usage(msg),
            PipelineError::Config(_) | PipelineError::Geometry { .. } => CliError::Data(msg),
            PipelineError::Catalog { source: CatalogError::InvalidRequirement(_), .. } => {
                CliError::Usage(msg)
            }
            _ => CliError::Failed(msg),
        }
    }
}

fn color_enabled() -> bool {
    std::env::var_os("PLANNER_NO_COLOR").is_none() && std::io::stderr().is_terminal()
}

fn paint(code: &str, text: &str) -> String {
    if color_enabled() {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

fn warn(msg: &str) {
    eprintln!("{} {msg}", paint("33", "warning:"));
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog, CliError> {
    let Some(path) = path else {
        return Ok(Catalog::bundled());
    };
    let data = |e: CatalogError| CliError::Data(format!("{}: {e}", path.display()));
    if path.is_dir() {
        let cams = read(&path.join("cameras.csv"))?;
        let lenses = read(&path.join("lenses.csv"))?;
        Catalog::from_csv(&cams, &lenses).map_err(data)
    } else {
        load_catalog_json(&read(path)?).map_err(data)
    }
}

fn load_scenario(args: &ScenarioArgs) -> Result<ScenarioSpec, CliError> {
    let mut spec = match (&args.preset, &args.scenario) {
        (_, Some(path)) => ScenarioSpec::from_file_contents(path, &read(path)?)?,
        (Some(name), None) => ScenarioSpec::preset(name)?,
        (None, None) => ScenarioSpec::preset("defect")?,
    };
    if let Some(d) = args.working_distance {
        spec.working_distance_m = Some(d);
    }
    if let Some(b) = args.budget {
        spec.budget_gbp = Some(b);
    }
    Ok(spec)
}

fn weights(args: &ScenarioArgs) -> ObjectiveWeights {
    let mut w = ObjectiveWeights::default();
    if let Some([a, b, g]) = args.weights {
        w.alpha_distortion = a;
        w.beta_shutter_bonus = b;
        w.gamma_fps_penalty = g;
    }
    w
}

/// Loads a perimeter. Outlines given in metres keep their size; anything else
/// is scaled to the scenario's aircraft length.
fn load_polygon(path: &Path, spec: &mut ScenarioSpec) -> Result<Polygon<f64>, CliError> {
    let text = read(path)?;
    let format = PerimeterFormat::from_extension(&path.to_string_lossy()).unwrap_or_else(|| {
        match text.trim_start().chars().next() {
            Some('{' | '[') => PerimeterFormat::JsonVertices,
            _ => PerimeterFormat::SvgPath,
        }
    });
    let poly = parse_perimeter::<f64>(&text, format)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    if format == PerimeterFormat::JsonVertices {
        if let Ok(PerimeterFile { units: Units::M, .. }) = serde_json::from_str(&text) {
            let b = poly.bounds();
            spec.aircraft_length_m = b.max.x - b.min.x;
        }
    }
    Ok(poly)
}

fn cmd_select(args: &SelectArgs) -> Result<(), CliError> {
    let spec = load_scenario(&args.scenario)?;
    spec.validate()?;
    let catalog = load_catalog(args.scenario.catalog.as_deref())?;
    let mut req = spec.selection_requirement()?;
    if let Some(g) = args.gsd_max {
        req.gsd_max_mm_px = g;
    }
    let usage = |e: CatalogError| CliError::Usage(e.to_string());
    let (pairs, stats) = feasibility_scan(&catalog.cameras, &catalog.lenses, &req).map_err(usage)?;
    if pairs.is_empty() {
        return Err(CliError::Infeasible(format!("no feasible camera-lens pair: {stats}")));
    }
    let ranked = rank_pairs(pairs, &weights(&args.scenario)).map_err(usage)?;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: working distance {:.2} m, GSD <= {:.3} mm/px, cell {} x {} m",
        spec.name,
        req.working_distance_mm / 1000.0,
        req.gsd_max_mm_px,
        spec.target_area_m[0],
        spec.target_area_m[1]
    );
    let _ = writeln!(out, "{stats}");
    let _ = writeln!(
        out,
        "{:>4}  {:<14} {:<14} {:>11} {:>10} {:>8} {:>13} {:>15}",
        "rank", "camera", "lens", "objective", "cost", "D", "GSD mm/px", "FoV m"
    );
    for (k, p) in ranked.iter().take(args.top).enumerate() {
        let _ = writeln!(
            out,
            "{:>4}  {:<14} {:<14} {:>11.1} {:>10} {:>8.3} {:>13} {:>15}",
            k + 1,
            p.camera.id,
            p.lens.id,
            p.objective,
            p.total_cost_gbp.to_string(),
            p.fov.distortion,
            format!("{:.3}/{:.3}", p.fov.gsd_w_mm_px, p.fov.gsd_h_mm_px),
            format!("{:.2} x {:.2}", p.fov.width_m, p.fov.height_m),
        );
    }
    print!("{out}");
    Ok(())
}

fn cmd_plan(args: &PlanArgs) -> Result<(), CliError> {
    let mut spec = load_scenario(&args.scenario)?;
    if let Some(o) = args.overlap {
        spec.overlap_fraction = o;
    }
    if let Some(g) = args.grid_spacing {
        spec.grid_spacing_m = g;
    }
    if let Some(b) = args.bay {
        spec.bay_m = b;
    }
    let outline = match &args.polygon {
        Some(path) => load_polygon(path, &mut spec)?,
        None => bundled_a320(),
    };
    let catalog = load_catalog(args.scenario.catalog.as_deref())?;
    let mut opts = PlanOptions { weights: weights(&args.scenario), ..PlanOptions::default() };
    if let Some(t) = args.time_budget {
        opts.time_budget = Duration::try_from_secs_f64(t).map_err(|_| {
            CliError::Usage(format!("--time-budget must be a non-negative number of seconds, got {t}"))
        })?;
    }
    let plan = plan_scenario(&spec, &catalog, &outline, &opts)?;
    let report = &plan.report;
    for w in &report.warnings {
        warn(w);
    }
    for n in &report.notes {
        eprintln!("{} {n}", paint("36", "note:"));
    }
    if let Some(path) = &args.out_report {
        write(path, &(report.to_json() + "\n"))?;
    }
    if let Some(path) = &args.out_svg {
        write(path, &render_layout_svg(report, &plan.geometry))?;
    }
    if let Some(path) = &args.out_bom {
        write(path, &report.bom.to_table())?;
    }
    println!("{}", report.summary_line());
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let s = sweep_time(args.area, args.swath, args.speed, args.pass, args.turn)?;
    println!(
        "passes={} turns={} traverse={:.1} s total={:.1} s ({:.2} min)",
        s.pass_count,
        s.turn_count(),
        s.traverse_time_s(),
        s.total_time_s,
        s.total_time_s / 60.0
    );
    Ok(())
}

fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let refs = match &args.blueprints {
        Some(path) => {
            load_blueprints(&read(path)?).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?
        }
        None => bundled_blueprints(),
    };
    let report: Option<PlanReport> = match (&args.report, &args.preset) {
        (Some(path), _) => Some(
            serde_json::from_str(&read(path)?)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?,
        ),
        (None, Some(name)) => {
            let spec = ScenarioSpec::preset(name)?;
            Some(plan_scenario(&spec, &Catalog::bundled(), &bundled_a320(), &PlanOptions::default())?.report)
        }
        (None, None) => None,
    };
    let label = report.as_ref().map(|r| format!("Vision ({})", r.scenario.name));
    let plan = report.as_ref().zip(label.as_deref()).map(|(r, l)| (l, &r.bom));
    print!("{}", compare_blueprints(plan, &refs).to_table());
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Select(a) => cmd_select(a),
        Command::Plan(a) => cmd_plan(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Compare(a) => cmd_compare(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{} {e}", paint("31", "error:"));
            ExitCode::from(e.code())
        }
    }
}
