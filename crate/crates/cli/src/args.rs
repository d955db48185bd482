use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "baycam",
    version,
    about = "Camera selection and ceiling-camera placement for aircraft bays"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank feasible camera-lens pairs for a scenario.
    Select(SelectArgs),
    /// Select a pair, place the minimum number of cameras and cost the result.
    Plan(PlanArgs),
    /// Estimate a back-and-forth survey of a surface.
    Sweep(SweepArgs),
    /// Compare a plan's cost against the reference blueprints.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Bundled preset: defect, drone, ground_robot, vehicle or human.
    #[arg(long, conflicts_with = "scenario")]
    pub preset: Option<String>,
    /// Scenario file (TOML, or JSON by extension).
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Catalog: a JSON file, or a directory holding cameras.csv and lenses.csv.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    /// Camera-to-target distance, metres.
    #[arg(long, value_name = "M")]
    pub working_distance: Option<f64>,
    /// Maximum price of one camera plus lens, pounds.
    #[arg(long, value_name = "GBP")]
    pub budget: Option<baycam::Money>,
    /// Objective weights alpha,beta,gamma.
    #[arg(long, value_name = "A,B,G", value_parser = parse_weights)]
    pub weights: Option<[f64; 3]>,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Override the GSD bound, mm/px.
    #[arg(long, value_name = "MM_PER_PX")]
    pub gsd_max: Option<f64>,
    /// Number of ranked pairs to list.
    #[arg(long, default_value_t = 10)]
    pub top: usize,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Aircraft perimeter (.svg path or .json vertices). Defaults to the bundled A320 outline.
    #[arg(long)]
    pub polygon: Option<PathBuf>,
    #[arg(long, value_name = "FRACTION")]
    pub overlap: Option<f64>,
    #[arg(long, value_name = "M")]
    pub grid_spacing: Option<f64>,
    /// Bay size across x along the aircraft, metres, e.g. 40x50.
    #[arg(long, value_name = "WxL", value_parser = parse_bay)]
    pub bay: Option<[f64; 2]>,
    /// Solver time limit, seconds.
    #[arg(long, value_name = "SECONDS")]
    pub time_budget: Option<f64>,
    #[arg(long, value_name = "PATH")]
    pub out_report: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub out_svg: Option<PathBuf>,
    /// Write the bill of materials as a text table.
    #[arg(long, value_name = "PATH")]
    pub out_bom: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Surface area, square metres.
    #[arg(long, default_value_t = 63.0)]
    pub area: f64,
    /// Strip width per pass, metres.
    #[arg(long, default_value_t = 1.0)]
    pub swath: f64,
    /// Pass length, metres.
    #[arg(long, default_value_t = baycam::pipeline::DEFAULT_PASS_LENGTH_M)]
    pub pass: f64,
    /// Ground speed, m/s.
    #[arg(long, default_value_t = 0.5)]
    pub speed: f64,
    /// Time per 180 degree turn, seconds.
    #[arg(long, default_value_t = 5.0)]
    pub turn: f64,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Plan report JSON written by `plan --out-report`.
    #[arg(long, conflicts_with = "preset")]
    pub report: Option<PathBuf>,
    /// Plan this preset on the bundled outline and compare it.
    #[arg(long)]
    pub preset: Option<String>,
    /// Reference blueprints JSON. Defaults to the bundled set.
    #[arg(long)]
    pub blueprints: Option<PathBuf>,
}

fn parse_weights(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, g] = parts.as_slice() else {
        return Err("expected three comma-separated numbers".into());
    };
    let num = |v: &str| v.parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    Ok([num(a)?, num(b)?, num(g)?])
}

fn parse_bay(s: &str) -> Result<[f64; 2], String> {
    let (w, l) = s.split_once(['x', 'X']).ok_or_else(|| "expected WIDTHxLENGTH, e.g. 40x50".to_string())?;
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    Ok([num(w)?, num(l)?])
}
