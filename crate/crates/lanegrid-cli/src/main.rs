//! Command-line front end for the planner: fit one field, compare the two
//! planners, sweep row angles, or generate the synthetic field corpus.
//!
//! Exit codes: 0 on success, 2 for input or configuration errors, 3 when no
//! feasible plan exists under the given configuration.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lanegrid::corpus::{self, ShapeSpec};
use lanegrid::io::geojson::field_to_geojson;
use lanegrid::io::plan_json::emit_plan;
use lanegrid::io::report::{emit_report, emit_sweep_csv, report_csv, sweep_csv};
use lanegrid::io::svg::emit_svg;
use lanegrid::io::atomic_write;
use lanegrid::{
    build_headlands, fit_freeform, fit_straights, load_field, run_compare, sweep_angles,
    FieldGeometry, InputError, LanePlan, PlanError, PlannerConfig,
};

#[derive(Parser)]
#[command(name = "lanegrid", version, about = "Lane planner for agricultural fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit interior lanes to one field and report the winning plan.
    Fit(FitArgs),
    /// Run both planners on one field and print a comparison row.
    Compare(CompareArgs),
    /// Count straight lanes at every grid angle.
    Sweep(SweepArgs),
    /// Generate synthetic field geometry files.
    Corpus(CorpusArgs),
}

/// Planner settings shared by all planning subcommands.
#[derive(Args)]
struct PlannerFlags {
    /// Operating width in metres.
    #[arg(long, default_value_t = 36.0)]
    width: f64,

    /// Interpolation accuracy fraction in (0, 1).
    #[arg(long, default_value_t = 0.99)]
    epsilon: f64,

    /// Largest admissible heading change along a lane, degrees.
    #[arg(long = "max-turn", default_value_t = 135.0)]
    max_turn: f64,

    /// Index gap beyond which two points of one lane count as separate passes.
    #[arg(long, default_value_t = 20)]
    block: usize,

    /// Grid step for straight-row candidate angles, degrees.
    #[arg(long = "angle-grid", default_value_t = 1.0)]
    angle_grid: f64,
}

impl PlannerFlags {
    fn config(&self) -> Result<PlannerConfig, InputError> {
        let cfg = PlannerConfig {
            operating_width: self.width,
            epsilon: self.epsilon,
            max_turn: self.max_turn.to_radians(),
            blocking_interval: self.block,
            angle_grid_deg: self.angle_grid,
            ..PlannerConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Mode {
    Freeform,
    Straights,
    Both,
}

#[derive(Args)]
struct FitArgs {
    /// Field geometry as GeoJSON (planar metres).
    #[arg(long)]
    input: PathBuf,

    /// Which planner to run.
    #[arg(long, value_enum, default_value_t = Mode::Freeform)]
    mode: Mode,

    /// Write the winning plan as JSON; with --mode both, the planner name
    /// is inserted before the extension.
    #[arg(long)]
    plan: Option<PathBuf>,

    /// Render the field, headlands and plan as SVG; suffixed like --plan.
    #[arg(long)]
    svg: Option<PathBuf>,

    #[command(flatten)]
    planner: PlannerFlags,
}

#[derive(Args)]
struct CompareArgs {
    /// Field geometry as GeoJSON (planar metres).
    #[arg(long)]
    input: PathBuf,

    /// Also write the comparison CSV to this path.
    #[arg(long)]
    report: Option<PathBuf>,

    #[command(flatten)]
    planner: PlannerFlags,
}

#[derive(Args)]
struct SweepArgs {
    /// Field geometry as GeoJSON (planar metres).
    #[arg(long)]
    input: PathBuf,

    /// Also write the sweep CSV to this path.
    #[arg(long)]
    report: Option<PathBuf>,

    #[command(flatten)]
    planner: PlannerFlags,
}

#[derive(Args)]
struct CorpusArgs {
    /// Shape specs as JSON, one object or an array; omitted, the standard
    /// five-field corpus is generated.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Directory the GeoJSON files are written into.
    #[arg(long, default_value = "fields")]
    out: PathBuf,

    /// Override the vertex-jitter seed of every spec (0 disables jitter).
    #[arg(long)]
    seed: Option<u64>,
}

enum CliError {
    Input(InputError),
    Plan(PlanError),
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl From<PlanError> for CliError {
    fn from(e: PlanError) -> Self {
        CliError::Plan(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Fit(args) => run_fit(args),
        Command::Compare(args) => run_compare_cmd(args),
        Command::Sweep(args) => run_sweep_cmd(args),
        Command::Corpus(args) => run_corpus(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Plan(e)) => {
            eprintln!("error: {e}");
            if let PlanError::Infeasible { log } = &e {
                for line in log.iter().take(10) {
                    eprintln!("  {line}");
                }
                if log.len() > 10 {
                    eprintln!("  ... and {} more", log.len() - 10);
                }
            }
            ExitCode::from(3)
        }
    }
}

fn run_fit(args: &FitArgs) -> Result<(), CliError> {
    let field = load_field(&args.input)?;
    let cfg = args.planner.config()?;
    let suffixed = args.mode == Mode::Both;
    if matches!(args.mode, Mode::Straights | Mode::Both) {
        let plan = fit_straights(&field, &cfg)?;
        emit_fit(&field, &cfg, &plan, "straights", suffixed, args)?;
    }
    if matches!(args.mode, Mode::Freeform | Mode::Both) {
        let plan = fit_freeform(&field, &cfg)?;
        emit_fit(&field, &cfg, &plan, "freeform", suffixed, args)?;
    }
    Ok(())
}

fn emit_fit(
    field: &FieldGeometry,
    cfg: &PlannerConfig,
    plan: &LanePlan,
    label: &str,
    suffixed: bool,
    args: &FitArgs,
) -> Result<(), CliError> {
    println!(
        "{}: {} lanes ({}), {:.1} m total, reference {}",
        field.name,
        plan.n_lanes(),
        label,
        plan.total_length(),
        plan.reference.describe()
    );
    for warning in &plan.warnings {
        eprintln!("warning: {warning}");
    }
    if let Some(path) = &args.plan {
        let path = target_path(path, label, suffixed);
        emit_plan(plan, cfg, &path)?;
    }
    if let Some(path) = &args.svg {
        let path = target_path(path, label, suffixed);
        let headlands = build_headlands(field, cfg)?;
        emit_svg(field, Some(&headlands), Some(plan), &path)?;
    }
    Ok(())
}

/// `out.json` plus label `freeform` becomes `out.freeform.json` when two
/// plans share one flag; otherwise the path is used as given.
fn target_path(path: &Path, label: &str, suffixed: bool) -> PathBuf {
    if !suffixed {
        return path.to_path_buf();
    }
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("plan");
    let name = match path.extension().and_then(|s| s.to_str()) {
        Some(ext) => format!("{stem}.{label}.{ext}"),
        None => format!("{stem}.{label}"),
    };
    path.with_file_name(name)
}

fn run_compare_cmd(args: &CompareArgs) -> Result<(), CliError> {
    let field = load_field(&args.input)?;
    let cfg = args.planner.config()?;
    let row = run_compare(&field, &cfg)?;
    print!("{}", report_csv(std::slice::from_ref(&row)));
    if let Some(path) = &args.report {
        emit_report(std::slice::from_ref(&row), path)?;
    }
    Ok(())
}

fn run_sweep_cmd(args: &SweepArgs) -> Result<(), CliError> {
    let field = load_field(&args.input)?;
    let cfg = args.planner.config()?;
    let sweep = sweep_angles(&field, &cfg)?;
    print!("{}", sweep_csv(&sweep));
    let (angle, n_lanes) = sweep.best();
    eprintln!("best: {n_lanes} lanes at {angle} deg");
    if let Some(path) = &args.report {
        emit_sweep_csv(&sweep, path)?;
    }
    Ok(())
}

fn run_corpus(args: &CorpusArgs) -> Result<(), CliError> {
    let mut specs = match &args.input {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(InputError::from)?;
            parse_specs(&text)?
        }
        None => corpus::standard_specs(),
    };
    if let Some(seed) = args.seed {
        for spec in &mut specs {
            spec.seed = seed;
        }
    }
    std::fs::create_dir_all(&args.out).map_err(InputError::from)?;
    for spec in &specs {
        let field = corpus::generate(spec)?;
        let path = args.out.join(format!("{}.geojson", field.name));
        atomic_write(&path, &field_to_geojson(&field))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Accept either a single spec object or an array of them.
fn parse_specs(text: &str) -> Result<Vec<ShapeSpec>, InputError> {
    if let Ok(list) = serde_json::from_str::<Vec<ShapeSpec>>(text) {
        return Ok(list);
    }
    serde_json::from_str::<ShapeSpec>(text)
        .map(|spec| vec![spec])
        .map_err(InputError::from)
}
