//! Command-line front end. The `seqtest` binary only forwards to [`main_with_args`].

mod manifest;

pub use manifest::{OutcomeSummary, RunConfig, RunManifest};

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::dynamics::{lookup_system, registry, DynamicalSystem, SystemDefinition};
use crate::error::Error;
use crate::lyapunov::{
    largest_lyapunov_flow_with, largest_lyapunov_map_with, DEFAULT_FLOW_TRANSIENT,
    DEFAULT_MAP_TRANSIENT, DEFAULT_PERTURBATION,
};
use crate::numfmt::fmt_f64;
use crate::outcome::{SequentialTestOutcome, TestConfig, TestStatus};
use crate::seqtest::{
    closeness_intervals_with_min, coordinate_distance_series, dominant_coordinate, exceedances,
    run_sequential_test, shift_distance_series, DEFAULT_MIN_INTERVAL_POINTS,
};
use crate::state::StateVector;
use crate::trajectory::TrajectoryGrid;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_TRUNCATED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

const DEFAULT_DT: f64 = 0.01;
const DEFAULT_HORIZON: usize = 100_000;
const DEFAULT_K_MAX: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "seqtest", version, about = "Sequential test for Poincaré chaos")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the built-in systems with their reference constants.
    ListSystems {
        #[arg(long)]
        json: bool,
    },
    /// Build the convergence and separation sequences.
    Run(RunArgs),
    /// Emit shift-distance plot data and the list of exceedances.
    Distances(DistancesArgs),
    /// Find the intervals where a trajectory and its shift stay close.
    Closeness(ClosenessArgs),
    /// Estimate the largest Lyapunov exponent.
    Lyapunov(LyapunovArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Registry name, or the entry to pick from --system-file.
    #[arg(long)]
    pub system: Option<String>,
    /// JSON file with one system definition or an array of them.
    #[arg(long)]
    pub system_file: Option<PathBuf>,
    #[arg(long)]
    pub eps0: Option<f64>,
    #[arg(long)]
    pub tfix: Option<f64>,
    /// Grid spacing for flows (maps always use 1).
    #[arg(long)]
    pub dt: Option<f64>,
    /// Number of grid steps to generate.
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Reserved; every computation is deterministic, so setting it is an error.
    #[arg(long)]
    pub seed: Option<String>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub sys: SystemArgs,
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Write the JSON run manifest here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the convergence/separation table here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Threshold indices to keep in the CSV, e.g. `1,10,1905`.
    #[arg(long, value_delimiter = ',')]
    pub rows: Option<Vec<usize>>,
    /// Repeat the run recorded in a manifest.
    #[arg(long, conflicts_with_all = ["system", "system_file", "eps0", "tfix", "dt", "horizon", "k_max"])]
    pub from_manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ShiftArgs {
    /// Shift in grid steps.
    #[arg(long, conflicts_with = "manifest")]
    pub gamma: Option<usize>,
    /// Take the shift from a run manifest ...
    #[arg(long, requires = "gamma_k")]
    pub manifest: Option<PathBuf>,
    /// ... as its convergence entry with this threshold index.
    #[arg(long)]
    pub gamma_k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DistancesArgs {
    #[command(flatten)]
    pub sys: SystemArgs,
    #[command(flatten)]
    pub shift: ShiftArgs,
    /// Coordinate for the single-coordinate column: `x`, `y`, `z` or an index
    /// (default: dominant at --probe, else x).
    #[arg(long, value_parser = parse_coord)]
    pub coord: Option<usize>,
    /// Grid index whose dominant coordinate selects --coord.
    #[arg(long)]
    pub probe: Option<usize>,
    /// Exceedances are reported for indices below this one.
    #[arg(long)]
    pub upto: Option<usize>,
    /// Which series the exceedances are taken from.
    #[arg(long, value_enum, default_value_t = SeriesKind::Coord)]
    pub exceed_on: SeriesKind,
    /// Plot data: `t,d_full,d_coord`.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Exceedance list: `index,distance`.
    #[arg(long)]
    pub exceedances: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SeriesKind {
    Coord,
    Full,
}

#[derive(Debug, Args)]
pub struct ClosenessArgs {
    #[command(flatten)]
    pub sys: SystemArgs,
    #[command(flatten)]
    pub shift: ShiftArgs,
    /// Compare one coordinate (`x`, `y`, `z` or an index) instead of the full state.
    #[arg(long, value_parser = parse_coord)]
    pub coord: Option<usize>,
    /// Inclusive grid-index window, `start,end`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub window: Vec<usize>,
    #[arg(long)]
    pub threshold: f64,
    /// Shortest run of grid points reported as an interval.
    #[arg(long, default_value_t = DEFAULT_MIN_INTERVAL_POINTS)]
    pub min_points: usize,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    #[command(flatten)]
    pub sys: SystemArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub steps: usize,
    #[arg(long)]
    pub transient: Option<usize>,
    /// Steps between renormalizations (flows only).
    #[arg(long, default_value_t = 10)]
    pub renorm: usize,
    #[arg(long, default_value_t = DEFAULT_PERTURBATION)]
    pub perturbation: f64,
    /// Write the estimate as JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_coord(s: &str) -> Result<usize, String> {
    match s {
        "x" => Ok(0),
        "y" => Ok(1),
        "z" => Ok(2),
        _ => s.parse().map_err(|_| format!("expected x, y, z or an index, got '{s}'")),
    }
}

/// Failure of a command, mapped onto the exit-status contract.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Failure(e)
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(Error::Io(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failure(Error::Json(e))
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut stdout = String::new();
    let result = execute(&cli.command, &mut stdout);
    print!("{stdout}");
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failure(e)) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

/// Runs one command, appending its console output to `out`.
pub fn execute(command: &Command, out: &mut String) -> Result<i32, CliError> {
    match command {
        Command::ListSystems { json } => cmd_list_systems(*json, out),
        Command::Run(args) => cmd_run(args, out),
        Command::Distances(args) => cmd_distances(args, out),
        Command::Closeness(args) => cmd_closeness(args, out),
        Command::Lyapunov(args) => cmd_lyapunov(args, out),
    }
}

/// A system chosen by name or definition file, with its default constants.
#[derive(Debug, Clone)]
pub struct ResolvedSystem {
    pub definition: SystemDefinition,
    pub system: DynamicalSystem,
    pub initial_condition: StateVector,
}

impl ResolvedSystem {
    pub fn from_definition(definition: SystemDefinition) -> Result<Self, CliError> {
        let system = definition.to_system()?;
        let initial_condition = definition.initial_state();
        Ok(ResolvedSystem { definition, system, initial_condition })
    }

    fn name(&self) -> &str {
        self.definition.name.as_deref().unwrap_or("custom")
    }
}

fn resolve_system(args: &SystemArgs) -> Result<ResolvedSystem, CliError> {
    if args.seed.is_some() {
        return Err(usage("--seed is reserved: every computation is deterministic"));
    }
    let definition = match (&args.system_file, &args.system) {
        (Some(path), name) => {
            let defs = SystemDefinition::load(path).map_err(|e| match e {
                Error::Io(io) => usage(format!("cannot read {}: {io}", path.display())),
                Error::Json(j) => usage(format!("invalid system file {}: {j}", path.display())),
                other => CliError::from(other),
            })?;
            match name {
                Some(n) => defs
                    .into_iter()
                    .find(|d| d.name.as_deref() == Some(n.as_str()))
                    .ok_or_else(|| usage(format!("no system named '{n}' in {}", path.display())))?,
                None => defs.into_iter().next().expect("parse rejects empty files"),
            }
        }
        (None, Some(name)) => lookup_system(name)?.definition(),
        (None, None) => return Err(usage("one of --system or --system-file is required")),
    };
    ResolvedSystem::from_definition(definition)
}

fn grid_spacing(sys: &ResolvedSystem, dt: Option<f64>) -> Result<f64, CliError> {
    match (sys.system.is_discrete(), dt) {
        (true, None) => Ok(1.0),
        (true, Some(_)) => Err(usage("--dt applies only to continuous systems")),
        (false, None) => Ok(DEFAULT_DT),
        (false, Some(h)) if h > 0.0 && h.is_finite() => Ok(h),
        (false, Some(h)) => Err(usage(format!("--dt must be positive, got {h}"))),
    }
}

fn eps0_for(sys: &ResolvedSystem, flag: Option<f64>) -> Result<f64, CliError> {
    flag.or(sys.definition.eps0)
        .ok_or_else(|| usage(format!("--eps0 is required for system '{}'", sys.name())))
}

fn generate(sys: &ResolvedSystem, h: f64, steps: usize) -> Result<TrajectoryGrid, CliError> {
    Ok(sys.system.trajectory(&sys.initial_condition, h, steps)?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Failure(Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))))
}

fn cmd_list_systems(json: bool, out: &mut String) -> Result<i32, CliError> {
    let entries = registry();
    if json {
        let defs: Vec<SystemDefinition> = entries.iter().map(|e| e.definition()).collect();
        out.push_str(&serde_json::to_string_pretty(&defs)?);
        out.push('\n');
        return Ok(EXIT_OK);
    }
    for e in entries {
        let ic: Vec<String> = e.initial_condition.components().iter().map(|v| fmt_f64(*v)).collect();
        let _ = writeln!(
            out,
            "{:<16} eps0={:<5} t_fix={:<7} ic=[{}]",
            e.name,
            fmt_f64(e.eps0),
            fmt_f64(e.t_fix),
            ic.join(", ")
        );
    }
    Ok(EXIT_OK)
}

fn cmd_run(args: &RunArgs, out: &mut String) -> Result<i32, CliError> {
    let (sys, run_cfg) = match &args.from_manifest {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let manifest: RunManifest = serde_json::from_str(&text)
                .map_err(|e| usage(format!("invalid manifest {}: {e}", path.display())))?;
            if args.sys.seed.is_some() {
                return Err(usage("--seed is reserved: every computation is deterministic"));
            }
            (ResolvedSystem::from_definition(manifest.system)?, manifest.config)
        }
        None => {
            let sys = resolve_system(&args.sys)?;
            let h = grid_spacing(&sys, args.sys.dt)?;
            let cfg = RunConfig {
                eps0: eps0_for(&sys, args.sys.eps0)?,
                t_fix: args.sys.tfix.or(sys.definition.t_fix).unwrap_or(0.0),
                horizon: args.sys.horizon.unwrap_or(DEFAULT_HORIZON),
                h,
                k_max: args.k_max.unwrap_or(DEFAULT_K_MAX),
            };
            (sys, cfg)
        }
    };
    let config = TestConfig::new(run_cfg.eps0, run_cfg.t_fix, run_cfg.horizon, run_cfg.k_max)?;

    let started = Instant::now();
    let traj = generate(&sys, run_cfg.h, run_cfg.horizon)?;
    let outcome = run_sequential_test(&traj, &config)?;
    let duration = started.elapsed().as_secs_f64();

    let summary = OutcomeSummary {
        status: outcome.status,
        k_reached: outcome.pairs(),
        largest_convergence: outcome.convergence.last().map(|c| c.time),
    };
    let _ = writeln!(out, "system: {}", sys.name());
    let _ = writeln!(out, "status: {}", outcome.status);
    let _ = writeln!(out, "k reached: {}", summary.k_reached);
    match summary.largest_convergence {
        Some(t) => {
            let _ = writeln!(out, "largest convergence value: {}", fmt_f64(t));
        }
        None => out.push_str("largest convergence value: none\n"),
    }

    if let Some(path) = &args.csv {
        write_file(path, &outcome_csv(&outcome, args.rows.as_deref()))?;
    }
    if let Some(path) = &args.out {
        let mut definition = sys.definition.clone();
        definition.eps0 = Some(run_cfg.eps0);
        definition.t_fix = Some(run_cfg.t_fix);
        let manifest = RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            system: definition,
            config: run_cfg,
            outcome: summary,
            duration_secs: duration,
            convergence: outcome.convergence.clone(),
            separation: outcome.separation.clone(),
        };
        write_file(path, &(serde_json::to_string_pretty(&manifest)? + "\n"))?;
    }
    Ok(match outcome.status {
        TestStatus::Confirmed(_) => EXIT_OK,
        _ => EXIT_TRUNCATED,
    })
}

/// Table with columns `n,k,inv_k,conv,sep,delta,sep_distance`; `rows`
/// selects threshold indices, all of them by default.
pub fn outcome_csv(outcome: &SequentialTestOutcome, rows: Option<&[usize]>) -> String {
    let mut csv = String::from("n,k,inv_k,conv,sep,delta,sep_distance\n");
    let selected = outcome
        .convergence
        .iter()
        .filter(|c| rows.is_none_or(|r| r.contains(&c.n)));
    for (row, c) in selected.enumerate() {
        let sep = outcome.separation.get(c.n - 1);
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            row + 1,
            c.n,
            fmt_f64(1.0 / c.n as f64),
            fmt_f64(c.time),
            sep.map(|s| fmt_f64(s.time)).unwrap_or_default(),
            fmt_f64(c.delta),
            sep.map(|s| fmt_f64(s.distance)).unwrap_or_default(),
        );
    }
    csv
}

fn resolve_gamma(shift: &ShiftArgs, h: f64) -> Result<usize, CliError> {
    match (shift.gamma, &shift.manifest, shift.gamma_k) {
        (Some(g), None, _) => Ok(g),
        (None, Some(path), Some(k)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let manifest: RunManifest = serde_json::from_str(&text)
                .map_err(|e| usage(format!("invalid manifest {}: {e}", path.display())))?;
            if manifest.config.h.to_bits() != h.to_bits() {
                return Err(usage(format!(
                    "manifest grid spacing {} differs from {}",
                    manifest.config.h, h
                )));
            }
            manifest
                .convergence
                .iter()
                .find(|c| c.n == k)
                .map(|c| c.index)
                .ok_or_else(|| usage(format!("manifest has no convergence entry k={k}")))
        }
        _ => Err(usage("give --gamma, or --manifest with --gamma-k")),
    }
}

fn cmd_distances(args: &DistancesArgs, out: &mut String) -> Result<i32, CliError> {
    let sys = resolve_system(&args.sys)?;
    let h = grid_spacing(&sys, args.sys.dt)?;
    let gamma = resolve_gamma(&args.shift, h)?;
    let reach = args.upto.unwrap_or(0).max(args.probe.map_or(0, |p| p + 1));
    let steps = args.sys.horizon.unwrap_or(gamma + reach.max(DEFAULT_HORIZON.min(gamma + 1000)));
    let traj = generate(&sys, h, steps)?;

    let coord = match (args.coord, args.probe) {
        (Some(c), _) => c,
        (None, Some(p)) => dominant_coordinate(&traj, gamma, p)?,
        (None, None) => 0,
    };
    let full = shift_distance_series(&traj, gamma)?;
    let single = coordinate_distance_series(&traj, gamma, coord)?;

    let _ = writeln!(out, "system: {}", sys.name());
    let _ = writeln!(out, "gamma: {gamma} (t = {})", fmt_f64(traj.time_at(gamma) - traj.t0()));
    let _ = writeln!(out, "coordinate: {coord}");
    if let Some(p) = args.probe {
        if p >= full.len() {
            return Err(usage(format!("probe {p} beyond the shifted series (length {})", full.len())));
        }
        let _ = writeln!(out, "dominant coordinate at {p}: {}", dominant_coordinate(&traj, gamma, p)?);
        let _ = writeln!(out, "d_full[{p}] = {}", fmt_f64(full.values[p]));
        let _ = writeln!(out, "d_coord[{p}] = {}", fmt_f64(single.values[p]));
    }

    if let Some(path) = &args.csv {
        let mut csv = String::from("t,d_full,d_coord\n");
        for (i, (f, c)) in full.values.iter().zip(&single.values).enumerate() {
            let _ = writeln!(csv, "{},{},{}", fmt_f64(traj.time_at(i)), fmt_f64(*f), fmt_f64(*c));
        }
        write_file(path, &csv)?;
    }

    let eps0 = args.sys.eps0.or(sys.definition.eps0);
    if let (Some(eps0), Some(upto)) = (eps0, args.upto) {
        let series = match args.exceed_on {
            SeriesKind::Coord => &single,
            SeriesKind::Full => &full,
        };
        let hits = exceedances(series, eps0, upto);
        let _ = writeln!(out, "exceedances above {} before {upto}: {}", fmt_f64(eps0), hits.len());
        let mut csv = String::from("index,distance\n");
        for (i, d) in &hits {
            let _ = writeln!(csv, "{i},{}", fmt_f64(*d));
        }
        match &args.exceedances {
            Some(path) => write_file(path, &csv)?,
            None => out.push_str(&csv),
        }
    } else if args.exceedances.is_some() {
        return Err(usage("--exceedances needs --upto and an eps0"));
    }
    Ok(EXIT_OK)
}

fn cmd_closeness(args: &ClosenessArgs, out: &mut String) -> Result<i32, CliError> {
    let sys = resolve_system(&args.sys)?;
    let h = grid_spacing(&sys, args.sys.dt)?;
    let gamma = resolve_gamma(&args.shift, h)?;
    let (start, end) = match args.window[..] {
        [a, b] => (a, b),
        _ => return Err(usage("--window takes two indices, `start,end`")),
    };
    if start > end {
        return Err(usage(format!("empty window {start},{end}")));
    }
    let steps = args.sys.horizon.unwrap_or(gamma + end);
    let traj = generate(&sys, h, steps)?;
    let series = match args.coord {
        Some(c) => coordinate_distance_series(&traj, gamma, c)?,
        None => shift_distance_series(&traj, gamma)?,
    };
    let report = closeness_intervals_with_min(&series, args.threshold, start..=end, args.min_points)?;

    let mut csv = String::from("kind,start,end,start_time,end_time,max_distance\n");
    for &(a, b) in &report.intervals {
        let m = series.values[a..=b].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let _ = writeln!(
            csv,
            "interval,{a},{b},{},{},{}",
            fmt_f64(traj.time_at(a)),
            fmt_f64(traj.time_at(b)),
            fmt_f64(m)
        );
    }
    let _ = writeln!(csv, "max,,,,,{}", report.max_distance.map(fmt_f64).unwrap_or_default());
    match &args.csv {
        Some(path) => {
            write_file(path, &csv)?;
            let listed: Vec<String> = report.intervals.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
            let _ = writeln!(out, "intervals: {}", listed.join(" "));
            let _ = writeln!(
                out,
                "max distance: {}",
                report.max_distance.map(fmt_f64).unwrap_or_else(|| "none".into())
            );
        }
        None => out.push_str(&csv),
    }
    Ok(EXIT_OK)
}

fn cmd_lyapunov(args: &LyapunovArgs, out: &mut String) -> Result<i32, CliError> {
    let sys = resolve_system(&args.sys)?;
    let h = grid_spacing(&sys, args.sys.dt)?;
    let estimate = match &sys.system {
        DynamicalSystem::Map(m) => largest_lyapunov_map_with(
            m,
            &sys.initial_condition,
            args.steps,
            args.transient.unwrap_or(DEFAULT_MAP_TRANSIENT),
            args.perturbation,
        )?,
        DynamicalSystem::Flow(f) => largest_lyapunov_flow_with(
            f,
            &sys.initial_condition,
            h,
            args.steps,
            args.transient.unwrap_or(DEFAULT_FLOW_TRANSIENT),
            args.renorm,
            args.perturbation,
        )?,
    };
    let unit = if sys.system.is_discrete() { "per iteration" } else { "per time unit" };
    let _ = writeln!(
        out,
        "{}: largest Lyapunov exponent {} {unit} ({} steps after {} transient)",
        sys.name(),
        fmt_f64(estimate.exponent),
        estimate.n_steps,
        estimate.transient_skipped
    );
    let json = serde_json::to_string_pretty(&serde_json::json!({
        "system": sys.name(),
        "h": h,
        "estimate": estimate,
    }))? + "\n";
    match &args.out {
        Some(path) => write_file(path, &json)?,
        None => out.push_str(&json),
    }
    Ok(EXIT_OK)
}
