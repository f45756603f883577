//! Command-line front end: star-network sweeps, bound audits over seeded
//! random suites, and correlation reports for states read from disk.

pub mod format;
pub mod manifest;
pub mod plot;
pub mod statefile;
pub mod suites;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qcorr::starsim::{self, linear_grid};
use qcorr::{Bipartition, OptimizerSettings, Side, SweepRow};

use crate::format::sig;
use crate::manifest::RunManifest;
use crate::suites::Suite;

#[derive(Debug, Parser)]
#[command(name = "qcorr", version, about = "Classical and quantum correlation bounds for small quantum systems")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed of the random suites
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Grid points per Bloch angle in the measurement search
    #[arg(long, global = true, default_value_t = 24)]
    pub grid: usize,
    /// Grid points refined by the simplex search
    #[arg(long, global = true, default_value_t = 5)]
    pub starts: usize,
    /// Simplex diameter at which refinement stops
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Worker threads (defaults to the number of CPUs)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

impl GlobalOpts {
    pub fn settings(&self) -> OptimizerSettings {
        OptimizerSettings { grid: self.grid, starts: self.starts, tol: self.tol, ..OptimizerSettings::default() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the star network over environment sizes and gate parameters
    Sweep(SweepArgs),
    /// Audit one family of bounds over a seeded random suite
    Audit(AuditArgs),
    /// Report I, J, D and E of a state file
    State(StateArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Environment sizes, comma separated
    #[arg(long = "n", value_delimiter = ',', default_values_t = starsim::DEFAULT_N)]
    pub n_list: Vec<usize>,
    #[arg(long, default_value_t = 0.0)]
    pub a_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub a_step: f64,
    /// CSV output path
    #[arg(long)]
    pub out: PathBuf,
    /// Optional SVG plot path
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// CSV output path
    #[arg(long)]
    pub out: PathBuf,
    /// Audit this state file once instead of sampling random states
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasuredSide {
    A,
    B,
}

impl From<MeasuredSide> for Side {
    fn from(m: MeasuredSide) -> Side {
        match m {
            MeasuredSide::A => Side::A,
            MeasuredSide::B => Side::B,
        }
    }
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// JSON state file with `dims` and `matrix` or `vector`
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Subsystem split such as `0|1` or `0,1|2`
    #[arg(long, default_value = "0|1")]
    pub split: String,
    /// Side on which the measurement acts
    #[arg(long, value_enum, default_value = "b")]
    pub measure: MeasuredSide,
    /// Optional CSV output path
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of a command that completed without usage or input errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Violations(usize),
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Violations(_) => 1,
        }
    }
}

pub fn run(cli: Cli) -> anyhow::Result<Outcome> {
    if let Some(n) = cli.global.threads {
        // a pool may already exist when called repeatedly from tests
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match &cli.command {
        Command::Sweep(args) => cmd_sweep(&cli.global, args),
        Command::Audit(args) => cmd_audit(&cli.global, args),
        Command::State(args) => cmd_state(&cli.global, args),
    }
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

pub const SWEEP_HEADER: &str = "n,a,h_s,avg_eof,avg_classical,avg_discord,delta,bound,delta_defined";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    let opt = |v: Option<f64>| v.map(sig).unwrap_or_default();
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n_env,
            sig(r.a),
            sig(r.h_s),
            sig(r.avg_eof),
            sig(r.avg_classical),
            sig(r.avg_discord),
            opt(r.delta),
            opt(r.bound),
            r.delta.is_some()
        ));
    }
    out
}

pub fn cmd_sweep(global: &GlobalOpts, args: &SweepArgs) -> anyhow::Result<Outcome> {
    let start = Instant::now();
    if args.n_list.is_empty() {
        bail!("--n needs at least one environment size");
    }
    let grid = linear_grid(args.a_min, args.a_max, args.a_step)?;
    let rows = starsim::run_sweep(&args.n_list, &grid, &global.settings())?;
    write_file(&args.out, &sweep_csv(&rows))?;
    let mut outputs = vec![args.out.clone()];
    if let Some(plot) = &args.plot {
        write_file(plot, &plot::render_svg(&rows))?;
        outputs.push(plot.clone());
    }
    let violations = rows.iter().filter(|r| !r.eof_audit().satisfied || !r.discord_audit().satisfied).count();
    let params = json!({
        "n": args.n_list, "a_min": args.a_min, "a_max": args.a_max, "a_step": args.a_step,
        "grid": global.grid, "starts": global.starts, "tol": global.tol,
    });
    RunManifest::new("sweep", params, global.seed, start.elapsed(), outputs).write_beside(&args.out)?;
    eprintln!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(if violations == 0 { Outcome::Pass } else { Outcome::Violations(violations) })
}

pub fn cmd_audit(global: &GlobalOpts, args: &AuditArgs) -> anyhow::Result<Outcome> {
    let start = Instant::now();
    let samples = match &args.input {
        Some(path) => vec![suites::sample_from_file(args.suite, &statefile::read_state(path)?)?],
        None => suites::samples(args.suite, args.trials, global.seed),
    };
    let rows = suites::run_suite(args.suite, &samples, &global.settings())?;
    write_file(&args.out, &format::audit_csv(&rows))?;
    let failed = rows.iter().filter(|r| !r.satisfied).count();
    let params = json!({
        "suite": args.suite.name(), "trials": samples.len(),
        "input": args.input.as_ref().map(|p| p.display().to_string()),
        "grid": global.grid, "starts": global.starts, "tol": global.tol,
    });
    RunManifest::new("audit", params, global.seed, start.elapsed(), vec![args.out.clone()]).write_beside(&args.out)?;
    eprintln!("{}: {} audits, {} failed", args.suite.name(), rows.len(), failed);
    Ok(if failed == 0 { Outcome::Pass } else { Outcome::Violations(failed) })
}

/// Parses `0,1|2` into the two subsystem lists.
pub fn parse_split(split: &str) -> anyhow::Result<(Vec<usize>, Vec<usize>)> {
    let (a, b) = split.split_once('|').context("split must look like `0|1`")?;
    let list = |s: &str| -> anyhow::Result<Vec<usize>> {
        s.split(',').map(|t| t.trim().parse::<usize>().with_context(|| format!("bad subsystem index `{t}`"))).collect()
    };
    Ok((list(a)?, list(b)?))
}

pub fn cmd_state(global: &GlobalOpts, args: &StateArgs) -> anyhow::Result<Outcome> {
    let start = Instant::now();
    let state = statefile::read_state(&args.input)?;
    let (a, b) = parse_split(&args.split)?;
    let bip = Bipartition::new(state.density(), &a, &b)?;
    let measured: Side = args.measure.into();
    let record = qcorr::quantum_discord(&bip, measured, &global.settings())
        .with_context(|| format!("measured side {:?} must be a single qubit", args.measure))?;
    let side = if measured == Side::A { "A" } else { "B" };
    let mut table = vec![
        ("mutual_information".to_string(), record.mutual_info),
        (format!("classical_correlations_{side}"), record.classical),
        (format!("discord_{side}"), record.discord),
        ("entropy_a".to_string(), record.entropy_a),
    ];
    if let Some(e) = record.eof {
        table.push(("entanglement_of_formation".to_string(), e));
    }
    let width = table.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &table {
        println!("{k:<width$}  {}", sig(*v));
    }
    if let Some(out) = &args.out {
        let mut csv = String::from("quantity,value\n");
        for (k, v) in &table {
            csv.push_str(&format!("{k},{}\n", sig(*v)));
        }
        write_file(out, &csv)?;
        let params = json!({ "input": args.input.display().to_string(), "split": args.split, "measure": side });
        RunManifest::new("state", params, global.seed, start.elapsed(), vec![out.clone()]).write_beside(out)?;
    }
    Ok(Outcome::Pass)
}
