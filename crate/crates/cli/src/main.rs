//! `hingelab`: command-line front end for the hinge/line-incidence
//! library. Every subcommand reads exact inputs, computes in exact
//! arithmetic, and writes one JSON report (or a point-set text file for
//! `gen`) to `--out` or stdout.
//!
//! Exit codes: 0 success; 1 invariant failure (a `verify` check failed,
//! or an internal cross-check tripped); 2 usage, I/O, or parse errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hinge_core::fit::read_series;
use hinge_core::geom::{DistanceIndex, PointSet};
use hinge_core::hinge::{hinge_stats_opts, HingeOptions, TripleConvention};
use hinge_core::incidence::RichnessOptions;
use hinge_core::io::{load_point_set, write_point_set};
use hinge_core::klein::{intersection_profile, IntersectionProfile, ProfileOptions};
use hinge_core::limits::Deadline;
use hinge_core::report::{
    fit_report, hinge_report, incidence_report_full, incidence_report_restricted, lines_report,
    points3d_report, quad_report, sweep_report, to_pretty_json, verify_report,
};
use hinge_core::sweep::{fit_groups, run_experiment, GeneratorConfig, SweepConfig};
use hinge_core::verify::{verify, VerifyLevel};

#[derive(Parser)]
#[command(
    name = "hingelab",
    version,
    about = "Exact hinge statistics and 3-space line-incidence experiments",
    propagate_version = true
)]
struct Cli {
    /// Worker threads (default: all cores). Every reported value is
    /// identical for any thread count.
    #[arg(long, global = true, value_name = "T")]
    threads: Option<usize>,

    /// Wall-clock budget in seconds; work past it aborts with an error.
    #[arg(long, global = true, value_name = "S")]
    limit_seconds: Option<f64>,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point family in the point-set text format.
    Gen(GenArgs),
    /// Hinge statistics: distinct hinge count, energy, histogram.
    Hinges(HingesArgs),
    /// Per-line meet counts ν over the lifted n² lines.
    Lines(InputArgs),
    /// Pairwise-intersection profile in 3-space with P_k / L_{k,t} tables.
    Points3d(Points3dArgs),
    /// Exact incidence count, plane richness s, and bound evaluation.
    Incidence(IncidenceArgs),
    /// Count multiplicative quadruples ab = cd with entries in 1..=N.
    Quadruples(QuadruplesArgs),
    /// Fit C·n^a·(ln n)^b models to a measurement series CSV.
    Fit(FitArgs),
    /// Run a configured sweep: generate, measure, checkpoint, fit.
    Sweep(SweepArgs),
    /// Recompute every statistic by an independent route and cross-check.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Grid,
    Random,
    TwoCircles,
    Collinear,
}

#[derive(Args)]
struct GenArgs {
    /// Which family to generate.
    #[arg(long, value_enum)]
    family: Family,
    /// Grid side length (grid only; n = m²).
    #[arg(long)]
    m: Option<u32>,
    /// Point count (random, two-circles, collinear).
    #[arg(long)]
    n: Option<u32>,
    /// First circle radius, e.g. "1" or "5/2" (two-circles; default 1).
    #[arg(long)]
    r1: Option<String>,
    /// Second circle radius (two-circles; default 2).
    #[arg(long)]
    r2: Option<String>,
    /// Coordinate bound: points lie in [-B, B]² (random; default 1000).
    #[arg(long, value_name = "B")]
    bound: Option<u32>,
    /// PRNG seed (random; default 0).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct InputArgs {
    /// Point-set text file to read.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Args)]
struct HingesArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Count only triples of three pairwise-distinct points.
    #[arg(long)]
    distinct_points: bool,
    /// Omit the per-key histogram from the report.
    #[arg(long)]
    no_histogram: bool,
}

#[derive(Args)]
struct Points3dArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Largest point count accepted before refusing (the profile costs
    /// ~n⁴ intersections).
    #[arg(long, value_name = "N", default_value_t = 128)]
    max_points: usize,
}

#[derive(Args)]
struct IncidenceArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Restrict to the dyadic point bucket P_k (power of two; needs --t).
    #[arg(long, requires = "t")]
    k: Option<u64>,
    /// Restrict to lines supporting ≥ t points of P_k (power of two;
    /// needs --k).
    #[arg(long, requires = "k")]
    t: Option<u64>,
    /// Largest point count accepted for the intersection profile.
    #[arg(long, value_name = "N", default_value_t = 128)]
    max_points: usize,
    /// Largest line-family size accepted for the plane-richness scan.
    #[arg(long, value_name = "L", default_value_t = 4096)]
    max_lines: usize,
}

#[derive(Args)]
struct QuadruplesArgs {
    /// Entries range over 1..=N.
    #[arg(long = "N", value_name = "N")]
    n: u64,
}

#[derive(Args)]
struct FitArgs {
    /// CSV with header family,statistic,n,value,runtime_s.
    #[arg(long, value_name = "FILE")]
    series: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON sweep configuration.
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    /// Cross-checks with brute-force oracles up to n ≤ 64.
    Fast,
    /// Adds the n⁴/n⁶-scale recounts; capped at n ≤ 10.
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// How expensive an oracle battery to run.
    #[arg(long, value_enum, default_value_t = Level::Fast)]
    level: Level,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: could not configure the thread pool: {err}");
            return ExitCode::from(2);
        }
    }
    let deadline = match cli.limit_seconds {
        Some(s) if s > 0.0 => Deadline::after_seconds(s),
        Some(_) => {
            eprintln!("error: --limit-seconds must be positive");
            return ExitCode::from(2);
        }
        None => Deadline::none(),
    };

    match run(&cli, deadline) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code_for(&err)
        }
    }
}

/// 1 when the failure means a mathematical invariant broke mid-run;
/// 2 for everything operational (arguments, files, formats, limits).
fn exit_code_for(err: &anyhow::Error) -> ExitCode {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<hinge_core::Error>() {
            if matches!(
                e,
                hinge_core::Error::CorruptStats(_) | hinge_core::Error::Internal(_)
            ) {
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::from(2)
}

fn run(cli: &Cli, deadline: Deadline) -> Result<ExitCode> {
    match &cli.command {
        Command::Gen(args) => cmd_gen(cli, args),
        Command::Hinges(args) => cmd_hinges(cli, args, deadline),
        Command::Lines(args) => cmd_lines(cli, args, deadline),
        Command::Points3d(args) => cmd_points3d(cli, args, deadline),
        Command::Incidence(args) => cmd_incidence(cli, args, deadline),
        Command::Quadruples(args) => cmd_quadruples(cli, args),
        Command::Fit(args) => cmd_fit(cli, args),
        Command::Sweep(args) => cmd_sweep(cli, args, deadline),
        Command::Verify(args) => cmd_verify(cli, args, deadline),
    }
}

/// Writes a finished report to `--out`, or stdout when absent.
fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_input(args: &InputArgs) -> Result<PointSet> {
    load_point_set(&args.input).with_context(|| format!("reading {}", args.input.display()))
}

fn build_profile(
    set: &PointSet,
    max_points: usize,
    deadline: Deadline,
) -> Result<IntersectionProfile> {
    let options = ProfileOptions {
        max_points,
        deadline,
    };
    Ok(intersection_profile(set, &options)?)
}

fn cmd_gen(cli: &Cli, args: &GenArgs) -> Result<ExitCode> {
    let require_n = |what: &str| {
        args.n
            .with_context(|| format!("--family {what} requires --n"))
    };
    let forbid = |absent: &[(&str, bool)], family: &str| -> Result<()> {
        for (name, given) in absent {
            if *given {
                bail!("--{name} does not apply to --family {family}");
            }
        }
        Ok(())
    };

    let config = match args.family {
        Family::Grid => {
            forbid(
                &[
                    ("n", args.n.is_some()),
                    ("r1", args.r1.is_some()),
                    ("r2", args.r2.is_some()),
                    ("bound", args.bound.is_some()),
                    ("seed", args.seed.is_some()),
                ],
                "grid",
            )?;
            let m = args.m.context("--family grid requires --m")?;
            GeneratorConfig::Grid { m }
        }
        Family::Random => {
            forbid(
                &[
                    ("m", args.m.is_some()),
                    ("r1", args.r1.is_some()),
                    ("r2", args.r2.is_some()),
                ],
                "random",
            )?;
            GeneratorConfig::Random {
                n: require_n("random")?,
                bound: args.bound.unwrap_or(1000),
                seed: args.seed.unwrap_or(0),
            }
        }
        Family::TwoCircles => {
            forbid(
                &[
                    ("m", args.m.is_some()),
                    ("bound", args.bound.is_some()),
                    ("seed", args.seed.is_some()),
                ],
                "two-circles",
            )?;
            GeneratorConfig::TwoCircles {
                n: require_n("two-circles")?,
                r1: args.r1.clone().unwrap_or_else(|| "1".to_string()),
                r2: args.r2.clone().unwrap_or_else(|| "2".to_string()),
            }
        }
        Family::Collinear => {
            forbid(
                &[
                    ("m", args.m.is_some()),
                    ("r1", args.r1.is_some()),
                    ("r2", args.r2.is_some()),
                    ("bound", args.bound.is_some()),
                    ("seed", args.seed.is_some()),
                ],
                "collinear",
            )?;
            GeneratorConfig::Collinear {
                n: require_n("collinear")?,
            }
        }
    };

    let set = config.build()?;
    let comment = format!("{} n={}", config.family(), set.len());
    let mut buf = Vec::new();
    write_point_set(&mut buf, &set, Some(&comment))?;
    emit(&cli.out, std::str::from_utf8(&buf).expect("ascii output"))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_hinges(cli: &Cli, args: &HingesArgs, deadline: Deadline) -> Result<ExitCode> {
    let set = load_input(&args.input)?;
    let convention = if args.distinct_points {
        TripleConvention::distinct_points()
    } else {
        TripleConvention::all_triples()
    };
    let options = HingeOptions {
        materialize_histogram: !args.no_histogram,
        deadline,
    };
    let stats = hinge_stats_opts(&set, convention, &options)?;
    emit(&cli.out, &to_pretty_json(&hinge_report(&stats)?)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_lines(cli: &Cli, args: &InputArgs, deadline: Deadline) -> Result<ExitCode> {
    let set = load_input(args)?;
    let index = DistanceIndex::build(&set);
    let report = lines_report(&set, &index, deadline)?;
    emit(&cli.out, &to_pretty_json(&report)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_points3d(cli: &Cli, args: &Points3dArgs, deadline: Deadline) -> Result<ExitCode> {
    let set = load_input(&args.input)?;
    let profile = build_profile(&set, args.max_points, deadline)?;
    emit(&cli.out, &to_pretty_json(&points3d_report(&profile)?)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_incidence(cli: &Cli, args: &IncidenceArgs, deadline: Deadline) -> Result<ExitCode> {
    let set = load_input(&args.input)?;
    let profile = build_profile(&set, args.max_points, deadline)?;
    let richness = RichnessOptions {
        max_lines: args.max_lines,
        deadline,
    };
    let report = match (args.k, args.t) {
        (Some(k), Some(t)) => incidence_report_restricted(&profile, k, t, &richness)?,
        _ => incidence_report_full(&profile, &richness)?,
    };
    emit(&cli.out, &to_pretty_json(&report)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_quadruples(cli: &Cli, args: &QuadruplesArgs) -> Result<ExitCode> {
    emit(&cli.out, &to_pretty_json(&quad_report(args.n)?)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_fit(cli: &Cli, args: &FitArgs) -> Result<ExitCode> {
    let file = std::fs::File::open(&args.series)
        .with_context(|| format!("reading {}", args.series.display()))?;
    let rows = read_series(file)?;
    if rows.is_empty() {
        bail!("{} holds no series rows", args.series.display());
    }
    let (fits, skipped) = fit_groups(&rows);
    emit(&cli.out, &to_pretty_json(&fit_report(fits, skipped))?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(cli: &Cli, args: &SweepArgs, deadline: Deadline) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let config: SweepConfig = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", args.config.display()))?;
    let outcome = run_experiment(&config, deadline)?;
    emit(&cli.out, &to_pretty_json(&sweep_report(outcome))?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs, deadline: Deadline) -> Result<ExitCode> {
    let set = load_input(&args.input)?;
    let level = match args.level {
        Level::Fast => VerifyLevel::Fast,
        Level::Full => VerifyLevel::Full,
    };
    let report = verify(&set, level, deadline)?;
    emit(&cli.out, &to_pretty_json(&verify_report(&report))?)?;
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        for failure in report.failures() {
            match &failure.witness {
                Some(witness) => eprintln!("failed check: {} ({witness})", failure.name),
                None => eprintln!("failed check: {}", failure.name),
            }
        }
        Ok(ExitCode::from(1))
    }
}
