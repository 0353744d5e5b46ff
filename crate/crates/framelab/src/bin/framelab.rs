//! Command line front end.
//!
//! Every subcommand is a thin wrapper over one library call: frames move
//! between commands as JSON files, sweeps land as CSV, and all randomness
//! flows from one seed (`--seed`, else `FRAMELAB_SEED`, else 0).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use framelab::bounds::{frame_bounds_l2, p_frame_bounds, BoundsMethod, FrameBounds};
use framelab::constructions::{build, ConstructionKind, ConstructionSpec};
use framelab::io::{read_frame, serialize_frame, write_frame};
use framelab::metric::magnitude_gap;
use framelab::perturbation::{perturb_frame, perturbation_sweep, PerturbMode, PerturbationPlan};
use framelab::report::{checks_to_csv, checks_to_json, checks_to_table};
use framelab::rng::{resolve_seed, substream};
use framelab::stability::{
    best_stability_estimate, estimate_a0, l4_stability_from_a0, SearchConfig, StabilityMethod,
};
use framelab::suite::{run_suite, SuiteConfig, SUITES};
use framelab::{Frame, Result};

#[derive(Parser)]
#[command(name = "framelab", version, about = "Frame bounds, stability constants, and perturbation checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named frame family and write it as JSON.
    Construct(ConstructArgs),
    /// Frame bounds of a stored frame (p = 2 exact, otherwise searched).
    Bounds(BoundsArgs),
    /// Phase retrieval stability constant of a stored frame.
    Stability(StabilityArgs),
    /// Quartic stability constant a0 of a stored frame.
    A0(A0Args),
    /// Apply a norm-budgeted perturbation and write the perturbed frame.
    Perturb(PerturbArgs),
    /// Sweep perturbation budgets and emit per-trial theorem checks.
    Sweep(SweepArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// Tight frame of C^2 with bound 5: 2k scaled basis copies plus
    /// (1,1), (1,-1), (1,i), (1,-i).
    Example33,
    /// Standard basis plus k scaled copies of a Parseval frame; S = 2I.
    Prop34,
    /// Gaussian vectors scaled by 1/sqrt(m).
    RandomGaussian,
    /// Standard basis.
    Basis,
}

impl From<KindArg> for ConstructionKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Example33 => ConstructionKind::Example33,
            KindArg::Prop34 => ConstructionKind::Prop34,
            KindArg::RandomGaussian => ConstructionKind::RandomGaussian,
            KindArg::Basis => ConstructionKind::Basis,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

impl From<FieldArg> for framelab::Field {
    fn from(field: FieldArg) -> Self {
        match field {
            FieldArg::Real => framelab::Field::Real,
            FieldArg::Complex => framelab::Field::Complex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Independent random directions, equal budget share per vector.
    Isotropic,
    /// Spend the whole budget on one randomly chosen vector.
    SingleVector,
    /// Contract the measurement gap of the worst stability witness.
    Adversarial,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: KindArg,
    /// Copy count for the scaled blocks (example33, prop34).
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Dimension (prop34, random-gaussian, basis); example33 is always 2.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Vector count (random-gaussian).
    #[arg(long, default_value_t = 8)]
    m: usize,
    #[arg(long, value_enum, default_value_t = FieldArg::Complex)]
    field: FieldArg,
    /// Seed; falls back to FRAMELAB_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Frame file to read.
    frame: PathBuf,
    /// Exponent p of the bounds.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Search restarts (searched bounds only).
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct StabilityArgs {
    frame: PathBuf,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Relative width of the certified grid search (dimension 2 only).
    #[arg(long)]
    grid: Option<f64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the full report as JSON instead of a summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct A0Args {
    frame: PathBuf,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the full report as JSON instead of a summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PerturbArgs {
    frame: PathBuf,
    /// Total squared-norm budget for the perturbation.
    #[arg(long)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Isotropic)]
    mode: ModeArg,
    /// Fraction of the budget to spend, in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    fill: f64,
    /// Exponent used to pick the adversarial witness pair.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long)]
    seed: Option<u64>,
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    frame: PathBuf,
    /// Comma separated perturbation budgets.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    eps_list: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Exponent of the stability constant under test.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Relative width of the certified grid search (dimension 2 only).
    #[arg(long)]
    grid: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// CSV output path; a .json sibling with the full rows is written too.
    /// Stdout (CSV only) when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name; `framelab verify help` lists the choices.
    suite: String,
    /// JSON file with suite configuration overrides (missing fields keep
    /// their defaults).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed; overrides the config file. Without --config, FRAMELAB_SEED
    /// is consulted as usual.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the checks as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the checks as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Print only the summary line, not the per-check table.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Construct(args) => run_construct(args),
        Command::Bounds(args) => run_bounds(args),
        Command::Stability(args) => run_stability(args),
        Command::A0(args) => run_a0(args),
        Command::Perturb(args) => run_perturb(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Verify(args) => run_verify(args),
    }
}

fn run_construct(args: ConstructArgs) -> Result<ExitCode> {
    let spec = ConstructionSpec {
        kind: args.kind.into(),
        k: args.k,
        n: args.n,
        m: args.m,
        field: args.field.into(),
        seed: resolve_seed(args.seed),
    };
    let frame = build(&spec)?;
    emit_frame(&frame, args.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn run_bounds(args: BoundsArgs) -> Result<ExitCode> {
    let frame = read_frame(&args.frame)?;
    println!("frame = {}", describe(&frame));
    let bounds = if args.p == 2.0 {
        frame_bounds_l2(&frame)
    } else {
        let mut config = SearchConfig::p_bounds_default();
        config.seed = resolve_seed(args.seed);
        if let Some(restarts) = args.restarts {
            config.restarts = restarts;
        }
        p_frame_bounds(&frame, args.p, &config)?
    };
    print_bounds(&bounds);
    Ok(ExitCode::SUCCESS)
}

fn run_stability(args: StabilityArgs) -> Result<ExitCode> {
    let frame = read_frame(&args.frame)?;
    let config = search_config(args.seed, args.restarts, args.max_iterations, args.grid);
    let report = best_stability_estimate(&frame, args.p, &config)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(ExitCode::SUCCESS);
    }
    println!("frame = {}", describe(&frame));
    println!("p = {}", report.p);
    match report.c_estimate {
        Some(c) => println!("C = {c}"),
        None => println!("C = infinite (phase retrieval fails on the witness)"),
    }
    println!("min ratio = {}", report.min_ratio);
    let method = match report.method {
        StabilityMethod::Grid2D => "grid2d",
        StabilityMethod::Multistart => "multistart",
    };
    println!("method = {method}");
    println!("certified = {}", report.certified);
    if let Some(lower) = report.certified_lower_ratio {
        println!("certified lower ratio = {lower}");
    }
    println!("seed = {}", report.seed);
    println!("restarts = {}", report.restarts);
    println!("witness x = {}", fmt_vector(&report.witness.x));
    println!("witness y = {}", fmt_vector(&report.witness.y));
    Ok(ExitCode::SUCCESS)
}

fn run_a0(args: A0Args) -> Result<ExitCode> {
    let frame = read_frame(&args.frame)?;
    let config = search_config(args.seed, args.restarts, args.max_iterations, None);
    let report = estimate_a0(&frame, &config)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(ExitCode::SUCCESS);
    }
    println!("frame = {}", describe(&frame));
    println!("a0 = {}", report.a0_estimate);
    let upper = frame_bounds_l2(&frame).upper;
    if report.a0_estimate > 0.0 {
        println!(
            "implied quartic stability bound = {}",
            l4_stability_from_a0(report.a0_estimate, upper)?
        );
    }
    println!("seed = {}", report.seed);
    println!("restarts = {}", report.restarts);
    println!("witness x = {}", fmt_vector(&report.witness.x));
    println!("witness y = {}", fmt_vector(&report.witness.y));
    Ok(ExitCode::SUCCESS)
}

fn run_perturb(args: PerturbArgs) -> Result<ExitCode> {
    let frame = read_frame(&args.frame)?;
    let seed = resolve_seed(args.seed);
    let mode = match args.mode {
        ModeArg::Isotropic => PerturbMode::RandomIsotropic,
        ModeArg::SingleVector => PerturbMode::SingleVector,
        ModeArg::Adversarial => {
            let config = SearchConfig { seed, ..SearchConfig::default() };
            let report = best_stability_estimate(&frame, args.p, &config)?;
            PerturbMode::AdversarialWitness(report.witness)
        }
    };
    let plan = PerturbationPlan::new(args.eps, mode).with_fill(args.fill).with_seed(seed);
    let mut rng = substream(seed, 0);
    let perturbed = perturb_frame(&frame, &plan, &mut rng)?;
    let spent: f64 = frame
        .vectors()
        .iter()
        .zip(perturbed.vectors())
        .map(|(x, y)| x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>())
        .sum();
    emit_frame(&perturbed, args.output.as_deref())?;
    if args.output.is_some() {
        println!("mode = {}", plan.mode.name());
        println!("budget = {}", args.eps);
        println!("spent = {spent}");
        if let Some(gap) = witness_gap(&plan.mode, &perturbed, args.p) {
            println!("witness gap after = {gap}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_sweep(args: SweepArgs) -> Result<ExitCode> {
    let frame = read_frame(&args.frame)?;
    let config = search_config(args.seed, args.restarts, args.max_iterations, args.grid);
    let checks = perturbation_sweep(&frame, &args.eps_list, args.trials, args.p, &config)?;
    let csv = checks_to_csv(&checks);
    match &args.output {
        Some(path) => {
            std::fs::write(path, &csv)?;
            std::fs::write(path.with_extension("json"), checks_to_json(&checks))?;
            let hard = checks.iter().filter(|c| c.hard_failure()).count();
            let advisory = checks.iter().filter(|c| c.advisory).count();
            let skipped = checks.iter().filter(|c| !c.precondition_satisfied).count();
            println!(
                "{} checks ({} hard failures, {} advisory, {} out of precondition)",
                checks.len(),
                hard,
                advisory,
                skipped
            );
            println!("csv = {}", path.display());
            println!("json = {}", path.with_extension("json").display());
            if hard > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
        None => {
            print!("{csv}");
            if checks.iter().any(|c| c.hard_failure()) {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    if args.suite == "help" {
        println!("available suites: {}", SUITES.join(", "));
        return Ok(ExitCode::SUCCESS);
    }
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str::<SuiteConfig>(&text)
                .map_err(|e| framelab::FrameError::Parse(e.to_string()))?
        }
        None => SuiteConfig::default().with_seed(resolve_seed(args.seed)),
    };
    if args.config.is_some() {
        if let Some(seed) = args.seed {
            config.seed = seed;
        }
    }
    let result = run_suite(&args.suite, &config)?;
    if let Some(path) = &args.csv {
        std::fs::write(path, checks_to_csv(&result.checks))?;
    }
    if let Some(path) = &args.json {
        std::fs::write(path, checks_to_json(&result.checks))?;
    }
    if !args.quiet {
        print!("{}", checks_to_table(&result.checks));
    }
    let advisory = result.checks.iter().filter(|c| c.advisory).count();
    let skipped = result.checks.iter().filter(|c| !c.precondition_satisfied).count();
    println!(
        "suite {}: {} checks, {} hard failures, {} advisory, {} out of precondition, {:.1}s",
        result.suite,
        result.checks.len(),
        result.hard_failures(),
        advisory,
        skipped,
        result.wall_time.as_secs_f64()
    );
    if result.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

fn search_config(
    seed: Option<u64>,
    restarts: Option<usize>,
    max_iterations: Option<usize>,
    grid: Option<f64>,
) -> SearchConfig {
    let mut config = SearchConfig { seed: resolve_seed(seed), ..SearchConfig::default() };
    if let Some(restarts) = restarts {
        config.restarts = restarts;
    }
    if let Some(max_iterations) = max_iterations {
        config.max_iterations = max_iterations;
    }
    if let Some(grid) = grid {
        config.grid_resolution = grid;
    }
    config
}

fn emit_frame(frame: &Frame, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => write_frame(path, frame),
        None => {
            print!("{}", serialize_frame(frame));
            Ok(())
        }
    }
}

fn print_bounds(bounds: &FrameBounds) {
    println!("p = {}", bounds.p);
    println!("lower = {}", bounds.lower);
    println!("upper = {}", bounds.upper);
    let method = match bounds.method {
        BoundsMethod::ExactEigen => "exact eigenvalues",
        BoundsMethod::Multistart => "multistart search",
        BoundsMethod::Grid => "grid search",
    };
    println!("method = {method}");
    if bounds.method == BoundsMethod::ExactEigen {
        println!("is frame = {}", bounds.is_frame());
    }
}

/// Measurement gap of the adversarial witness on the perturbed frame;
/// None for the random modes, which carry no pair.
fn witness_gap(mode: &PerturbMode, perturbed: &Frame, p: f64) -> Option<f64> {
    match mode {
        PerturbMode::AdversarialWitness(pair) => magnitude_gap(perturbed, &pair.x, &pair.y, p).ok(),
        _ => None,
    }
}

fn describe(frame: &Frame) -> String {
    let label = frame.label().map(|l| format!(" \"{l}\"")).unwrap_or_default();
    format!("{} frame, dim {}, {} vectors{}", frame.field(), frame.dim(), frame.len(), label)
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn fmt_vector(v: &[Complex64]) -> String {
    let parts: Vec<String> = v.iter().map(|&z| fmt_complex(z)).collect();
    format!("[{}]", parts.join(", "))
}
