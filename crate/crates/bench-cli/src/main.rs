//! `nslds`: solve single instances, run benchmark suites, validate files.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bench_cli::{
    emit, run_suite, run_with_solution, Algo, BenchReport, OutputFormat, Problem, RunSpec, VarFlag,
};

#[derive(Parser)]
#[command(
    name = "nslds",
    about = "Heuristic tree search (LDS and nested search) over TSPTW, snake-in-the-box, \
             Graeco-Latin squares and RNA inverse folding",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one search and print the result.
    Solve(SolveArgs),
    /// Run a suite of specs from a JSON manifest (an array of run specs).
    Suite(SuiteArgs),
    /// Validate an instance file without running a search.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

impl From<OnOff> for bool {
    fn from(flag: OnOff) -> bool {
        flag == OnOff::On
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    level: u32,
    /// Instance file (tsptw, rna).
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Puzzle name within an rna puzzle file.
    #[arg(long)]
    name: Option<String>,
    /// Wall-clock limit in seconds (default: NSLDS_TIMEOUT_SECONDS, else unlimited).
    #[arg(long)]
    max_seconds: Option<f64>,
    /// Playout step budget (0 or absent = unlimited).
    #[arg(long)]
    step_budget: Option<u64>,
    /// Latin: variable ordering heuristic.
    #[arg(long, value_enum)]
    var: Option<VarFlag>,
    /// Latin: symmetry breaking.
    #[arg(long, value_enum)]
    sym: Option<OnOff>,
    /// Latin: stronger propagation.
    #[arg(long, value_enum)]
    mac: Option<OnOff>,
    /// Snake: hypercube dimension.
    #[arg(long)]
    dimension: Option<u8>,
    /// Snake: comma-separated vertex list to resume from.
    #[arg(long)]
    start_path: Option<String>,
    /// Latin: square order.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Args)]
struct SuiteArgs {
    /// JSON manifest: an array of run specs.
    #[arg(long)]
    manifest: PathBuf,
    /// Worker threads for independent runs.
    #[arg(long, default_value_t = 1)]
    parallelism: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    #[arg(long)]
    instance: PathBuf,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Solve(args) => solve(args),
        Command::Suite(args) => suite(args),
        Command::Check(args) => check(args),
    }
}

fn solve(args: SolveArgs) -> ExitCode {
    let mut spec = RunSpec::new(args.problem, args.algo, args.level);
    spec.instance = args.instance.map(|p| p.display().to_string());
    spec.name = args.name;
    spec.max_seconds = args.max_seconds;
    spec.step_budget = args.step_budget;
    spec.var = args.var;
    spec.sym = args.sym.map(bool::from);
    spec.mac = args.mac.map(bool::from);
    spec.dimension = args.dimension;
    spec.start_path = args.start_path;
    spec.order = args.order;
    if let Err(message) = spec.validate() {
        eprintln!("error: {message}");
        return ExitCode::from(2);
    }
    let (row, solution) = run_with_solution(&spec);
    if let Some(message) = &row.error {
        eprintln!("error: {message}");
        return ExitCode::FAILURE;
    }
    print!("{}", emit(&BenchReport { rows: vec![row] }, args.format));
    if let Some(solution) = solution {
        println!("{solution}");
    }
    ExitCode::SUCCESS
}

fn suite(args: SuiteArgs) -> ExitCode {
    let text = match std::fs::read_to_string(&args.manifest) {
        Ok(text) => text,
        Err(error) => {
            eprintln!("error: cannot read {}: {error}", args.manifest.display());
            return ExitCode::from(2);
        }
    };
    let specs: Vec<RunSpec> = match serde_json::from_str(&text) {
        Ok(specs) => specs,
        Err(error) => {
            eprintln!("error: invalid manifest {}: {error}", args.manifest.display());
            return ExitCode::from(2);
        }
    };
    let report = run_suite(&specs, args.parallelism);
    let document = emit(&report, args.format);
    match &args.output {
        Some(path) => {
            if let Err(error) = std::fs::write(path, &document) {
                eprintln!("error: cannot write {}: {error}", path.display());
                return ExitCode::FAILURE;
            }
        }
        None => print!("{document}"),
    }
    for row in report.rows.iter().filter(|r| r.is_error()) {
        eprintln!("error: {} {}({}): {}", row.instance, row.algo, row.level,
            row.error.as_deref().unwrap_or("unknown"));
    }
    if report.has_errors() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn check(args: CheckArgs) -> ExitCode {
    let path = args.instance.display();
    let text = match std::fs::read_to_string(&args.instance) {
        Ok(text) => text,
        Err(error) => {
            eprintln!("error: cannot read {path}: {error}");
            return ExitCode::FAILURE;
        }
    };
    match args.problem {
        Problem::Tsptw => match tsptw::load_tsptw(&text) {
            Ok(instance) => {
                println!("ok: {} cities", instance.len());
                ExitCode::SUCCESS
            }
            Err(error) => {
                eprintln!("error: {path}: {error}");
                ExitCode::FAILURE
            }
        },
        Problem::Rna => match rna::load_puzzle_file(&text) {
            Ok(puzzles) => {
                println!("ok: {} puzzles", puzzles.len());
                ExitCode::SUCCESS
            }
            Err(error) => {
                eprintln!("error: {path}: {error}");
                ExitCode::FAILURE
            }
        },
        other => {
            eprintln!("error: check supports file-backed problems (tsptw, rna), not {other}");
            ExitCode::from(2)
        }
    }
}
