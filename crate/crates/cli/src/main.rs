//! `consensus`: batch experiments for binary interval consensus.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use consensus_core::experiment::{
    parse_grid, run, Command, Counts, DeltaMethod, ExperimentSpec, Format, GraphSource,
    PlacementChoice,
};
use consensus_core::spectral::DEFAULT_MAX_ENUMERATION_N;
use consensus_core::Execution;

const MAX_N_VAR: &str = "CONSENSUS_MAX_N";

#[derive(Parser, Debug)]
#[command(name = "consensus", version, about = "Simulate and analyse binary interval consensus")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Monte Carlo means of both phases next to the bound and exact value.
    Sim(Opts),
    /// The decay rate δ(Q, α) and a minimising subset.
    Delta(Opts),
    /// Expected-time upper bounds from δ.
    Bounds(Opts),
    /// Bounds, exact first-phase time and dominant terms where known.
    Analytic(Opts),
    /// Empirical survival of both phases on a time grid.
    Survival(Opts),
    /// One simulated row per α in --alpha-grid.
    Sweep(Opts),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphKind {
    Complete,
    Path,
    Cycle,
    Star,
    Er,
    File,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlacementArg {
    Prefix,
    Suffix,
    Random,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Exhaustive,
    ClosedForm,
    Sampled,
    RateBound,
}

#[derive(Args, Debug)]
struct Opts {
    #[arg(long, value_enum)]
    graph: GraphKind,
    /// Number of nodes (not used with --graph file).
    #[arg(long)]
    n: Option<usize>,
    /// Erdős–Rényi density: edge probability c·ln(n)/n.
    #[arg(long)]
    c: Option<f64>,
    /// Edge-list file for --graph file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Seed for Erdős–Rényi sampling (defaults to --seed).
    #[arg(long)]
    graph_seed: Option<u64>,
    #[arg(long, requires = "s1", conflicts_with = "alpha")]
    s0: Option<usize>,
    #[arg(long, requires = "s0")]
    s1: Option<usize>,
    /// Majority fraction; s0 = ceil(alpha·n).
    #[arg(long)]
    alpha: Option<f64>,
    /// α values as start:stop:step (sweep only).
    #[arg(long)]
    alpha_grid: Option<String>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path, or `csv`/`json` to write that format to stdout.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum, default_value = "prefix")]
    placement: PlacementArg,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Random subsets for --method sampled.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Survival time grid as start:stop:step.
    #[arg(long)]
    grid: Option<String>,
    /// Simulation time limit per trial.
    #[arg(long)]
    t_max: Option<f64>,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::InvalidValue, msg).exit()
}

fn graph_source(o: &Opts) -> GraphSource {
    let n = || o.n.unwrap_or_else(|| usage_error("--n is required for this graph"));
    match o.graph {
        GraphKind::Complete => GraphSource::Complete { n: n() },
        GraphKind::Path => GraphSource::Path { n: n() },
        GraphKind::Cycle => GraphSource::Cycle { n: n() },
        GraphKind::Star => GraphSource::Star { n: n() },
        GraphKind::Er => GraphSource::Er {
            n: n(),
            c: o.c.unwrap_or_else(|| usage_error("--graph er needs --c")),
            seed: o.graph_seed.unwrap_or(o.seed),
        },
        GraphKind::File => GraphSource::File {
            path: o
                .file
                .clone()
                .unwrap_or_else(|| usage_error("--graph file needs --file <path>")),
        },
    }
}

fn max_n() -> usize {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(m) => {
                eprintln!(
                    "warning: {MAX_N_VAR}={m} overrides the enumeration guard of \
                     {DEFAULT_MAX_ENUMERATION_N}; exhaustive δ is exponential in n"
                );
                m
            }
            Err(_) => usage_error(format!("{MAX_N_VAR} must be a non-negative integer, got `{v}`")),
        },
        Err(_) => DEFAULT_MAX_ENUMERATION_N,
    }
}

/// Where output goes and in which format.
fn destination(command: Command, o: &Opts) -> (Option<PathBuf>, Format) {
    let explicit = o.format.map(|f| match f {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    });
    let default = if command == Command::Delta { Format::Json } else { Format::Csv };
    match o.out.as_deref() {
        None => (None, explicit.unwrap_or(default)),
        Some("csv") => (None, Format::Csv),
        Some("json") => (None, Format::Json),
        Some(path) => {
            let by_ext = match Path::new(path).extension().and_then(|e| e.to_str()) {
                Some("json") => Format::Json,
                Some("csv") => Format::Csv,
                _ => default,
            };
            (Some(PathBuf::from(path)), explicit.unwrap_or(by_ext))
        }
    }
}

fn spec(command: Command, o: &Opts) -> ExperimentSpec {
    let counts = match (o.alpha, o.s0, o.s1) {
        (Some(a), None, None) => Counts::Alpha(a),
        (None, Some(s0), Some(s1)) => Counts::Exact { s0, s1 },
        _ if command == Command::Sweep => Counts::Alpha(0.75),
        _ => usage_error("give either --alpha or both --s0 and --s1"),
    };
    let alpha_grid = match (&o.alpha_grid, command) {
        (Some(g), Command::Sweep) => parse_grid(g).unwrap_or_else(|e| usage_error(e)),
        (None, Command::Sweep) => usage_error("sweep needs --alpha-grid start:stop:step"),
        (Some(_), _) => usage_error("--alpha-grid is only used by sweep"),
        (None, _) => Vec::new(),
    };
    let grid = match &o.grid {
        Some(g) => parse_grid(g).unwrap_or_else(|e| usage_error(e)),
        None => Vec::new(),
    };
    if let Some(t) = o.t_max {
        if t.is_nan() || t <= 0.0 {
            usage_error("--t-max must be positive");
        }
    }
    ExperimentSpec {
        alpha_grid,
        trials: o.trials,
        seed: o.seed,
        placement: match o.placement {
            PlacementArg::Prefix => PlacementChoice::Prefix,
            PlacementArg::Suffix => PlacementChoice::Suffix,
            PlacementArg::Random => PlacementChoice::Random,
        },
        method: match o.method {
            MethodArg::Auto => DeltaMethod::Auto,
            MethodArg::Exhaustive => DeltaMethod::Exhaustive,
            MethodArg::ClosedForm => DeltaMethod::ClosedForm,
            MethodArg::Sampled => DeltaMethod::Sampled,
            MethodArg::RateBound => DeltaMethod::RateBound,
        },
        samples: o.samples,
        t_max: o.t_max,
        grid,
        max_n: max_n(),
        execution: if o.sequential { Execution::Sequential } else { Execution::Parallel },
        ..ExperimentSpec::new(command, graph_source(o), counts)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match &cli.command {
        Sub::Sim(o) => (Command::Sim, o),
        Sub::Delta(o) => (Command::Delta, o),
        Sub::Bounds(o) => (Command::Bounds, o),
        Sub::Analytic(o) => (Command::Analytic, o),
        Sub::Survival(o) => (Command::Survival, o),
        Sub::Sweep(o) => (Command::Sweep, o),
    };
    let spec = spec(command, opts);
    let (path, format) = destination(command, opts);

    let text = match run(&spec) {
        Ok(report) => report.render(format),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    match path {
        None => print!("{text}"),
        Some(p) => {
            if let Err(e) = std::fs::write(&p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::FAILURE;
            }
        }
    }
    ExitCode::SUCCESS
}
