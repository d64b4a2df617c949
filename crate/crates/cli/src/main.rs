use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};

use cpaa::chebyshev::coefficients_quadrature;
use cpaa::output::{write_coefficients, write_comparison, write_ranks, write_trace};
use cpaa::{
    coefficients, compare, err_bound, generate, load_graph, reference_pagerank, run_cpaa_tracked,
    run_power_tracked, Algorithm, CompareConfig, Error, GraphFormat, LoadOptions, Model,
    PageRankResult, PowerConfig, PowerStop, SolverConfig, StopRule, Tracking, UndirectedGraph,
    DEFAULT_MAX_ROUNDS, REFERENCE_ROUNDS,
};

#[derive(Parser, Debug)]
#[command(name = "cpaa", version, about = "Chebyshev-expansion PageRank for undirected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a seeded synthetic graph as an edge list.
    Gen(GenArgs),
    /// Run one solver and write ranks and trace CSVs.
    Run(RunArgs),
    /// Rounds and time to reach a target error, per algorithm and parallelism.
    Compare(CompareArgs),
    /// Dump the expansion coefficients and error bounds.
    Coeffs(CoeffsArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Ring,
    Star,
    Regular,
    Gnp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Edgelist,
    Mtx,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgoArg {
    Cpaa,
    Power,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    n: usize,
    /// Edge probability for gnp.
    #[arg(long, conflicts_with = "avg_degree")]
    p: Option<f64>,
    /// Expected degree for gnp, p = d / (n - 1).
    #[arg(long)]
    avg_degree: Option<f64>,
    /// Degree for regular.
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list path; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// Defaults to mtx for `.mtx` files and edgelist otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Remove zero-degree vertices and renumber the rest.
    #[arg(long)]
    drop_isolated: bool,
    /// Accept one-sided entries of a general Matrix Market file.
    #[arg(long)]
    symmetrize: bool,
    /// Collapse parallel edges (the default).
    #[arg(long, conflicts_with = "keep_multi")]
    dedup: bool,
    /// Keep parallel edges as multiplicities.
    #[arg(long)]
    keep_multi: bool,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("stop").required(true).args(["eps", "rounds"]))]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "cpaa")]
    algo: AlgoArg,
    #[arg(long, default_value_t = 0.85)]
    c: f64,
    /// Target error bound for cpaa; L1 change tolerance for power.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    rounds: Option<usize>,
    #[arg(long, default_value_t = 1)]
    parallelism: usize,
    /// Round cap for cpaa.
    #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
    max_rounds: usize,
    /// Ranks CSV path.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Trace CSV path.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Add a per-round error column measured against the 210-round reference.
    #[arg(long)]
    track_error: bool,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 0.85)]
    c: f64,
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    /// Comma-separated thread counts.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    parallelism: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
    max_rounds: usize,
    /// Comparison CSV path; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CoeffsArgs {
    #[arg(long, default_value_t = 0.85)]
    c: f64,
    #[arg(long, default_value_t = 20)]
    max_k: usize,
    /// Add a quadrature column and report the largest deviation.
    #[arg(long)]
    quadrature_check: bool,
    /// CSV path; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Coeffs(args) => cmd_coeffs(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numeric() { 2 } else { 1 })
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Opens `path` for writing, or standard output when `None`.
fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Error> {
    match path {
        Some(p) => Ok(Box::new(BufWriter::new(File::create(p).map_err(io_err(p))?))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn emit(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), Error> {
    let mut out = sink(path)?;
    write(&mut out).map_err(io_err(path.unwrap_or(Path::new("<stdout>"))))
}

fn cmd_gen(args: GenArgs) -> Result<(), Error> {
    let model = match args.model {
        ModelArg::Ring => Model::Ring,
        ModelArg::Star => Model::Star,
        ModelArg::Regular => Model::Regular {
            degree: args
                .degree
                .ok_or_else(|| Error::Config("regular needs --degree".into()))?,
        },
        ModelArg::Gnp => {
            let p = match (args.p, args.avg_degree) {
                (Some(p), _) => p,
                (None, Some(d)) if args.n > 1 => d / (args.n - 1) as f64,
                _ => return Err(Error::Config("gnp needs --p or --avg-degree".into())),
            };
            Model::Gnp { p }
        }
    };
    let edges = generate(model, args.n, args.seed)?;
    info!("{} graph: n = {}, m = {}", model.name(), args.n, edges.len());
    emit(args.output.as_deref(), |out| cpaa::generate::write_edge_list(out, &edges))
}

fn load(args: &InputArgs) -> Result<UndirectedGraph, Error> {
    let format = match args.format {
        Some(FormatArg::Edgelist) => GraphFormat::EdgeList,
        Some(FormatArg::Mtx) => GraphFormat::MatrixMarket,
        None if args.input.extension().is_some_and(|e| e == "mtx") => GraphFormat::MatrixMarket,
        None => GraphFormat::EdgeList,
    };
    let opts = LoadOptions {
        keep_multi: args.keep_multi,
        drop_isolated: args.drop_isolated,
        symmetrize: args.symmetrize,
    };
    let loaded = load_graph(&args.input, format, opts)?;
    for w in &loaded.warnings {
        warn!("{}: {w}", args.input.display());
    }
    Ok(loaded.graph)
}

fn cmd_run(args: RunArgs) -> Result<(), Error> {
    let g = load(&args.input)?;
    let reference = if args.track_error {
        Some(reference_pagerank(&g, args.c)?)
    } else {
        None
    };
    let tracking = reference.as_deref().map(|r| Tracking {
        reference: r,
        stop_below: None,
    });
    let result: PageRankResult = match args.algo {
        AlgoArg::Cpaa => {
            let stop = match (args.eps, args.rounds) {
                (Some(eps), _) => StopRule::TargetError(eps),
                (None, Some(r)) => StopRule::Rounds(r),
                (None, None) => unreachable!("clap requires a stop rule"),
            };
            let cfg = SolverConfig::new(args.c, stop)
                .with_parallelism(args.parallelism)
                .with_max_rounds(args.max_rounds);
            run_cpaa_tracked(&g, &cfg, tracking)?
        }
        AlgoArg::Power => {
            let stop = match (args.eps, args.rounds) {
                (Some(tol), _) => PowerStop::Tolerance {
                    tol,
                    max_rounds: REFERENCE_ROUNDS,
                },
                (None, Some(r)) => PowerStop::Rounds(r),
                (None, None) => unreachable!("clap requires a stop rule"),
            };
            let cfg = PowerConfig {
                damping: args.c,
                stop,
                parallelism: args.parallelism,
            };
            run_power_tracked(&g, &cfg, tracking)?
        }
    };
    if let Some(path) = &args.output {
        emit(Some(path), |out| write_ranks(out, &result.ranks))?;
    }
    if let Some(path) = &args.trace {
        emit(Some(path), |out| write_trace(out, &result))?;
    }
    let algo = match args.algo {
        AlgoArg::Cpaa => Algorithm::Cpaa,
        AlgoArg::Power => Algorithm::Power,
    };
    println!(
        "n={} m={} algo={} rounds={} elapsed_ms={:.3}",
        g.n(),
        g.m(),
        algo.name(),
        result.rounds,
        result.elapsed.as_secs_f64() * 1e3
    );
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<(), Error> {
    let g = load(&args.input)?;
    let mut cfg = CompareConfig::new(args.c, args.eps);
    cfg.parallelism = args.parallelism;
    cfg.max_rounds = args.max_rounds;
    let cmp = compare(&g, &cfg)?;
    for row in cmp.rows.iter().filter(|r| !r.reached) {
        warn!(
            "{} with parallelism {} did not reach {} in {} rounds",
            row.algorithm.name(),
            row.parallelism,
            args.eps,
            row.rounds
        );
    }
    emit(args.output.as_deref(), |out| write_comparison(out, &cmp))
}

fn cmd_coeffs(args: CoeffsArgs) -> Result<(), Error> {
    let table = coefficients(args.c, args.max_k)?;
    let bounds = (0..=args.max_k)
        .map(|k| err_bound(args.c, k))
        .collect::<Result<Vec<_>, _>>()?;
    let quadrature = if args.quadrature_check {
        Some(coefficients_quadrature(args.c, args.max_k, 1e-12)?)
    } else {
        None
    };
    emit(args.output.as_deref(), |out| {
        write_coefficients(out, &table, &bounds, quadrature.as_ref())
    })?;
    if let Some(q) = &quadrature {
        let worst = q
            .coeffs
            .iter()
            .zip(&table.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        eprintln!("max quadrature deviation: {worst:.3e}");
    }
    Ok(())
}
