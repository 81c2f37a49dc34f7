use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Parser;

use submodkit::bench::{compare_on_features, size_sweep};
use submodkit::datasets::benchmark_blobs;
use submodkit::functions::Concave;
use submodkit::kernel::io::read_features;
use submodkit::kernel::Metric;
use submodkit::{OptimizeSpec, OptimizerKind};
use submodkit_cli::{execution, run_selection, FunctionKind, KernelMode, RunConfig};

/// Select a subset by greedy maximization of a submodular function.
#[derive(Debug, Parser)]
#[command(name = "submodkit", version)]
struct Args {
    /// Function to maximize (fl, gc, logdet, dsum, dmin, sc, psc, fb, flvmi,
    /// flqmi, flcg, flcmi, gcmi, gccg, logdetmi, logdetcg, logdetcmi, com,
    /// scmi, sccg, sccmi, pscmi, psccg, psccmi)
    #[arg(long, default_value = "fl")]
    function: FunctionKind,

    /// Kernel storage: dense, sparse or clustered
    #[arg(long, default_value = "dense")]
    mode: KernelMode,

    /// euclidean or cosine
    #[arg(long, default_value = "euclidean")]
    metric: Metric,

    #[arg(long)]
    k_neighbors: Option<usize>,

    #[arg(long)]
    clusters: Option<usize>,

    /// Number of elements to select (benchmarks default to 250)
    #[arg(long)]
    budget: Option<usize>,

    /// naive, lazy, stochastic or lazier
    #[arg(long, default_value = "naive")]
    optimizer: OptimizerKind,

    /// Sampling parameter for stochastic and lazier
    #[arg(long)]
    epsilon: Option<f64>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, default_value_t = 0.5)]
    lambda: f64,

    #[arg(long, default_value_t = 1.0)]
    eta: f64,

    #[arg(long, default_value_t = 1.0)]
    nu: f64,

    #[arg(long, default_value_t = submodkit::functions::DEFAULT_REGULARIZATION)]
    reg: f64,

    /// sqrt, log1p or inverse
    #[arg(long, default_value = "sqrt")]
    concave: Concave,

    /// Ground-set features (CSV or binary)
    #[arg(long)]
    data: Option<PathBuf>,

    #[arg(long)]
    query_data: Option<PathBuf>,

    #[arg(long)]
    private_data: Option<PathBuf>,

    /// Concept cover JSON for the set cover families
    #[arg(long)]
    concepts: Option<PathBuf>,

    /// Comma-separated query concepts
    #[arg(long, value_delimiter = ',')]
    query_concepts: Option<Vec<usize>>,

    /// Comma-separated private concepts
    #[arg(long, value_delimiter = ',')]
    private_concepts: Option<Vec<usize>>,

    #[arg(long)]
    stop_if_zero_gain: bool,

    #[arg(long)]
    stop_if_negative_gain: bool,

    /// Write JSON here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,

    /// Compare all four optimizers on facility location over --data, or on
    /// the seeded 500-point benchmark set
    #[arg(long)]
    benchmark: bool,

    /// With --benchmark: time these ground-set sizes instead
    #[arg(long, value_delimiter = ',')]
    sweep: Option<Vec<usize>>,

    /// With --benchmark: also write plot-ready CSV here
    #[arg(long)]
    csv: Option<PathBuf>,

    /// Leave wall-clock time out of the selection JSON
    #[arg(long)]
    omit_timing: bool,

    /// Disable data-parallel kernel construction and gain scans
    #[arg(long)]
    sequential: bool,
}

fn emit(path: &Option<PathBuf>, json: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, format!("{json}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            writeln!(io::stdout(), "{json}")?;
            Ok(())
        }
    }
}

fn csv_file(path: &PathBuf) -> Result<File> {
    File::create(path).with_context(|| format!("creating {}", path.display()))
}

fn spec(args: &Args, budget: usize, optimizer: OptimizerKind) -> OptimizeSpec {
    let mut s = OptimizeSpec::new(budget, optimizer)
        .seed(args.seed)
        .stop_if_zero_gain(args.stop_if_zero_gain)
        .stop_if_negative_gain(args.stop_if_negative_gain)
        .execution(execution(args.sequential));
    if let Some(e) = args.epsilon {
        s = s.epsilon(e);
    }
    s
}

fn benchmark(args: &Args) -> Result<()> {
    let exec = execution(args.sequential);
    let budget = args.budget.unwrap_or(250);
    let epsilon = args.epsilon.unwrap_or(0.01);
    if let Some(sizes) = &args.sweep {
        let report = size_sweep(sizes, budget, args.optimizer, epsilon, args.seed, exec)?;
        if let Some(p) = &args.csv {
            report.write_csv(csv_file(p)?)?;
        }
        return emit(&args.output, &serde_json::to_string_pretty(&report)?);
    }
    let data = match &args.data {
        Some(p) => read_features(p)?,
        None => benchmark_blobs(args.seed).data,
    };
    let report = compare_on_features(&data, budget, &OptimizerKind::ALL, epsilon, args.seed, exec)?;
    if let Some(p) = &args.csv {
        report.write_csv(csv_file(p)?)?;
    }
    emit(&args.output, &serde_json::to_string_pretty(&report)?)
}

fn run(args: Args) -> Result<()> {
    if args.benchmark {
        return benchmark(&args);
    }
    let budget = args.budget.context("--budget is required")?;
    let mut cfg = RunConfig::new(args.function, spec(&args, budget, args.optimizer));
    cfg.mode = args.mode;
    cfg.metric = args.metric;
    cfg.k_neighbors = args.k_neighbors;
    cfg.clusters = args.clusters;
    cfg.lambda = args.lambda;
    cfg.eta = args.eta;
    cfg.nu = args.nu;
    cfg.reg = args.reg;
    cfg.concave = args.concave;
    cfg.data = args.data.clone();
    cfg.query_data = args.query_data.clone();
    cfg.private_data = args.private_data.clone();
    cfg.concepts = args.concepts.clone();
    cfg.query_concepts = args.query_concepts.clone();
    cfg.private_concepts = args.private_concepts.clone();
    let report = run_selection(&cfg, !args.omit_timing)?;
    emit(&args.output, &serde_json::to_string_pretty(&report)?)
}

fn main() {
    if let Err(e) = run(Args::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
