//! Command-line front end for the `ckmeans` clustering library.
//!
//! Subcommands:
//! * `gen`   — generate Gaussian-blob CSV datasets from a manifest
//! * `run`   — one clustering run, metric report printed as JSON
//! * `bench` — full benchmark grid from a TOML manifest
//! * `rank`  — Friedman rank summary for one metric, CSV on stdout
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 internal
//! numeric error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use ckmeans::{
    compute_report, emit_report, friedman_ranks, initialize, load_blob_manifest, load_csv,
    ranks_csv, run_grid_with, run_kmeans, save_csv, standardize, CsvSchema, Error,
    ExperimentGrid, InitMethod, KmeansConfig, LabelColumn, MetricName, ResultTable, SeedRequest,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "ckmeans",
    version,
    about = "Crowding-distance k-means initialization, clustering, and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate artificial Gaussian-blob datasets from a manifest
    Gen(GenArgs),
    /// Cluster one dataset and print its metric report as JSON
    Run(RunArgs),
    /// Run a full benchmark grid and write report files
    Bench(BenchArgs),
    /// Print the Friedman rank summary for one metric as CSV
    Rank(RankArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Manifest CSV with one dataset per line: name,n,d,k,std,seed
    #[arg(long)]
    manifest: PathBuf,
    /// Directory that receives one `<name>.csv` per dataset
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Input CSV file (features, optionally a label column)
    #[arg(long)]
    data: PathBuf,
    /// Ground-truth label column, by header name or 0-based index
    #[arg(long)]
    label_col: Option<String>,
    /// Number of clusters
    #[arg(long)]
    k: usize,
    /// Initialization method: random, kmeanspp, maxmin, ckmeans,
    /// fckmeans, or rckmeans
    #[arg(long)]
    init: String,
    /// RNG seed for stochastic initializers
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Standardize features (zero mean, unit variance) before clustering
    #[arg(long)]
    standardize: bool,
    /// Convergence tolerance on total squared centroid movement
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Maximum number of Lloyd iterations
    #[arg(long, default_value_t = 300)]
    max_iter: usize,
    /// Treat the first CSV row as data rather than a header
    #[arg(long)]
    no_header: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// TOML manifest describing datasets, methods, restarts, and seeds
    #[arg(long)]
    manifest: PathBuf,
    /// Output directory for results.json and the report CSVs
    #[arg(long)]
    out: PathBuf,
    /// Execute grid cells serially instead of in parallel
    #[arg(long)]
    serial: bool,
}

#[derive(Args)]
struct RankArgs {
    /// Path to a results.json produced by `bench`
    #[arg(long)]
    results: PathBuf,
    /// Metric to rank: IS, RI, MI, SI, DB, or CH
    #[arg(long)]
    metric: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints help/version to stdout and errors to stderr
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Rank(args) => cmd_rank(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// Map library errors onto the documented exit codes: bad method/metric
/// names are usage errors (1), numeric degeneracies discovered while
/// clustering or scoring are internal errors (3), and everything else —
/// unreadable, malformed, or inconsistent input — is a data error (2).
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::UnknownMethod(_) | Error::UnknownMetric(_) => 1,
        Error::EmptyCluster(_) | Error::IdenticalCentroids { .. } => 3,
        _ => 2,
    }
}

fn cmd_gen(args: GenArgs) -> ckmeans::Result<()> {
    let specs = load_blob_manifest(&args.manifest)?;
    std::fs::create_dir_all(&args.out)?;
    let schema = CsvSchema::default().with_label(LabelColumn::Name("label".to_string()));
    for spec in &specs {
        let dataset = ckmeans::generate_blobs(spec)?;
        let path = args.out.join(format!("{}.csv", spec.name));
        save_csv(&dataset, &path, &schema)?;
        eprintln!(
            "wrote {} ({} points, {} features, {} clusters)",
            path.display(),
            dataset.n(),
            dataset.d(),
            spec.n_clusters
        );
    }
    Ok(())
}

fn cmd_run(args: RunArgs) -> ckmeans::Result<()> {
    let mut schema = CsvSchema::default();
    schema.has_header = !args.no_header;
    if let Some(col) = &args.label_col {
        schema = schema.with_label(col.parse::<LabelColumn>()?);
    }
    let method: InitMethod = args.init.parse()?;
    let mut dataset = load_csv(&args.data, &schema)?;
    if args.standardize {
        dataset = standardize(&dataset);
    }
    let centroids = initialize(
        &dataset,
        &SeedRequest {
            method,
            k: args.k,
            rng_seed: args.seed,
        },
    )?;
    let config = KmeansConfig {
        max_iter: args.max_iter,
        tol: args.tol,
        standardize_first: args.standardize,
    };
    let result = run_kmeans(&dataset, &centroids, &config)?;
    let report = compute_report(&dataset, &result.labels, &result.centroids)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("metric report serializes")
    );
    eprintln!(
        "{}: k={} init={} iterations={} converged={}",
        dataset.name(),
        args.k,
        method,
        result.iterations,
        result.converged
    );
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> ckmeans::Result<()> {
    let started = Instant::now();
    let grid = ExperimentGrid::from_manifest(&args.manifest)?;
    let table = run_grid_with(&grid, !args.serial);
    let mut summaries = Vec::new();
    for metric in table.metrics_present() {
        match friedman_ranks(&table, metric) {
            Ok(summary) => summaries.push(summary),
            Err(err) => eprintln!("skipping ranks for {metric}: {err}"),
        }
    }
    emit_report(&table, &summaries, &args.out)?;
    eprintln!(
        "wrote results for {} datasets x {} methods ({} cells) to {} in {:.1}s",
        table.datasets.len(),
        table.methods.len(),
        table.cells.len(),
        args.out.display(),
        started.elapsed().as_secs_f64()
    );
    Ok(())
}

fn cmd_rank(args: RankArgs) -> ckmeans::Result<()> {
    let metric: MetricName = args.metric.parse()?;
    let table = ResultTable::load(&args.results)?;
    let summary = friedman_ranks(&table, metric)?;
    print!("{}", ranks_csv(&summary));
    Ok(())
}
