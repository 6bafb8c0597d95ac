//! `credal-chain`: cross-validation runs, predictions and result summaries
//! for classifier chains that may abstain.

mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use credal_chain::data::{apply_bins, discretize, load_csv_features, DiscretizeConfig};
use credal_chain::eval::{read_rows, run_experiment, summarize, write_rows, write_series};
use credal_chain::{ChainModel, ExperimentGrid, Hyperparams, Strategy};

use config::{guess_format, load, DatasetArgs, Format, RunFile};

#[derive(Debug, Parser)]
#[command(
    name = "credal-chain",
    version,
    about = "Classifier chains with naive credal classifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Repeated k-fold cross-validation over an s / missing / strategy grid.
    Run(RunArgs),
    /// Fit on a training file and print one prediction per test row.
    Predict(PredictArgs),
    /// Average a results CSV into one series per (strategy, s).
    Summarize(SummarizeArgs),
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    /// TOML file with any of the options below; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    data: DatasetArgs,
    /// Dataset name written to the results (defaults to the file stem).
    #[arg(long)]
    name: Option<String>,
    /// Bins per numeric feature.
    #[arg(long)]
    z: Option<usize>,
    /// Comma-separated IDM strengths.
    #[arg(long, value_delimiter = ',')]
    s: Option<Vec<f64>>,
    /// Comma-separated percentages of training label cells to remove.
    #[arg(long, value_delimiter = ',')]
    missing: Option<Vec<f64>>,
    /// Comma-separated strategies: precise, ib, mar.
    #[arg(long, value_delimiter = ',')]
    strategies: Option<Vec<Strategy>>,
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long)]
    folds: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Additive smoothing of the class marginal.
    #[arg(long)]
    alpha: Option<f64>,
    /// Fixed label order as comma-separated 0-based label indices.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    /// Worker threads (0 = one per core).
    #[arg(long)]
    threads: Option<usize>,
    /// Results CSV; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Record wall-clock time per row instead of 0.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, clap::Args)]
struct PredictArgs {
    #[command(flatten)]
    data: DatasetArgs,
    /// Rows to predict: a CSV of features (label columns optional) or an
    /// ARFF file with the training layout.
    #[arg(long)]
    test: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 6)]
    z: usize,
    #[arg(long, default_value = "ib")]
    strategy: Strategy,
    /// Label order as comma-separated 0-based indices; dataset order by default.
    #[arg(long, value_delimiter = ',', conflicts_with = "seed")]
    order: Option<Vec<usize>>,
    /// Draw a random label order from this seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, clap::Args)]
struct SummarizeArgs {
    /// Results CSV written by `run`.
    input: PathBuf,
    /// Series file; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<credal_chain::Error> for Failure {
    fn from(e: credal_chain::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

fn sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot write {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_run(args: RunArgs) -> Result<(), Failure> {
    let file = match &args.config {
        Some(path) => RunFile::read(path)?,
        None => RunFile::default(),
    };
    let file_strategies = file.strategies()?;
    let data_args = args.data.merge(file.data);
    let Some(path) = data_args.dataset.clone() else {
        return Err(Failure::Usage(
            "a dataset is required (--dataset or `dataset` in the config file)".into(),
        ));
    };
    let data = load(&path, &data_args)?;

    let mut grid = ExperimentGrid::new(data);
    if let Some(name) = args.name.or(file.name) {
        grid.dataset = name;
    }
    grid.discretize = DiscretizeConfig::new(args.z.or(file.z).unwrap_or(6));
    if let Some(s) = args.s.or(file.s) {
        grid.s_values = s;
    }
    if let Some(m) = args.missing.or(file.missing) {
        grid.missing_pcts = m;
    }
    if let Some(st) = args.strategies.or(file_strategies) {
        grid.strategies = st;
    }
    grid.repeats = args.repeats.or(file.repeats).unwrap_or(grid.repeats);
    grid.folds = args.folds.or(file.folds).unwrap_or(grid.folds);
    grid.seed = args.seed.or(file.seed).unwrap_or(grid.seed);
    grid.laplace_alpha = args.alpha.or(file.alpha).unwrap_or(grid.laplace_alpha);
    grid.order = args.order.or(file.order);
    grid.threads = args.threads.or(file.threads).unwrap_or(0);
    grid.timing = args.timing || file.timing.unwrap_or(false);
    let output = args.output.or(file.output);

    let rows = run_experiment(&grid)?;
    let mut out = sink(output.as_deref())?;
    write_rows(&rows, &mut out)?;
    out.flush().context("flushing results")?;
    Ok(())
}

fn cmd_predict(args: PredictArgs) -> Result<(), Failure> {
    let Some(path) = args.data.dataset.clone() else {
        return Err(Failure::Usage(
            "a training file is required (--dataset)".into(),
        ));
    };
    let train_raw = load(&path, &args.data)?;
    let (train, bins) = discretize(&train_raw, &DiscretizeConfig::new(args.z))?;
    let m = train_raw.n_labels();
    let order = match (args.order, args.seed) {
        (Some(o), _) => o,
        (None, Some(seed)) => credal_chain::chain::random_order(m, seed),
        (None, None) => (0..m).collect(),
    };
    let model = ChainModel::fit(&train, &order, Hyperparams::new(args.s, args.alpha)?)?;

    let test_format = guess_format(&args.test, args.data.format);
    let rows: Vec<Vec<u32>> = match test_format {
        Format::Arff => apply_bins(&load(&args.test, &args.data)?, &bins)?.features,
        Format::Csv => load_csv_features(&args.test, train_raw.n_features(), m)?
            .iter()
            .map(|r| bins.bin_row(r))
            .collect::<Result<_, _>>()?,
    };
    let mut out = sink(None)?;
    for x in &rows {
        writeln!(out, "{}", model.predict(x, args.strategy)?).context("writing prediction")?;
    }
    out.flush().context("flushing predictions")?;
    Ok(())
}

fn cmd_summarize(args: SummarizeArgs) -> Result<(), Failure> {
    let input =
        File::open(&args.input).with_context(|| format!("cannot read {}", args.input.display()))?;
    let rows = read_rows(input).with_context(|| format!("reading {}", args.input.display()))?;
    let mut out = sink(args.output.as_deref())?;
    write_series(&summarize(&rows), &mut out)?;
    out.flush().context("flushing series")?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Predict(a) => cmd_predict(a),
        Command::Summarize(a) => cmd_summarize(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
