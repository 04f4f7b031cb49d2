//! Thin command-line front end over the library's experiment runner.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use greedylab::cli::{Command as LibCommand, ExperimentConfig, Format, Params};
use greedylab::{FiniteVector, SpaceSpec};

#[derive(Parser)]
#[command(name = "greedylab", version, about = "Batch experiments on greedy approximation in sequence spaces")]
struct Cli {
    /// Space spec file (JSON: {"kind": ..., "params": ...}).
    #[arg(long, global = true)]
    space: Option<PathBuf>,
    /// Inline space spec JSON (alternative to --space).
    #[arg(long, global = true)]
    space_json: Option<String>,
    /// RNG seed for the sampled families.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report path; omitted means print-only.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    t: Option<f64>,
    /// Inside ranks, comma separated (e.g. `1,2`).
    #[arg(long)]
    a: Option<String>,
    /// Outside ranks, comma separated.
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Weight function KIND[:PARAM], e.g. `power:0.5`, `geometric:0.5`.
    #[arg(long)]
    f: Option<String>,
    /// Sparseness partner KIND[:PARAM] (block-space suite).
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long)]
    horizon: Option<u64>,
    /// Sample count for seeded families.
    #[arg(long)]
    count: Option<usize>,
    /// Certified quasi-greedy constant for the bound suites.
    #[arg(long)]
    cq: Option<f64>,
    /// Asserted bound for estimates that have a certified value.
    #[arg(long)]
    bound: Option<f64>,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Evaluate the norm of a vector.
    Norm {
        /// Vector file (.json or .csv).
        #[arg(long)]
        input: PathBuf,
    },
    /// Greedy ordering, greedy sum, and residual norm.
    Greedy {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Approximation functionals: sigma, sigma_tilde, or dm.
    Functional {
        which: String,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Constant estimates (democracy, suppression, quasi_greedy, ...).
    Constants {
        which: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Verification suites (space_witnesses, disjoint_democracy, ...).
    Suite {
        which: String,
        #[command(flatten)]
        params: ParamArgs,
    },
}

fn parse_ranks(text: &Option<String>) -> anyhow::Result<Option<Vec<usize>>> {
    text.as_deref()
        .map(|t| {
            t.split(',')
                .map(|v| v.trim().parse::<usize>().map_err(|e| anyhow!("bad rank list: {e}")))
                .collect()
        })
        .transpose()
}

impl ParamArgs {
    fn into_params(self) -> anyhow::Result<Params> {
        Ok(Params {
            m: self.m,
            t: self.t,
            a: parse_ranks(&self.a)?,
            b: parse_ranks(&self.b)?,
            lambda: self.lambda,
            f: self.f,
            g: self.g,
            max_size: self.max_size,
            horizon: self.horizon,
            count: self.count,
            cq: self.cq,
            bound: self.bound,
        })
    }
}

fn load_space(cli: &Cli) -> anyhow::Result<SpaceSpec> {
    match (&cli.space, &cli.space_json) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading space spec {}", path.display()))?;
            Ok(SpaceSpec::from_json_str(&text)?)
        }
        (None, Some(text)) => Ok(SpaceSpec::from_json_str(text)?),
        (None, None) => Err(anyhow!("one of --space or --space-json is required")),
        (Some(_), Some(_)) => Err(anyhow!("--space and --space-json are mutually exclusive")),
    }
}

fn load_vector(path: &PathBuf) -> anyhow::Result<FiniteVector> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading vector {}", path.display()))?;
    let vector = if path.extension().map(|e| e == "csv").unwrap_or(false) {
        FiniteVector::from_csv_str(&text)?
    } else {
        FiniteVector::from_json_str(&text)?
    };
    Ok(vector)
}

fn build_config(cli: Cli) -> anyhow::Result<(ExperimentConfig, Option<PathBuf>)> {
    let space = load_space(&cli)?;
    let format = match cli.format.as_str() {
        "json" => Format::Json,
        "csv" => Format::Csv,
        other => return Err(anyhow!("unknown format `{other}` (expected json or csv)")),
    };
    let command = match cli.command {
        CliCommand::Norm { input } => LibCommand::Norm { vector: load_vector(&input)?.to_json_value() },
        CliCommand::Greedy { input, m } => {
            LibCommand::Greedy { vector: load_vector(&input)?.to_json_value(), m }
        }
        CliCommand::Functional { which, input, params } => {
            let m = params.m.ok_or_else(|| anyhow!("functional needs --m"))?;
            LibCommand::Functional {
                which,
                vector: load_vector(&input)?.to_json_value(),
                m,
                params: params.into_params()?,
            }
        }
        CliCommand::Constants { which, params } => {
            LibCommand::Constants { which, params: params.into_params()? }
        }
        CliCommand::Suite { which, params } => {
            LibCommand::Suite { which, params: params.into_params()? }
        }
    };
    Ok((ExperimentConfig { space, command, seed: cli.seed, format }, cli.out))
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("GREEDYLAB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    let (config, out) = match build_config(cli) {
        Ok(pair) => pair,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    };
    match greedylab::cli::run(&config, out.as_deref()) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
