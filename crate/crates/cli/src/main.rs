//! `maxgenus`: censuses, v-type-edge generation, claim checks, and bound
//! tables for maximum-genus embeddings of complete bipartite graphs.
//!
//! Exit status: 0 when every check passes, 1 on a claim or distinctness
//! failure, 2 on usage, parse, or budget errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxgenus::bounds::{self, compare_table};
use maxgenus::construct::{self, GenerateMode, VerifyOptions, DEFAULT_MATERIALIZE_BUDGET};
use maxgenus::oracle::{self, face_census};
use maxgenus::{format, Graph};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "maxgenus", version, about = "Maximum-genus embeddings of K_{n,n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Worker threads.
    #[arg(long, global = true, env = "MAXGENUS_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Work cap: rotation systems for `census`, embeddings for `generate`,
    /// frontier size for `verify-claims`.
    #[arg(long, global = true, env = "MAXGENUS_BUDGET")]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Output path (census, bounds, verify-claims: report; generate: embedding file).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Records,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exhaustive face census of K_{p,q}.
    Census {
        #[arg(long, num_args = 2, value_names = ["P", "Q"], required = true)]
        parts: Vec<u32>,
    },
    /// One-face embeddings of K_{n,n} by v-type-edge insertion.
    Generate {
        #[arg(long)]
        n: u32,
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// Number of seeded random draws.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Checks every stage's lower bound on one-face completions.
    VerifyClaims {
        #[arg(long)]
        n: u32,
        /// Inputs kept when a level outgrows the budget.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact comparison of the f1, f2, and Stahl bounds.
    Bounds {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
    /// Traces the faces of every embedding in a file.
    Trace { path: PathBuf },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Oracle(#[from] maxgenus::OracleError),
    #[error(transparent)]
    Construct(#[from] maxgenus::ConstructError),
    #[error(transparent)]
    Bounds(#[from] maxgenus::BoundsError),
    #[error(transparent)]
    Graph(#[from] maxgenus::GraphError),
    #[error("{path}: {source}")]
    Parse { path: String, source: maxgenus::ParseError },
    /// A check failed; the report has already been written.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Construct(maxgenus::ConstructError::Claim(_)) => 1,
            _ => 2,
        }
    }
}

fn emit(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool")
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = &cli.common;
    if common.jobs == 0 {
        return Err(CliError::Usage("--jobs must be positive".into()));
    }
    if common.budget == Some(0) {
        return Err(CliError::Usage("--budget must be positive".into()));
    }
    match &cli.command {
        Command::Census { parts } => {
            let g = Graph::complete_bipartite(parts[0], parts[1])?;
            let budget = common.budget.unwrap_or(oracle::DEFAULT_BUDGET);
            let report = pool(common.jobs).install(|| face_census(&g, budget))?;
            eprintln!("elapsed {:.3}s", report.elapsed.as_secs_f64());
            let text = match common.format {
                OutputFormat::Text => report.to_table(),
                OutputFormat::Records => report.to_records(),
            };
            emit(common, &text)
        }
        Command::Generate { n, exhaustive, sample, seed } => {
            let mode = match (exhaustive, sample) {
                (_, Some(count)) => GenerateMode::Sampled { seed: *seed, count: *count },
                _ => GenerateMode::Exhaustive { budget: common.budget.unwrap_or(DEFAULT_MATERIALIZE_BUDGET) },
            };
            let items = pool(common.jobs).install(|| construct::generate_all(*n, mode))?;
            let out = common.out.clone().unwrap_or_else(|| PathBuf::from(format!("k{n}_{n}.emb")));
            write_generated(&out, &items)?;
            let report = construct::verify_distinct(&items);
            let all_one_face = items.iter().all(|(_, e)| e.is_one_face());
            print!("{report}");
            println!("one-face {}", if all_one_face { "all" } else { "NOT all" });
            println!("wrote {} and {}", out.display(), choices_path(&out).display());
            if !report.is_injective() || !all_one_face {
                return Err(CliError::Check("generated set failed the distinctness or one-face check".into()));
            }
            if matches!(mode, GenerateMode::Exhaustive { .. }) && report.unique_embeddings != items.len() {
                return Err(CliError::Check("exhaustive generation repeated an entry".into()));
            }
            Ok(())
        }
        Command::VerifyClaims { n, samples, seed } => {
            let options = VerifyOptions {
                frontier_budget: common.budget.map_or(VerifyOptions::default().frontier_budget, |b| b as usize),
                samples: *samples,
                seed: *seed,
            };
            let report = pool(common.jobs).install(|| construct::verify_claims(*n, &options))?;
            let text = match common.format {
                OutputFormat::Text => report.to_string(),
                OutputFormat::Records => claim_records(&report),
            };
            emit(common, &text)?;
            if !report.pass() {
                return Err(CliError::Check("at least one stage fell below its lower bound".into()));
            }
            Ok(())
        }
        Command::Bounds { n } => {
            let rows = compare_table(n)?;
            let text = match common.format {
                OutputFormat::Text => bounds::render_table(&rows),
                OutputFormat::Records => bounds::render_records(&rows),
            };
            emit(common, &text)
        }
        Command::Trace { path } => {
            let text = fs::read_to_string(path)?;
            let embeddings = format::parse_many(&text)
                .map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
            if embeddings.is_empty() {
                return Err(CliError::Usage(format!("{}: no embedding found", path.display())));
            }
            let mut out = String::new();
            for (i, e) in embeddings.iter().enumerate() {
                let g = e.graph();
                out.push_str(&format!(
                    "embedding {} K({},{}) betti {}\n",
                    i + 1,
                    g.part_x_size(),
                    g.part_y_size(),
                    g.betti()?
                ));
                out.push_str(&e.trace_faces().to_string());
            }
            emit(common, &out)
        }
    }
}

fn choices_path(out: &Path) -> PathBuf {
    out.with_extension("choices")
}

fn write_generated(out: &Path, items: &[construct::Generated]) -> Result<(), CliError> {
    let mut embeddings = String::new();
    let mut choices = String::new();
    for (i, (seq, e)) in items.iter().enumerate() {
        embeddings.push_str(&format!("# {} {}\n", i + 1, seq));
        embeddings.push_str(&format::serialize(e));
        choices.push_str(&seq.to_string());
        choices.push('\n');
    }
    fs::write(out, embeddings)?;
    fs::write(choices_path(out), choices)?;
    Ok(())
}

fn claim_records(report: &construct::ClaimsReport) -> String {
    let mut out = String::new();
    for r in &report.stages {
        out.push_str(&format!(
            "stage={} factor={} inputs={} sampled={} min={} max={} outputs={} pass={}\n",
            r.label,
            r.factor,
            r.inputs,
            r.sampled,
            r.min_observed,
            r.max_observed,
            r.outputs,
            r.pass()
        ));
    }
    for p in &report.products {
        out.push_str(&format!(
            "product={} required={} observed={} pass={}\n",
            p.label,
            p.required,
            p.observed,
            p.pass()
        ));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let _ = io::stdout().flush();
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
