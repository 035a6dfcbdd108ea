use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use sl2q_cli::cache::Cache;
use sl2q_cli::commands::{self, parse_order, parse_qmax, VerifyOptions};
use sl2q_cli::output::{self, Format};
use sl2q_core::Check;

#[derive(Parser)]
#[command(name = "sl2q", version, about = "Conjugacy classes of SL(2,q) and their products")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the conjugacy classes with representatives and sizes.
    Table {
        #[arg(long, value_parser = parse_order)]
        q: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Number of classes in the product of two classes.
    Eta {
        #[arg(long, value_parser = parse_order)]
        q: u64,
        /// Class label (e.g. `U(1,+)`) or matrix literal (e.g. `[[1,1],[0,1]]`).
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Smallest eta over noncentral class pairs.
    Min {
        #[arg(long, value_parser = parse_order, conflicts_with = "qmax")]
        q: Option<u64>,
        /// Every prime power up to this bound.
        #[arg(long, value_parser = parse_qmax)]
        qmax: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the verification checks for every prime power up to `--qmax`.
    Verify {
        #[arg(long, value_parser = parse_qmax)]
        qmax: u64,
        /// Comma-separated check names; all checks by default.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<Check>>,
        /// Seed for the sampled (non-exhaustive) parts of the checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "SL2Q_CACHE_DIR", default_value = ".sl2q-cache")]
        cache_dir: PathBuf,
        #[arg(long)]
        no_cache: bool,
        /// Directory for report.json, min_g.csv and manifest.json.
        #[arg(long, default_value = "sl2q-report")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// eta for every pair of noncentral classes.
    Sweep {
        #[arg(long, value_parser = parse_order, conflicts_with = "qmax")]
        q: Option<u64>,
        #[arg(long, value_parser = parse_qmax)]
        qmax: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    let text = match cli.command {
        Command::Table { q, format } => commands::table(q, format)?,
        Command::Eta { q, a, b, format } => commands::eta_cmd(q, &a, &b, format)?,
        Command::Min { q, qmax, format } => commands::min_cmd(&commands::orders(q, qmax)?, format)?,
        Command::Sweep { q, qmax, format } => commands::sweep(&commands::orders(q, qmax)?, format)?,
        Command::Verify { qmax, checks, seed, cache_dir, no_cache, out, format } => {
            let opts = VerifyOptions {
                qmax,
                checks: checks.unwrap_or_else(|| Check::ALL.to_vec()),
                seed,
                cache: (!no_cache).then(|| Cache::new(cache_dir)),
                out,
            };
            let outcome = commands::verify(&opts)?;
            if opts.cache.is_some() {
                eprintln!(
                    "cache: {} hits, {} misses, {} invalid",
                    outcome.cache.hits, outcome.cache.misses, outcome.cache.invalid
                );
            }
            let text = match format {
                Format::Json => output::to_json(&outcome.report)?,
                _ => outcome.stdout,
            };
            print!("{text}");
            return Ok(outcome.all_passed);
        }
    };
    print!("{text}");
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
