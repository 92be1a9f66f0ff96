mod commands;
mod report;

use std::process::ExitCode;

use bianchi_core::SubgroupKind;
use clap::{Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser)]
#[command(
    name = "bianchi",
    version,
    about = "Non-cyclic finite subgroups of Bianchi groups and maximal orders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Reciprocity,
    Satz33,
    Gamma,
    Lemma35,
    Oracle,
    Local,
}

#[derive(Subcommand)]
enum Command {
    /// Existence, host algebra and class counts for one field Q(√−d).
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Existence in PSL₂(o) for every squarefree d up to a bound.
    Scan {
        #[arg(long)]
        dmax: i64,
        /// Comma-separated subset of d3, t, d2.
        #[arg(long, value_delimiter = ',', default_values = ["d3", "t", "d2"])]
        kinds: Vec<SubgroupKind>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Number of conjugacy classes of one kind in a host maximal order.
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        kind: SubgroupKind,
    },
    /// Run a consistency sweep; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        dmax: Option<i64>,
        #[arg(long)]
        height: Option<u32>,
    },
    /// Brute-force searches independent of the closed forms.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Search SL₂(o) for generators of each kind up to a coordinate height.
    Subgroups {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, default_value_t = bianchi_core::oracle::subgroups::DEFAULT_HEIGHT)]
        height: u32,
    },
    /// Count local maximal orders meeting F(τ) in an order of index p^exp.
    LocalCount {
        #[arg(long)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        tau: i64,
        #[arg(long)]
        exp: u32,
    },
}

fn init_thread_pool() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("BIANCHI_THREADS") else {
        return Ok(());
    };
    let threads: usize =
        raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Usage(format!("BIANCHI_THREADS must be a positive integer, got '{raw}'"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Failed(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_thread_pool()?;
    match cli.command {
        Command::Classify { d, format } => commands::classify(d, format),
        Command::Scan { dmax, kinds, format } => commands::scan(dmax, &kinds, format),
        Command::Gamma { d, kind } => commands::gamma(d, kind),
        Command::Verify { suite, dmax, height } => commands::verify(suite, dmax, height),
        Command::Oracle(OracleCommand::Subgroups { d, height }) => commands::oracle_subgroups(d, height),
        Command::Oracle(OracleCommand::LocalCount { p, d, tau, exp }) => {
            commands::oracle_local_count(p, d, tau, exp)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
