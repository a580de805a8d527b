mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact checks of hook length identities and the random growth process
/// on increasing trees.
#[derive(Parser, Debug)]
#[command(name = "hooklab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an identity or a property of the growth process for n = 1..n-max.
    Verify(VerifyArgs),
    /// Grow random increasing trees and print their labeled encodings.
    Sample(SampleArgs),
    /// Monte Carlo chi-squared test of grown trees against the exact distribution.
    Mc(McArgs),
    /// Per-tree labeling data for the completions of binary trees.
    Census(CensusArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    Han,
    Yang,
    Tbar,
    Han2,
    Lemma,
    Labelprob,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Binary,
    Ordered,
    Tbar,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// Tree family [default: binary].
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Weight parameter of the ordered family: a rational or "symbolic".
    #[arg(long)]
    m: Option<String>,
    /// Infinite-tree description: const:K, depth:K1,..,Kj or file:PATH.
    #[arg(long)]
    oracle: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    /// Check this size only.
    #[arg(long, conflicts_with = "n_max")]
    n: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Log every growth step to stderr.
    #[arg(long)]
    verbose: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct McArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 200_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = hooklab::stats::DEFAULT_ALPHA)]
    alpha: f64,
    /// Also write the per-labeling tallies to this CSV file.
    #[arg(long)]
    csv: Option<std::path::PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = commands::configure_threads() {
        eprintln!("hooklab: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Sample(a) => commands::sample(a),
        Command::Mc(a) => commands::mc(a),
        Command::Census(a) => commands::census(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hooklab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
