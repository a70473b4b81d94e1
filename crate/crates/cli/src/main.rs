//! `pgroup`: build, verify and sweep cyclic extensions of catalogued
//! p-groups, compute character degrees and run property checks.

mod check;
mod degrees;
mod error;
mod evaluate;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pgroup_core::catalog::ENTRIES;
use pgroup_core::degrees::StrategyChoice;

use error::{CliError, CliResult};
use output::{Ctx, Format, Table};

#[derive(Parser, Debug)]
#[command(name = "pgroup", version, about = "Finite p-group workbench")]
struct Cli {
    /// write documents and a run manifest into this directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// worker threads (defaults to all cores)
    #[arg(long, global = true)]
    parallel: Option<usize>,
    /// suppress progress notes on stderr
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// list catalog entries
    Catalog,
    /// build an entry and its extension, writing presentations and a summary
    Build {
        #[command(flatten)]
        entry: evaluate::EntryArgs,
        #[arg(long, default_value = "counting")]
        strategy: String,
    },
    /// build an entry and run every consistency and expectation check
    Verify {
        #[command(flatten)]
        entry: evaluate::EntryArgs,
        #[arg(long, default_value = "auto")]
        strategy: String,
    },
    /// run the validation pipeline over a templated family of maps
    Sweep(sweep::SweepArgs),
    /// character degrees of a catalog group or a presentation file
    Degrees(degrees::DegreesArgs),
    /// property checks on catalog groups
    Check(check::CheckArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Catalog => "catalog",
            Command::Build { .. } => "build",
            Command::Verify { .. } => "verify",
            Command::Sweep(_) => "sweep",
            Command::Degrees(_) => "degrees",
            Command::Check(_) => "check",
        }
    }
}

fn catalog(ctx: &mut Ctx) -> CliResult<()> {
    ctx.emit("catalog", &ENTRIES, || {
        let mut t = Table::new(["name", "summary", "fixed_prime", "min_prime", "sized", "templated", "parameters"]);
        for e in ENTRIES {
            t.push(vec![
                e.name.to_string(),
                e.summary.to_string(),
                e.fixed_prime.map(|p| p.to_string()).unwrap_or_default(),
                e.min_prime.to_string(),
                e.sized.to_string(),
                e.templated.to_string(),
                e.parameters.to_string(),
            ]);
        }
        t
    })
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(n) = cli.parallel {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let mut ctx = Ctx::new(cli.out.clone(), cli.format, cli.seed, cli.quiet, cli.command.name())?;
    let strategy = |s: &str| -> CliResult<StrategyChoice> { Ok(s.parse()?) };
    let result = match &cli.command {
        Command::Catalog => catalog(&mut ctx),
        Command::Build { entry, strategy: s } => evaluate::run_build(&mut ctx, entry, strategy(s)?),
        Command::Verify { entry, strategy: s } => evaluate::run_verify(&mut ctx, entry, strategy(s)?),
        Command::Sweep(a) => sweep::run_sweep(&mut ctx, a),
        Command::Degrees(a) => degrees::run_degrees(&mut ctx, a),
        Command::Check(a) => check::run_check(&mut ctx, a),
    };
    // A mismatch still leaves complete outputs, so the manifest is written.
    match result {
        Ok(()) => ctx.finish(),
        Err(e @ CliError::Mismatch(_)) => {
            ctx.finish()?;
            Err(e)
        }
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pgroup: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
