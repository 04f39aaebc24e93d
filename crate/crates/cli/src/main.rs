use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod output;
mod verify;

use commands::{CountWhat, Failure};

/// Exact counts and probabilities for mutual pairs in Secret Santa draws.
#[derive(Debug, Parser)]
#[command(name = "wichtel", version)]
struct Cli {
    /// Output format; each command has a default when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print an exact count, cross-checked by every implemented method.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        what: CountWhat,
        /// Number of 2-cycles, for `--what PNk`.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exact distribution of the pair count.
    Dist {
        #[arg(long)]
        n: usize,
    },
    /// Probability of at least k pairs.
    Tail {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Convergence table: at-least-one, at-least-three, distance to Poisson(1/2), mean.
    Table {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 60)]
        n_max: usize,
    },
    /// Monte Carlo histogram of pair counts.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check every counting identity against exhaustive enumeration.
    Verify {
        /// Largest n to enumerate; defaults to WICHTEL_ORACLE_CAP or 9.
        #[arg(long)]
        cap: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let format = cli.format;
    match cli.command {
        Command::Count { n, what, k } => commands::count(&mut sink, format, n, what, k)?,
        Command::Dist { n } => commands::dist(&mut sink, format, n)?,
        Command::Tail { n, k } => commands::tail(&mut sink, format, n, k)?,
        Command::Table { n_min, n_max } => commands::table(&mut sink, format, n_min, n_max)?,
        Command::Simulate { n, trials, seed } => {
            commands::simulate(&mut sink, format, n, trials, seed)?
        }
        Command::Verify { cap } => verify::run(&mut sink, format, cap)?,
    }
    sink.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("wichtel: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
