use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ssetkit::commands::{self, CommandError, Options, What};
use ssetkit::report::Report;

#[derive(Parser)]
#[command(name = "ssetkit", version, about = "Finite simplicial homotopy computations with checked reports")]
struct Cli {
    /// Dimension bound for constructions.
    #[arg(long, global = true, default_value_t = 4)]
    max_dim: usize,
    /// Step budget for searches and enumerations.
    #[arg(long, global = true, default_value_t = 200_000_000)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an invariant of a document.
    Compute {
        input: PathBuf,
        #[command(subcommand)]
        what: Invariant,
    },
    /// Borel/monodromy round trips over every transitive G-set.
    Galois {
        group: PathBuf,
        #[arg(default_value_t = 4)]
        bound: usize,
    },
    /// The four reconstructions of G from d(G).
    Reconstruct { group: PathBuf },
    /// Bounded localization of a relative category, checked against hammocks.
    Localize {
        category: PathBuf,
        /// Maximal zig-zag length; hammocks are counted up to twice this.
        #[arg(long, default_value_t = 3)]
        length: usize,
    },
    /// Summarize and validate any document.
    Inspect { input: PathBuf },
}

#[derive(Subcommand)]
enum Invariant {
    /// Integral homology through degree NMAX.
    Homology { nmax: usize },
    /// Presentation of the fundamental group, with its order when it can be certified.
    Pi1,
    /// Segal maps through level M.
    Segal { m: usize },
    /// Horn filling through dimension DIM.
    Kan { dim: usize },
    /// Loop group through dimension N and its pi0.
    Loopgroup { n: usize },
}

fn run(cli: &Cli, echo: Vec<String>) -> Result<Report, CommandError> {
    let opts = Options { max_dim: cli.max_dim, budget: cli.budget };
    match &cli.command {
        Command::Compute { input, what } => {
            let what = match *what {
                Invariant::Homology { nmax } => What::Homology(nmax),
                Invariant::Pi1 => What::Pi1,
                Invariant::Segal { m } => What::Segal(m),
                Invariant::Kan { dim } => What::Kan(dim),
                Invariant::Loopgroup { n } => What::LoopGroup(n),
            };
            commands::compute(echo, input, what, &opts)
        }
        Command::Galois { group, bound } => {
            if *bound < 2 {
                return Err(CommandError::Usage("galois needs a bound of at least 2".into()));
            }
            commands::galois(echo, group, *bound, &opts)
        }
        Command::Reconstruct { group } => commands::reconstruct(echo, group, &opts),
        Command::Localize { category, length } => commands::localize(echo, category, *length, &opts),
        Command::Inspect { input } => commands::inspect(echo, input, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let report = match run(&cli, echo) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("ssetkit: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("ssetkit: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code())
}
