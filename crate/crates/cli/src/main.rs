//! `qc`: command-line front end for value quantales, V-spaces, their
//! filters and completions, and the verification harness.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::{CliError, Format};

#[derive(Debug, Parser)]
#[command(name = "qc", version, about = "Value quantales, V-spaces and their Cauchy completions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Oracles,
    Theorems,
    Category,
    Universal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantaleArg {
    ExtRational,
    Q3,
    Q1,
    Chain4,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the value quantale laws.
    ValidateQuantale { file: PathBuf },
    /// Check the V-space axioms.
    ValidateSpace { file: PathBuf },
    /// Symmetry, separation and (uniformly) vanishing asymmetry, with witnesses.
    Classify { file: PathBuf },
    /// The completion by minimal Cauchy filters.
    Complete { file: PathBuf },
    /// The open-ball topology, as minimal neighbourhoods and open sets.
    Topology {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Forward)]
        side: SideArg,
    },
    /// The core of the induced quasi-uniformity.
    Uniformity {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Forward)]
        side: SideArg,
    },
    /// Roundification of the filter generated by a set of points.
    Roundify {
        file: PathBuf,
        /// Comma-separated point names.
        #[arg(long, value_delimiter = ',', required = true)]
        core: Vec<String>,
    },
    /// Oracles, theorem suite, category laws and universal property.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Instance count for every family; the built-in sizes when absent.
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long, default_value_t = 5)]
        max_points: usize,
        /// Dense radii per space in the ε-reduction oracle.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Look for failures of conclusions once their hypothesis is dropped.
    Search {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = QuantaleArg::ExtRational)]
        quantale: QuantaleArg,
        #[arg(long, default_value_t = 4)]
        max_points: usize,
    },
}

fn run(cli: Cli) -> Result<output::Output, CliError> {
    match cli.command {
        Command::ValidateQuantale { file } => commands::validate_quantale(&file),
        Command::ValidateSpace { file } => commands::validate_space(&file),
        Command::Classify { file } => commands::classify(&file),
        Command::Complete { file } => commands::complete(&file),
        Command::Topology { file, side } => commands::topology(&file, side),
        Command::Uniformity { file, side } => commands::uniformity(&file, side),
        Command::Roundify { file, core } => commands::roundify(&file, &core),
        Command::Verify {
            suite,
            seed,
            instances,
            max_points,
            samples,
        } => commands::verify(suite, seed, instances, max_points, samples),
        Command::Search {
            target,
            budget,
            seed,
            quantale,
            max_points,
        } => commands::search(&target, budget, seed, quantale, max_points),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, path) = (cli.format, cli.output.clone());
    let result = run(cli).and_then(|out| {
        out.emit(format, path.as_deref())?;
        Ok(out.failed)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
