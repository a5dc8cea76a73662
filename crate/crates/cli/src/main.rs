use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hoplift::commands::{self, CliError, Selector};
use hoplift::report::Report;
use hoplift::selftest;

#[derive(Parser)]
#[command(name = "hoplift", version, about = "Representations of pointed Hopf algebras of diagonal type and their doubles")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for per-character sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a datum and report its conditions and predicates.
    Validate { file: PathBuf },
    /// Verma modules Z(γ) of H.
    Verma {
        file: PathBuf,
        /// Character exponents, comma separated.
        #[arg(long, conflicts_with = "all", required_unless_present = "all", allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Induced modules I(λ) of the double.
    Double {
        file: PathBuf,
        /// Character exponents of G followed by the exponents of a group element.
        #[arg(long, conflicts_with = "all", required_unless_present = "all", allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Submodule lattice of I(λ) for a classical datum.
    Lattice {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Run the fixture suite.
    Selftest,
}

fn selector(one: Option<String>) -> Result<Selector, CliError> {
    one.map_or(Ok(Selector::All), |s| Selector::parse(&s))
}

fn execute(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Validate { file } => Ok(commands::validate(&commands::load(&file)?)),
        Command::Verma { file, gamma, .. } => commands::verma(&commands::load(&file)?, &selector(gamma)?),
        Command::Double { file, lambda, .. } => commands::double(&commands::load(&file)?, &selector(lambda)?),
        Command::Lattice { file, lambda } => {
            let Selector::One(sel) = Selector::parse(&lambda)? else { unreachable!() };
            commands::lattice(&commands::load(&file)?, &sel)
        }
        Command::Selftest => Ok(selftest::run()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| execute(cli.command));
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Table => report.to_table(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.validation.as_ref().is_some_and(|v| !v.valid) {
        eprintln!("error: validation failed: {}", failed_checks(&report));
        return ExitCode::from(2);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn failed_checks(report: &Report) -> String {
    report
        .validation
        .iter()
        .flat_map(|v| v.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()))
        .collect::<Vec<_>>()
        .join(", ")
}
