use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cmdef_cli::{builtins, run_builtin, run_path, CliError, Format, Report, RunOptions};

#[derive(Parser)]
#[command(name = "cmdef", version, about = "Galois deformation numerology workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        path: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run a bundled scenario by id.
    Builtin {
        id: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// List the bundled scenarios.
    List,
}

#[derive(Args)]
struct Flags {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized suites, overriding the scenario file.
    #[arg(long)]
    seed: Option<u64>,
    /// p-adic working precision for weight computations.
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn emit(report: Result<Report, CliError>, flags: &Flags) -> ExitCode {
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let text = report.render(flags.format);
    match &flags.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    ExitCode::from(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { path, flags } => {
            let opts = RunOptions {
                seed: flags.seed,
                precision: flags.precision,
            };
            emit(run_path(&path, &opts), &flags)
        }
        Command::Builtin { id, flags } => {
            let opts = RunOptions {
                seed: flags.seed,
                precision: flags.precision,
            };
            emit(run_builtin(&id, &opts), &flags)
        }
        Command::List => {
            let width = builtins::catalog().iter().map(|b| b.id.len()).max().unwrap_or(0);
            for b in builtins::catalog() {
                println!("{:width$}  {}", b.id, b.description);
            }
            ExitCode::SUCCESS
        }
    }
}
