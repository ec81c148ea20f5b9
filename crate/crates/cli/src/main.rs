mod analyze;
mod check;
mod compile;
mod examples;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use report::{to_json, RunReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot write {0}")]
    Output(String),
}

#[derive(Parser)]
#[command(name = "wagon", version, about = "Compile presentations to wagon-wheel hypergraphs and check pictures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a presentation to a wagon wheel, labelling, linear system and game.
    Compile(compile::Args),
    /// Run one of the validators.
    Check {
        #[command(subcommand)]
        kind: check::Kind,
    },
    /// Classical and operator analysis of a linear system.
    Analyze(analyze::Args),
    /// List or write the bundled example files.
    Examples {
        #[command(subcommand)]
        action: examples::Action,
    },
}

fn run(cli: Cli) -> Result<Option<RunReport>, CliError> {
    match cli.command {
        Command::Compile(a) => compile::run(a).map(Some),
        Command::Check { kind } => check::run(kind).map(Some),
        Command::Analyze(a) => analyze::run(a).map(Some),
        Command::Examples { action } => examples::run(action).map(|()| None),
    }
}

/// Output directory for `--emit`, which needs somewhere to write.
pub fn emit_dir(emit: Option<Emit>, out: &Option<PathBuf>) -> Result<Option<PathBuf>, CliError> {
    match (emit, out) {
        (None, _) => Ok(None),
        (Some(_), Some(dir)) => Ok(Some(dir.clone())),
        (Some(_), None) => Err(CliError::Input("--emit needs --out DIR".into())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Some(report)) => {
            print!("{}", to_json(&report));
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
