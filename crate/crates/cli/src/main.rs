//! `pcs`: command-line front end for priority channel systems.
//!
//! Every command prints one JSON document on stdout. Exit code 0 means the
//! property holds (or the command succeeded), 1 that it fails, 2 a usage or
//! input error.

mod gen;
mod model;
mod ord;
mod order;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

const CONFIG_HELP: &str = "Configurations are written `state:w1,w2,...`, one word per channel in \
channel order, letters as digits (comma-separated integers and `;` between words above level 9). \
An empty word is written as nothing or `ε`, so `p:` and `p:ε` are the empty-channel configuration.";

#[derive(Debug, Parser)]
#[command(name = "pcs", version, about = "Priority channel systems: orders, simulation, verification, gadgets", after_help = CONFIG_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide the priority embedding `x ⊑ₚ y`.
    Order(order::OrderArgs),
    /// Coverability, reachability, termination or inevitability from a configuration.
    #[command(after_help = CONFIG_HELP)]
    Verify(model::VerifyArgs),
    /// Simulate a model or replay a stored run.
    #[command(after_help = CONFIG_HELP)]
    Sim(model::SimArgs),
    /// Ordinal terms, proper codes and Hardy functions.
    Ord(ord::OrdArgs),
    /// Generate gadget models.
    Gen(gen::GenArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the generated model here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

/// A finished command: exit code and JSON payload.
#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub payload: Value,
}

impl Outcome {
    pub fn holds(holds: bool, payload: Value) -> Outcome {
        Outcome { code: if holds { 0 } else { 1 }, payload }
    }

    pub fn ok(payload: Value) -> Outcome {
        Outcome { code: 0, payload }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn input(e: impl std::fmt::Display) -> CliError {
        CliError::Input(e.to_string())
    }

    fn outcome(&self) -> Outcome {
        match self {
            CliError::Budget(detail) => Outcome { code: 1, payload: json!({ "budget": detail }) },
            other => Outcome { code: 2, payload: json!({ "error": other.to_string() }) },
        }
    }
}

pub fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })
}

pub fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source })
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Order(args) => order::run(args),
        Command::Verify(args) => model::verify(args),
        Command::Sim(args) => model::sim(args),
        Command::Ord(args) => ord::run(args),
        Command::Gen(args) => gen::run(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            println!("{}", json!({ "error": e.kind().to_string() }));
            return ExitCode::from(2);
        }
    };
    let outcome = run(cli).unwrap_or_else(|e| {
        eprintln!("pcs: {e}");
        e.outcome()
    });
    let text = serde_json::to_string_pretty(&outcome.payload).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(outcome.code)
}
