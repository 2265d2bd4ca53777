use clap::{Args, Subcommand};
use prio_channels::encodings::{encode, eta, EncodingError};
use prio_channels::ordinals::{
    fgh_eval, fund_seq, hardy_eval, leqo, natural_product, natural_sum, ord_cmp, HardyBudget, OrdinalError, Term,
};
use prio_channels::{Letter, Word};
use serde_json::json;

use crate::{CliError, Outcome};

#[derive(Debug, Args)]
pub struct OrdArgs {
    #[command(subcommand)]
    command: OrdCommand,
    /// Step ceiling for Hardy evaluation; overrides PCS_BUDGET_STEPS.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum OrdCommand {
    /// Proper code `s_a(α)` of a term at level `a`.
    Encode {
        term: Term,
        #[arg(long)]
        level: Letter,
    },
    /// Term `η(x)` of a proper code.
    Decode { code: Word },
    /// Fundamental sequence `λ[n]`.
    Fund { term: Term, n: usize },
    /// `H^α(n)`.
    Hardy { term: Term, n: u64 },
    /// `F_k(n)`.
    Fgh { k: Term, n: u64 },
    /// Coefficientwise `α ≤ₒ β`.
    Leqo { a: Term, b: Term },
    /// Ordinal comparison of the denoted values.
    Cmp { a: Term, b: Term },
    /// Natural sum `α ⊕ β`.
    Natsum { a: Term, b: Term },
    /// Natural product `α ⊗ β`.
    Natprod { a: Term, b: Term },
}

fn ordinal_error(e: OrdinalError) -> CliError {
    match e {
        OrdinalError::Budget { steps, value } => CliError::Budget(format!("{steps} steps, counter {value}")),
        other => CliError::input(other),
    }
}

fn encoding_error(e: EncodingError) -> CliError {
    match e {
        EncodingError::Ordinal(o) => ordinal_error(o),
        other => CliError::input(other),
    }
}

pub fn run(args: OrdArgs) -> Result<Outcome, CliError> {
    let mut budget = HardyBudget::from_env();
    if let Some(steps) = args.budget {
        budget.max_steps = steps;
    }
    Ok(match args.command {
        OrdCommand::Encode { term, level } => {
            let code = encode(&term, level).map_err(encoding_error)?;
            Outcome::ok(json!({ "code": code.to_text_at(level) }))
        }
        OrdCommand::Decode { code } => Outcome::ok(json!({ "term": eta(&code).map_err(encoding_error)?.to_string() })),
        OrdCommand::Fund { term, n } => {
            Outcome::ok(json!({ "term": fund_seq(&term, n).map_err(ordinal_error)?.to_string() }))
        }
        OrdCommand::Hardy { term, n } => {
            Outcome::ok(json!({ "value": hardy_eval(&term, n, budget).map_err(ordinal_error)? }))
        }
        OrdCommand::Fgh { k, n } => Outcome::ok(json!({ "value": fgh_eval(&k, n, budget).map_err(ordinal_error)? })),
        OrdCommand::Leqo { a, b } => {
            let holds = leqo(&a, &b).map_err(ordinal_error)?;
            Outcome::holds(holds, json!({ "leqo": holds }))
        }
        OrdCommand::Cmp { a, b } => {
            let symbol = match ord_cmp(&a, &b) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            Outcome::ok(json!({ "cmp": symbol }))
        }
        OrdCommand::Natsum { a, b } => {
            Outcome::ok(json!({ "term": natural_sum(&a, &b).map_err(ordinal_error)?.to_string() }))
        }
        OrdCommand::Natprod { a, b } => {
            Outcome::ok(json!({ "term": natural_product(&a, &b).map_err(ordinal_error)?.to_string() }))
        }
    })
}
