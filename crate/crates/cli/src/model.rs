use std::path::PathBuf;

use clap::{ArgGroup, Args};
use prio_channels::pcs::{run_simulate, Config, ConfigJson, Pcs, RunFile, Semantics};
use prio_channels::verify::{
    cover, inevitable_states, reach_exact, terminate, SearchLimits, UpwardClosedSet, VerifyError,
};
use serde::Deserialize;
use serde_json::json;

use crate::{read_file, CliError, Outcome};

pub fn load_model(path: &PathBuf) -> Result<Pcs, CliError> {
    Pcs::from_json(&read_file(path)?).map_err(CliError::input)
}

/// `--from`, or the initial state with empty channels.
fn start(model: &Pcs, from: Option<&str>) -> Result<Config, CliError> {
    match from {
        Some(literal) => model.parse_config(literal).map_err(CliError::input),
        None => {
            let q = model.initial().ok_or_else(|| CliError::Input("model has no initial state; pass --from".into()))?;
            Ok(model.empty_config(q))
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("query").required(true).args(["cover", "reach", "terminate", "inevitable"])))]
pub struct VerifyArgs {
    /// Model JSON file.
    model: PathBuf,
    /// Start configuration; defaults to the initial state with empty channels.
    #[arg(long)]
    from: Option<String>,
    /// Only internal-superseding is decidable here.
    #[arg(long, default_value = "internal-superseding")]
    semantics: Semantics,
    /// JSON list of target configurations (literals or objects); covers their upward closure.
    #[arg(long, value_name = "BASISFILE")]
    cover: Option<PathBuf>,
    /// Exact reachability of one configuration.
    #[arg(long, value_name = "CONFIG")]
    reach: Option<String>,
    /// Is every run finite?
    #[arg(long)]
    terminate: bool,
    /// Does every maximal run visit one of these comma-separated states?
    #[arg(long, value_name = "STATES")]
    inevitable: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TargetJson {
    Literal(String),
    Object(ConfigJson),
}

fn load_basis(model: &Pcs, path: &PathBuf) -> Result<UpwardClosedSet, CliError> {
    let targets: Vec<TargetJson> = serde_json::from_str(&read_file(path)?).map_err(CliError::input)?;
    let configs = targets
        .iter()
        .map(|t| match t {
            TargetJson::Literal(s) => model.parse_config(s),
            TargetJson::Object(c) => model.config_from_json(c).and_then(|c| model.check_config(&c).map(|_| c)),
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::input)?;
    Ok(UpwardClosedSet::from_configs(configs))
}

fn verify_error(e: VerifyError) -> CliError {
    match e {
        VerifyError::Budget { limit } => CliError::Budget(format!("search limit of {limit} nodes")),
        other => CliError::input(other),
    }
}

pub fn verify(args: VerifyArgs) -> Result<Outcome, CliError> {
    let model = load_model(&args.model)?;
    if args.semantics != Semantics::InternalSuperseding {
        return Err(verify_error(VerifyError::UnsupportedSemantics(args.semantics.name())));
    }
    let c0 = start(&model, args.from.as_deref())?;
    let sem = args.semantics;
    let limits = SearchLimits::from_env();
    let verdict = if let Some(path) = &args.cover {
        cover(&model, &c0, &load_basis(&model, path)?, sem)
    } else if let Some(target) = &args.reach {
        let d = model.parse_config(target).map_err(CliError::input)?;
        reach_exact(&model, &c0, &d, sem)
    } else if args.terminate {
        terminate(&model, &c0, sem, limits)
    } else {
        let names: Vec<&str> = args.inevitable.as_deref().unwrap_or_default().split(',').map(str::trim).collect();
        let goal = prio_channels::verify::state_set(&model, &names).map_err(CliError::input)?;
        inevitable_states(&model, &c0, &goal, sem, limits)
    }
    .map_err(verify_error)?;
    Ok(Outcome::holds(verdict.answer, verdict.to_value(&model)))
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").args(["replay", "steps"])))]
pub struct SimArgs {
    /// Model JSON file.
    model: PathBuf,
    /// Start configuration; defaults to the initial state with empty channels.
    #[arg(long, conflicts_with = "replay")]
    from: Option<String>,
    #[arg(long, default_value = "write-superseding", conflicts_with = "replay")]
    semantics: Semantics,
    /// Maximal number of steps.
    #[arg(long, default_value_t = 20)]
    steps: usize,
    #[arg(long, default_value_t = 0, conflicts_with = "replay")]
    seed: u64,
    /// Validate a stored run step by step.
    #[arg(long, value_name = "RUNFILE")]
    replay: Option<PathBuf>,
}

pub fn sim(args: SimArgs) -> Result<Outcome, CliError> {
    let model = load_model(&args.model)?;
    if let Some(path) = &args.replay {
        let file: RunFile = serde_json::from_str(&read_file(path)?).map_err(CliError::input)?;
        let run = model.run_from_json(&file).map_err(CliError::input)?;
        return Ok(match run.replay(&model) {
            Ok(()) => Outcome::ok(json!({ "valid": true, "steps": run.len(), "semantics": run.semantics })),
            Err(e) => Outcome::holds(
                false,
                json!({ "valid": false, "index": e.index, "semantics": run.semantics, "error": e.to_string() }),
            ),
        });
    }
    let c0 = start(&model, args.from.as_deref())?;
    let run = run_simulate(&model, &c0, args.semantics, args.steps, args.seed);
    Ok(Outcome::ok(serde_json::to_value(model.run_to_json(&run)).map_err(CliError::input)?))
}
