use std::path::PathBuf;

use clap::Args;
use prio_channels::order::{
    gen_pleq, pleq_witness, FiniteEquality, LabelOrder, LabeledLetter, SubwordOrder, TableOrder,
};
use prio_channels::{Letter, Word};
use serde_json::json;

use crate::{read_file, CliError, Outcome};

#[derive(Debug, Args)]
pub struct OrderArgs {
    /// Left word, e.g. `201`.
    x: String,
    /// Right word, e.g. `22011`.
    y: String,
    /// Highest priority `d`.
    #[arg(long)]
    level: Letter,
    /// Labeled words `a:label,...` compared under `eq`, `subword:ALPHABET` or `table:FILE`.
    #[arg(long, value_name = "SPEC")]
    generalized: Option<String>,
}

fn labeled(text: &str, level: Letter) -> Result<Vec<LabeledLetter<String>>, CliError> {
    let text = text.trim();
    if text.is_empty() || text == "ε" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let (p, label) = item
                .split_once(':')
                .ok_or_else(|| CliError::Input(format!("expected priority:label, got {item:?}")))?;
            let priority: Letter = p.trim().parse().map_err(|_| CliError::Input(format!("bad priority {p:?}")))?;
            if priority > level {
                return Err(CliError::Input(format!("letter {priority} exceeds level {level}")));
            }
            Ok(LabeledLetter::new(priority, label.to_string()))
        })
        .collect()
}

fn generalized(args: &OrderArgs, spec: &str) -> Result<Outcome, CliError> {
    let x = labeled(&args.x, args.level)?;
    let y = labeled(&args.y, args.level)?;
    let holds = match spec.split_once(':') {
        None if spec == "eq" => {
            decide(&x, &y, &FiniteEquality::uniform(args.level, x.iter().chain(&y).map(|l| l.label.clone())))?
        }
        Some(("subword", alphabet)) => decide(&x, &y, &SubwordOrder::uniform(args.level, alphabet))?,
        Some(("table", file)) => {
            let text = read_file(&PathBuf::from(file))?;
            decide(&x, &y, &serde_json::from_str::<TableOrder>(&text).map_err(CliError::input)?)?
        }
        _ => return Err(CliError::Input(format!("unknown label order {spec:?}"))),
    };
    Ok(Outcome::holds(holds, json!({ "pleq": holds })))
}

fn decide(
    x: &[LabeledLetter<String>],
    y: &[LabeledLetter<String>],
    order: &impl LabelOrder<String>,
) -> Result<bool, CliError> {
    gen_pleq(x, y, order).map_err(CliError::input)
}

pub fn run(args: OrderArgs) -> Result<Outcome, CliError> {
    if let Some(spec) = &args.generalized {
        return generalized(&args, spec);
    }
    let x = Word::parse(&args.x, args.level).map_err(CliError::input)?;
    let y = Word::parse(&args.y, args.level).map_err(CliError::input)?;
    Ok(match pleq_witness(&x, &y) {
        Some(e) => {
            let gaps: Vec<String> = e.gaps(&y).iter().map(|g| g.to_text_at(args.level)).collect();
            Outcome::ok(json!({ "pleq": true, "witness": { "positions": e.positions, "gaps": gaps } }))
        }
        None => Outcome::holds(false, json!({ "pleq": false })),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_words() {
        let x = labeled("1:b,0:z", 1).unwrap();
        assert_eq!(x, vec![LabeledLetter::new(1, "b".to_string()), LabeledLetter::new(0, "z".to_string())]);
        assert!(labeled("ε", 0).unwrap().is_empty());
        assert!(labeled("2:a", 1).is_err());
        assert!(labeled("1b", 1).is_err());
    }
}
