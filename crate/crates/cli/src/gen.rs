use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use prio_channels::gadgets::{
    build_reduction, build_s1, build_s2, build_s3, build_s4, build_strict_reliable_sim, build_weak_hardy,
    translate_lcs, ChannelSystem, Direction, Flavor, GadgetError, ReductionOptions, TinyTm,
};
use prio_channels::ordinals::Term;
use prio_channels::pcs::Pcs;
use prio_channels::Letter;
use serde_json::{json, Map, Value};

use crate::{read_file, write_file, CliError, Outcome, Output};

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct Level {
    /// Code level `d`; the gadget runs at level `d+1`.
    #[arg(long)]
    level: Letter,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FlavorArg {
    Plain,
    Weak,
    Dlcs,
    Strict,
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// Successor step `H^{α+1}(n) → H^α(n+1)`.
    S1(Level),
    /// Inverse successor step.
    S2(Level),
    /// Limit step `H^λ(n) → H^{λ_n}(n)`.
    S3(Level),
    /// Inverse limit step.
    S4(Level),
    /// Forward weak Hardy computer for `Ω_{d+1}`.
    HardyFwd(Level),
    /// Backward weak Hardy computer for `Ω_{d+1}`.
    HardyBwd(Level),
    /// Reduction from a space-bounded Turing machine.
    Reduction {
        /// Machine JSON file.
        #[arg(long)]
        tm: PathBuf,
        /// Initial ordinal; defaults to `Ω_d` (generate-only scale).
        #[arg(long)]
        alpha: Option<Term>,
        /// Initial counter; defaults to the machine size.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        level: Option<Letter>,
        /// Add a fourth channel bounding the number of simulated steps.
        #[arg(long)]
        time_budget: bool,
    },
    /// Translation of a lossy, weak, dynamic-lossy or reliable channel system.
    LcsSim {
        /// Channel system JSON file.
        #[arg(long)]
        source: PathBuf,
        /// Defaults to `dlcs` with a second-order channel, `plain` when lossy, `strict` otherwise.
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
    },
}

fn gadget_error(e: GadgetError) -> CliError {
    CliError::input(e)
}

pub fn run(args: GenArgs) -> Result<Outcome, CliError> {
    let mut info = Map::new();
    let pcs: Pcs = match args.kind {
        GenKind::S1(l)
        | GenKind::S2(l)
        | GenKind::S3(l)
        | GenKind::S4(l)
        | GenKind::HardyFwd(l)
        | GenKind::HardyBwd(l)
            if l.level >= Letter::MAX - 2 =>
        {
            return Err(CliError::Input(format!("level {} is too large", l.level)));
        }
        GenKind::S1(l) => gadget(build_s1(l.level), &mut info)?,
        GenKind::S2(l) => gadget(build_s2(l.level), &mut info)?,
        GenKind::S3(l) => gadget(build_s3(l.level), &mut info)?,
        GenKind::S4(l) => gadget(build_s4(l.level), &mut info)?,
        GenKind::HardyFwd(l) => gadget(build_weak_hardy(l.level, Direction::Fwd), &mut info)?,
        GenKind::HardyBwd(l) => gadget(build_weak_hardy(l.level, Direction::Bwd), &mut info)?,
        GenKind::Reduction { tm, alpha, n, level, time_budget } => {
            let tm = TinyTm::from_json(&read_file(&tm)?).map_err(gadget_error)?;
            let r = build_reduction(&tm, &ReductionOptions { alpha, n, level, time_budget }).map_err(gadget_error)?;
            info.insert("level".into(), json!(r.level));
            info.insert("alpha".into(), json!(r.alpha.to_string()));
            info.insert("n".into(), json!(r.n));
            info.insert("blocks".into(), json!(r.blocks));
            r.pcs
        }
        GenKind::LcsSim { source, flavor } => {
            let cs = ChannelSystem::from_json(&read_file(&source)?).map_err(gadget_error)?;
            let flavor = flavor.unwrap_or(match (&cs.second_order, cs.lossy) {
                (Some(_), _) => FlavorArg::Dlcs,
                (None, true) => FlavorArg::Plain,
                (None, false) => FlavorArg::Strict,
            });
            let t = match flavor {
                FlavorArg::Plain => translate_lcs(&cs, Flavor::Plain),
                FlavorArg::Weak => translate_lcs(&cs, Flavor::Weak),
                FlavorArg::Dlcs => translate_lcs(&cs, Flavor::Dlcs),
                FlavorArg::Strict => build_strict_reliable_sim(&cs),
            }
            .map_err(gadget_error)?;
            info.insert("separator".into(), json!(t.encoding.separator()));
            info.insert(
                "messages".into(),
                json!((0..cs.messages).map(|m| t.encoding.word(&[m]).to_text_at(t.pcs.level())).collect::<Vec<_>>()),
            );
            t.pcs
        }
    };
    info.insert("states".into(), json!(pcs.states().len()));
    info.insert("rules".into(), json!(pcs.rules().len()));
    let text = pcs.to_json();
    match &args.output.output {
        Some(path) => {
            write_file(path, &text)?;
            info.insert("output".into(), json!(path));
            Ok(Outcome::ok(Value::Object(info)))
        }
        None => {
            eprintln!("{}", Value::Object(info));
            Ok(Outcome::ok(serde_json::from_str(&text).map_err(CliError::input)?))
        }
    }
}

fn gadget(
    g: Result<prio_channels::gadgets::Gadget, GadgetError>,
    info: &mut Map<String, Value>,
) -> Result<Pcs, CliError> {
    let g = g.map_err(gadget_error)?;
    info.insert("entry".into(), json!(g.entry));
    info.insert("exit".into(), json!(g.exit));
    Ok(g.pcs)
}
