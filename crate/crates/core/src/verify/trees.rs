use std::collections::{BTreeSet, HashSet};

use super::{require_internal, Certificate, SearchLimits, Verdict, VerifyError};
use crate::pcs::{config_leq_unchecked, Config, Label, Pcs, Run, RunStep, Semantics};

struct Frame {
    config: Config,
    label: Option<Label>,
    successors: Vec<(Label, Config)>,
    next: usize,
}

fn path_run(path: &[Frame], tail: Option<(Label, Config)>) -> Run {
    let mut run = Run::empty(Semantics::InternalSuperseding, path[0].config.clone());
    for f in &path[1..] {
        run.steps.push(RunStep { label: f.label.expect("non-root frame"), config: f.config.clone() });
    }
    if let Some((label, config)) = tail {
        run.push(label, config);
    }
    run
}

enum Outcome {
    Exhausted(usize),
    Dominated(Run, usize),
    Deadlock(Run),
}

/// Depth-first tree over successors with ancestor domination checks.
/// Configurations in `prune` are leaves that count as success.
/// With `deadlock_fails`, a deadlocked non-pruned node ends the search.
fn domination_tree(
    model: &Pcs,
    c0: &Config,
    prune: impl Fn(&Config) -> bool,
    deadlock_fails: bool,
    limits: SearchLimits,
) -> Result<Outcome, VerifyError> {
    let mut done: HashSet<Config> = HashSet::new();
    let frame = |config: Config, label| {
        let successors = model.successors_unchecked(&config, Semantics::InternalSuperseding);
        Frame { config, label, successors, next: 0 }
    };
    let mut path = vec![frame(c0.clone(), None)];
    let mut explored = 1;
    if deadlock_fails && path[0].successors.is_empty() {
        return Ok(Outcome::Deadlock(path_run(&path, None)));
    }
    while let Some(top) = path.last_mut() {
        if top.next == top.successors.len() {
            let f = path.pop().expect("non-empty path");
            done.insert(f.config);
            continue;
        }
        let (label, next) = top.successors[top.next].clone();
        top.next += 1;
        if prune(&next) || done.contains(&next) {
            continue;
        }
        if let Some(i) = path.iter().position(|f| config_leq_unchecked(&f.config, &next)) {
            return Ok(Outcome::Dominated(path_run(&path, Some((label, next))), i));
        }
        explored += 1;
        if explored > limits.max_nodes {
            return Err(VerifyError::Budget { limit: limits.max_nodes });
        }
        path.push(frame(next, Some(label)));
        if deadlock_fails && path.last().is_some_and(|f| f.successors.is_empty()) {
            return Ok(Outcome::Deadlock(path_run(&path, None)));
        }
    }
    Ok(Outcome::Exhausted(explored))
}

/// Is every run from `c0` finite?
pub fn terminate(model: &Pcs, c0: &Config, sem: Semantics, limits: SearchLimits) -> Result<Verdict, VerifyError> {
    require_internal(sem)?;
    model.check_config(c0)?;
    Ok(match domination_tree(model, c0, |_| false, false, limits)? {
        Outcome::Exhausted(explored) => Verdict { answer: true, certificate: Certificate::Exhausted { explored } },
        Outcome::Dominated(run, i) => {
            let j = run.len();
            Verdict { answer: false, certificate: Certificate::Domination { run, i, j } }
        }
        Outcome::Deadlock(_) => unreachable!("deadlocks do not fail termination"),
    })
}

/// Does every maximal run from `c0` visit a state in `goal`?
pub fn inevitable_states(
    model: &Pcs,
    c0: &Config,
    goal: &BTreeSet<usize>,
    sem: Semantics,
    limits: SearchLimits,
) -> Result<Verdict, VerifyError> {
    require_internal(sem)?;
    model.check_config(c0)?;
    if goal.contains(&c0.state) {
        return Ok(Verdict { answer: true, certificate: Certificate::Exhausted { explored: 1 } });
    }
    Ok(match domination_tree(model, c0, |c| goal.contains(&c.state), true, limits)? {
        Outcome::Exhausted(explored) => Verdict { answer: true, certificate: Certificate::Exhausted { explored } },
        Outcome::Dominated(run, i) => {
            let j = run.len();
            Verdict { answer: false, certificate: Certificate::Domination { run, i, j } }
        }
        Outcome::Deadlock(run) => Verdict { answer: false, certificate: Certificate::Deadlock(run) },
    })
}
