use std::collections::HashSet;

use super::VerifyError;
use crate::pcs::{Label, Op, Pcs, Run, Semantics};

/// Turns an internal-superseding run from empty channels into a
/// write-superseding run with the same endpoints.
///
/// Every written message is tracked as a token. A token that the input run
/// eventually supersedes is doomed; each write of the output drops the longest
/// suffix of doomed tokens with priority at most the written letter. Doomed
/// tokens disappear no later than in the input run, so reads see the same head
/// and the final contents agree.
pub fn normalize_run(model: &Pcs, run: &Run) -> Result<Run, VerifyError> {
    if run.semantics != Semantics::InternalSuperseding {
        return Err(VerifyError::WrongSemantics {
            expected: Semantics::InternalSuperseding.name(),
            found: run.semantics.name(),
        });
    }
    if run.start.channels.iter().any(|w| !w.is_empty()) {
        return Err(VerifyError::NonEmptyStart);
    }
    run.replay(model)?;

    // first pass: token identities per channel, and which tokens get superseded
    let mut queues: Vec<Vec<usize>> = vec![Vec::new(); model.channels().len()];
    let mut fresh = 0;
    let mut doomed = HashSet::new();
    for step in &run.steps {
        match step.label {
            Label::Rule { rule, .. } => {
                let r = model.rules()[rule];
                match r.op {
                    Op::Write => {
                        queues[r.channel].push(fresh);
                        fresh += 1;
                    }
                    Op::Read => {
                        queues[r.channel].remove(0);
                    }
                }
            }
            Label::Internal { channel, position } => {
                doomed.insert(queues[channel].remove(position - 1));
            }
        }
    }

    // second pass: replay rule steps only, dropping doomed suffixes at writes
    let mut out = Run::empty(Semantics::WriteSuperseding, run.start.clone());
    let mut tokens: Vec<Vec<(usize, u8)>> = vec![Vec::new(); model.channels().len()];
    let mut fresh = 0;
    for step in &run.steps {
        let Label::Rule { rule, .. } = step.label else { continue };
        let r = model.rules()[rule];
        let queue = &mut tokens[r.channel];
        let label = match r.op {
            Op::Write => {
                let dropped =
                    queue.iter().rev().take_while(|(id, letter)| doomed.contains(id) && *letter <= r.letter).count();
                queue.truncate(queue.len() - dropped);
                queue.push((fresh, r.letter));
                fresh += 1;
                Label::Rule { rule, dropped }
            }
            Op::Read => {
                queue.remove(0);
                Label::rule(rule)
            }
        };
        let next = model.apply(out.last(), label, Semantics::WriteSuperseding).ok_or(VerifyError::InvalidRun(
            crate::pcs::ReplayError { index: out.len(), semantics: Semantics::WriteSuperseding.name() },
        ))?;
        out.push(label, next);
    }
    debug_assert_eq!(out.last(), run.last());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcs::{example_model, run_simulate};

    #[test]
    fn folds_superseding_into_writes() {
        let m = example_model();
        let c = |s: &str, x: &str| m.config(s, &[x]).unwrap();
        let mut run = Run::empty(Semantics::InternalSuperseding, c("p", ""));
        run.push(Label::rule(0), c("q", "1"));
        run.push(Label::rule(3), c("q", "13"));
        run.push(Label::Internal { channel: 0, position: 1 }, c("q", "3"));
        let out = normalize_run(&m, &run).unwrap();
        let mut expected = Run::empty(Semantics::WriteSuperseding, c("p", ""));
        expected.push(Label::rule(0), c("q", "1"));
        expected.push(Label::Rule { rule: 3, dropped: 1 }, c("q", "3"));
        assert_eq!(out, expected);
    }

    #[test]
    fn reliable_runs_are_unchanged() {
        let m = example_model();
        let run = run_simulate(&m, &m.empty_config(0), Semantics::Reliable, 10, 1);
        let as_internal = Run { semantics: Semantics::InternalSuperseding, ..run.clone() };
        let out = normalize_run(&m, &as_internal).unwrap();
        assert_eq!(out.steps, run.steps);
    }

    #[test]
    fn rejects_non_empty_start() {
        let m = example_model();
        let run = Run::empty(Semantics::InternalSuperseding, m.config("q", &["01"]).unwrap());
        assert_eq!(normalize_run(&m, &run), Err(VerifyError::NonEmptyStart));
    }

    #[test]
    fn sampled_runs_normalize() {
        let m = example_model();
        for seed in 0..200 {
            let run = run_simulate(&m, &m.empty_config(0), Semantics::InternalSuperseding, 25, seed);
            let out = normalize_run(&m, &run).unwrap();
            assert_eq!(out.replay(&m), Ok(()));
            assert_eq!(out.last(), run.last());
            assert_eq!(out.start, run.start);
        }
    }
}
