use std::collections::VecDeque;

use super::{require_internal, Certificate, UpwardClosedSet, Verdict, VerifyError};
use crate::order::pleq_witness;
use crate::pcs::{config_leq_unchecked, Config, Label, Op, Pcs, PcsError, Run, RunStep, Semantics};
use crate::word::{Letter, Word};

/// Strictly decreasing words over `{0..=a}`, the empty word included.
fn strictly_decreasing(a: Letter) -> Vec<Word> {
    let n = usize::from(a) + 1;
    (0..1u32 << n).map(|mask| (0..n).rev().filter(|&b| mask >> b & 1 == 1).map(|b| b as Letter).collect()).collect()
}

/// Minimal configurations that reach `↑target` by one reliable step of rule `rule`.
pub fn pre_basis(model: &Pcs, rule: usize, target: &Config) -> Result<Vec<Config>, PcsError> {
    model.check_config(target)?;
    let r = *model.rule(rule)?;
    if r.to != target.state {
        return Ok(Vec::new());
    }
    let y = &target.channels[r.channel];
    let mut base = target.clone();
    base.state = r.from;
    match r.op {
        Op::Read => {
            let mut letters = vec![r.letter];
            letters.extend_from_slice(y);
            Ok(vec![base.with_channel(r.channel, Word::new(letters))])
        }
        Op::Write => {
            if y.last() != Some(r.letter) {
                return Ok(Vec::new());
            }
            let u = &y[..y.len() - 1];
            let mut set = UpwardClosedSet::new();
            let mut candidates: Vec<Config> = strictly_decreasing(r.letter)
                .into_iter()
                .map(|z| base.with_channel(r.channel, Word::from(u).concat(&z)))
                .collect();
            // shorter first, then lexicographic: the least representative survives
            candidates.sort_by(|a, b| a.total_len().cmp(&b.total_len()).then_with(|| a.cmp(b)));
            for c in candidates {
                set.insert(c);
            }
            Ok(set.sorted().basis().to_vec())
        }
    }
}

/// Internal superseding steps leading from `from` down to `to`, when `to ≤_♯ from`.
pub fn step_down(from: &Config, to: &Config) -> Option<Vec<RunStep>> {
    if from.state != to.state || from.channels.len() != to.channels.len() {
        return None;
    }
    let mut steps = Vec::new();
    let mut current = from.clone();
    for (ch, target) in to.channels.iter().enumerate() {
        let source = from.channels[ch].clone();
        let embedding = pleq_witness(target, &source)?;
        for p in embedding.supersede_path(source.len()) {
            let word = current.channels[ch].without(p);
            current = current.with_channel(ch, word);
            steps.push(RunStep { label: Label::Internal { channel: ch, position: p + 1 }, config: current.clone() });
        }
    }
    debug_assert_eq!(&current, to);
    Some(steps)
}

struct Node {
    config: Config,
    via: Option<(usize, usize)>,
}

type Saturation = Result<(Vec<Node>, usize), Vec<Config>>;

/// Backward saturation from `target`; returns the arena and the index of a basis
/// node below `c0`, or the saturated basis.
fn saturate(model: &Pcs, c0: &Config, target: &UpwardClosedSet) -> Result<Saturation, PcsError> {
    let mut arena: Vec<Node> = Vec::new();
    let mut live: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    for b in target.basis() {
        model.check_config(b)?;
        if live.iter().any(|&k| config_leq_unchecked(&arena[k].config, b)) {
            continue;
        }
        live.retain(|&k| !config_leq_unchecked(b, &arena[k].config));
        arena.push(Node { config: b.clone(), via: None });
        live.push(arena.len() - 1);
        queue.push_back(arena.len() - 1);
    }
    if let Some(&hit) = live.iter().find(|&&k| config_leq_unchecked(&arena[k].config, c0)) {
        return Ok(Ok((arena, hit)));
    }
    while let Some(n) = queue.pop_front() {
        if !live.contains(&n) {
            continue;
        }
        let config = arena[n].config.clone();
        for (rule, r) in model.rules().iter().enumerate() {
            if r.to != config.state {
                continue;
            }
            for p in pre_basis(model, rule, &config)? {
                if live.iter().any(|&k| config_leq_unchecked(&arena[k].config, &p)) {
                    continue;
                }
                live.retain(|&k| !config_leq_unchecked(&p, &arena[k].config));
                let below_start = config_leq_unchecked(&p, c0);
                arena.push(Node { config: p, via: Some((rule, n)) });
                let id = arena.len() - 1;
                live.push(id);
                if below_start {
                    return Ok(Ok((arena, id)));
                }
                queue.push_back(id);
            }
        }
    }
    let mut basis: Vec<Config> = live.into_iter().map(|k| arena[k].config.clone()).collect();
    basis.sort();
    Ok(Err(basis))
}

/// Replays the backward chain from `node` forward, starting at `c0`.
fn witness(model: &Pcs, c0: &Config, arena: &[Node], mut node: usize) -> Run {
    let mut run = Run::empty(Semantics::InternalSuperseding, c0.clone());
    loop {
        let down = step_down(run.last(), &arena[node].config).expect("basis node lies below the current config");
        run.steps.extend(down);
        match arena[node].via {
            None => return run,
            Some((rule, parent)) => {
                let next = model
                    .apply(run.last(), Label::rule(rule), Semantics::Reliable)
                    .expect("predecessor enables its rule");
                run.push(Label::rule(rule), next);
                node = parent;
            }
        }
    }
}

/// Does `c0` reach `↑target` under internal superseding?
pub fn cover(model: &Pcs, c0: &Config, target: &UpwardClosedSet, sem: Semantics) -> Result<Verdict, VerifyError> {
    require_internal(sem)?;
    model.check_config(c0)?;
    Ok(match saturate(model, c0, target)? {
        Ok((arena, hit)) => Verdict { answer: true, certificate: Certificate::Run(witness(model, c0, &arena, hit)) },
        Err(basis) => Verdict { answer: false, certificate: Certificate::Basis(basis) },
    })
}

/// Exact reachability of `d`; the witness ends in `d` itself.
pub fn reach_exact(model: &Pcs, c0: &Config, d: &Config, sem: Semantics) -> Result<Verdict, VerifyError> {
    let mut verdict = cover(model, c0, &UpwardClosedSet::from_configs([d.clone()]), sem)?;
    if let Certificate::Run(run) = &mut verdict.certificate {
        let down = step_down(run.last(), d).expect("cover witness ends above the target");
        run.steps.extend(down);
    }
    Ok(verdict)
}
