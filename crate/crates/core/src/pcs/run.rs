use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Config, Label, Pcs, Semantics};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStep {
    pub label: Label,
    pub config: Config,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub semantics: Semantics,
    pub start: Config,
    pub steps: Vec<RunStep>,
    /// Set when the run stopped early because no step was enabled.
    pub deadlocked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {index} is not a valid {semantics} step")]
pub struct ReplayError {
    pub index: usize,
    pub semantics: &'static str,
}

impl Run {
    pub fn empty(semantics: Semantics, start: Config) -> Run {
        Run { semantics, start, steps: Vec::new(), deadlocked: false }
    }

    pub fn last(&self) -> &Config {
        self.steps.last().map_or(&self.start, |s| &s.config)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn configs(&self) -> impl Iterator<Item = &Config> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.config))
    }

    pub fn push(&mut self, label: Label, config: Config) {
        self.steps.push(RunStep { label, config });
    }

    /// Checks every step against the model; reports the first invalid index.
    pub fn replay(&self, model: &Pcs) -> Result<(), ReplayError> {
        let err = |index| ReplayError { index, semantics: self.semantics.name() };
        if model.check_config(&self.start).is_err() {
            return Err(err(0));
        }
        let mut current = &self.start;
        for (i, step) in self.steps.iter().enumerate() {
            if model.apply(current, step.label, self.semantics).as_ref() != Some(&step.config) {
                return Err(err(i));
            }
            current = &step.config;
        }
        Ok(())
    }
}

/// A pseudorandom run of at most `max_steps` steps, reproducible from `seed`.
pub fn run_simulate(model: &Pcs, c0: &Config, sem: Semantics, max_steps: usize, seed: u64) -> Run {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = Run::empty(sem, c0.clone());
    for _ in 0..max_steps {
        let mut succ = model.successors_unchecked(run.last(), sem);
        if succ.is_empty() {
            run.deadlocked = true;
            break;
        }
        let (label, config) = succ.swap_remove(rng.gen_range(0..succ.len()));
        run.push(label, config);
    }
    run
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_configs: usize,
    pub max_channel_len: usize,
}

impl Bounds {
    pub fn new(max_configs: usize, max_channel_len: usize) -> Self {
        Bounds { max_configs, max_channel_len }
    }
}

#[derive(Debug, Clone)]
pub struct Reachable {
    pub configs: HashSet<Config>,
    /// Set when a bound stopped the exploration of some successor.
    pub truncated: bool,
}

fn within(c: &Config, bounds: &Bounds) -> bool {
    c.channels.iter().all(|w| w.len() <= bounds.max_channel_len)
}

/// Breadth-first closure of the successor relation within `bounds`.
pub fn enumerate_reachable(model: &Pcs, c0: &Config, sem: Semantics, bounds: Bounds) -> Reachable {
    let mut configs = HashSet::from([c0.clone()]);
    let mut truncated = false;
    let mut queue = VecDeque::from([c0.clone()]);
    while let Some(c) = queue.pop_front() {
        for (_, next) in model.successors_unchecked(&c, sem) {
            if configs.contains(&next) {
                continue;
            }
            if !within(&next, &bounds) || configs.len() >= bounds.max_configs {
                truncated = true;
                continue;
            }
            configs.insert(next.clone());
            queue.push_back(next);
        }
    }
    Reachable { configs, truncated }
}

/// Breadth-first search for a shortest run to a configuration satisfying `goal`.
/// Returns the run (if any) and whether a bound cut the search short.
pub fn find_run(
    model: &Pcs,
    c0: &Config,
    sem: Semantics,
    bounds: Bounds,
    goal: impl Fn(&Config) -> bool,
) -> (Option<Run>, bool) {
    let mut parent: HashMap<Config, Option<(Label, Config)>> = HashMap::from([(c0.clone(), None)]);
    let mut queue = VecDeque::from([c0.clone()]);
    let mut truncated = false;
    let mut found = None;
    if goal(c0) {
        found = Some(c0.clone());
    }
    'search: while found.is_none() {
        let Some(c) = queue.pop_front() else { break };
        for (label, next) in model.successors_unchecked(&c, sem) {
            if parent.contains_key(&next) {
                continue;
            }
            if !within(&next, &bounds) || parent.len() >= bounds.max_configs {
                truncated = true;
                continue;
            }
            parent.insert(next.clone(), Some((label, c.clone())));
            if goal(&next) {
                found = Some(next);
                break 'search;
            }
            queue.push_back(next);
        }
    }
    let run = found.map(|end| {
        let mut steps = Vec::new();
        let mut cur = end;
        while let Some(Some((label, prev))) = parent.get(&cur) {
            steps.push(RunStep { label: *label, config: cur.clone() });
            cur = prev.clone();
        }
        steps.reverse();
        Run { semantics: sem, start: c0.clone(), steps, deadlocked: false }
    });
    (run, truncated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcs::{example_model, Label};

    #[test]
    fn example_run_replays() {
        let m = example_model();
        let c = |s: &str, x: &str| m.config(s, &[x]).unwrap();
        let mut run = Run::empty(Semantics::WriteSuperseding, c("p", "0200"));
        run.push(Label::Rule { rule: 0, dropped: 2 }, c("q", "021"));
        run.push(Label::Rule { rule: 3, dropped: 2 }, c("q", "03"));
        run.push(Label::Rule { rule: 3, dropped: 0 }, c("q", "033"));
        run.push(Label::Rule { rule: 3, dropped: 3 }, c("q", "3"));
        run.push(Label::rule(1), c("p", ""));
        assert_eq!(run.replay(&m), Ok(()));

        let mut bad = Run::empty(Semantics::WriteSuperseding, c("p", "0200"));
        bad.push(Label::Rule { rule: 0, dropped: 3 }, c("q", "01"));
        assert_eq!(bad.replay(&m).unwrap_err().index, 0);
    }

    #[test]
    fn simulation_is_deterministic() {
        let m = example_model();
        let c0 = m.config("p", &[""]).unwrap();
        let a = run_simulate(&m, &c0, Semantics::Reliable, 20, 7);
        let b = run_simulate(&m, &c0, Semantics::Reliable, 20, 7);
        assert_eq!(a, b);
        assert_eq!(a.replay(&m), Ok(()));
        assert!(run_simulate(&m, &c0, Semantics::Reliable, 0, 7).is_empty());
    }

    #[test]
    fn simulation_can_reach_empty_channel() {
        let m = example_model();
        let c0 = m.config("p", &["0200"]).unwrap();
        let target = m.config("p", &[""]).unwrap();
        let hit = (0..200).any(|seed| {
            let run = run_simulate(&m, &c0, Semantics::WriteSuperseding, 5, seed);
            run.len() == 5 && *run.last() == target
        });
        assert!(hit);
    }

    #[test]
    fn enumeration_examples() {
        let m = example_model();
        let c0 = m.config("p", &[""]).unwrap();
        let r = enumerate_reachable(&m, &c0, Semantics::WriteSuperseding, Bounds::new(1000, 6));
        assert!(r.configs.contains(&m.config("q", &["3"]).unwrap()));
        assert!(r.configs.contains(&c0));
        let r = enumerate_reachable(&m, &c0, Semantics::WriteSuperseding, Bounds::new(0, 6));
        assert_eq!(r.configs.len(), 1);
        assert!(r.truncated);

        let lone = crate::pcs::Pcs::new(1, ["c"], ["p"]).unwrap();
        let r = enumerate_reachable(&lone, &lone.empty_config(0), Semantics::Reliable, Bounds::new(10, 3));
        assert_eq!(r.configs.len(), 1);
        assert!(!r.truncated);
    }

    #[test]
    fn shortest_run_found() {
        let m = example_model();
        let c0 = m.config("p", &[""]).unwrap();
        let target = m.config("q", &["3"]).unwrap();
        let (run, _) = find_run(&m, &c0, Semantics::WriteSuperseding, Bounds::new(1000, 5), |c| *c == target);
        let run = run.unwrap();
        assert_eq!(run.len(), 2);
        assert_eq!(run.replay(&m), Ok(()));
    }
}
