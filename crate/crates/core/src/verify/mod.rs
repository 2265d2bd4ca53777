//! Decision procedures under the internal-superseding semantics: backward
//! coverability over upward-closed sets, termination and control-state
//! inevitability via finite domination trees, and run normalization.

mod backward;
mod normalize;
mod trees;

pub use backward::{cover, pre_basis, reach_exact, step_down};
pub use normalize::normalize_run;
pub use trees::{inevitable_states, terminate};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::pcs::{config_leq_unchecked, Config, ConfigJson, Pcs, PcsError, ReplayError, Run, RunFile, Semantics};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{0} semantics is not supported by verification, use internal-superseding")]
    UnsupportedSemantics(&'static str),
    #[error(transparent)]
    Model(#[from] PcsError),
    #[error("search limit of {limit} nodes exhausted")]
    Budget { limit: usize },
    #[error("run must start with all channels empty")]
    NonEmptyStart,
    #[error("run must use {expected} steps, found {found}")]
    WrongSemantics { expected: &'static str, found: &'static str },
    #[error(transparent)]
    InvalidRun(#[from] ReplayError),
}

/// Node limit for forward tree searches; `PCS_BUDGET_STEPS` overrides the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: usize,
}

impl SearchLimits {
    pub const DEFAULT_NODES: usize = 1_000_000;

    pub fn from_env() -> Self {
        let max_nodes =
            std::env::var("PCS_BUDGET_STEPS").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(Self::DEFAULT_NODES);
        SearchLimits { max_nodes }
    }
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits::from_env()
    }
}

pub(crate) fn require_internal(sem: Semantics) -> Result<(), VerifyError> {
    if sem == Semantics::InternalSuperseding {
        Ok(())
    } else {
        Err(VerifyError::UnsupportedSemantics(sem.name()))
    }
}

/// Finite antichain standing for its upward closure under `≤_♯`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UpwardClosedSet {
    basis: Vec<Config>,
}

impl UpwardClosedSet {
    pub fn new() -> Self {
        UpwardClosedSet::default()
    }

    pub fn from_configs(configs: impl IntoIterator<Item = Config>) -> Self {
        let mut set = UpwardClosedSet::new();
        for c in configs {
            set.insert(c);
        }
        set
    }

    pub fn basis(&self) -> &[Config] {
        &self.basis
    }

    pub fn contains(&self, c: &Config) -> bool {
        self.basis.iter().any(|b| config_leq_unchecked(b, c))
    }

    /// Adds `c` unless already covered; drops basis elements above it.
    /// Returns whether the set grew.
    pub fn insert(&mut self, c: Config) -> bool {
        if self.contains(&c) {
            return false;
        }
        self.basis.retain(|b| !config_leq_unchecked(&c, b));
        self.basis.push(c);
        true
    }

    pub fn is_antichain(&self) -> bool {
        self.basis
            .iter()
            .enumerate()
            .all(|(i, a)| self.basis.iter().enumerate().all(|(j, b)| i == j || !config_leq_unchecked(a, b)))
    }

    pub fn sorted(mut self) -> Self {
        self.basis.sort();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// A forward run; for coverability it ends inside the target.
    Run(Run),
    /// The saturated backward basis; none of its elements lies below the start.
    Basis(Vec<Config>),
    /// `run.configs()[i] ≤_♯ run.configs()[j]` with `i < j`.
    Domination { run: Run, i: usize, j: usize },
    /// A run ending in a deadlocked configuration.
    Deadlock(Run),
    /// The whole finite search tree was explored.
    Exhausted { explored: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: bool,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CertificateJson {
    Run { run: RunFile },
    Basis { basis: Vec<ConfigJson> },
    Domination { run: RunFile, i: usize, j: usize },
    Deadlock { run: RunFile },
    Exhausted { explored: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub answer: bool,
    pub certificate: CertificateJson,
}

impl Verdict {
    pub fn to_json(&self, model: &Pcs) -> VerdictJson {
        let certificate = match &self.certificate {
            Certificate::Run(run) => CertificateJson::Run { run: model.run_to_json(run) },
            Certificate::Basis(basis) => {
                CertificateJson::Basis { basis: basis.iter().map(|c| model.config_to_json(c)).collect() }
            }
            Certificate::Domination { run, i, j } => {
                CertificateJson::Domination { run: model.run_to_json(run), i: *i, j: *j }
            }
            Certificate::Deadlock(run) => CertificateJson::Deadlock { run: model.run_to_json(run) },
            Certificate::Exhausted { explored } => CertificateJson::Exhausted { explored: *explored },
        };
        VerdictJson { answer: self.answer, certificate }
    }

    pub fn to_value(&self, model: &Pcs) -> Value {
        serde_json::to_value(self.to_json(model)).unwrap_or_else(|e| json!({ "error": e.to_string() }))
    }

    /// Replays the certificate's run, if it has one, and checks its shape.
    pub fn check(&self, model: &Pcs) -> Result<(), VerifyError> {
        match &self.certificate {
            Certificate::Run(run) | Certificate::Deadlock(run) => run.replay(model)?,
            Certificate::Domination { run, i, j } => {
                run.replay(model)?;
                let configs: Vec<&Config> = run.configs().collect();
                let ok = i < j && *j < configs.len() && config_leq_unchecked(configs[*i], configs[*j]);
                if !ok {
                    return Err(VerifyError::InvalidRun(ReplayError { index: *j, semantics: run.semantics.name() }));
                }
            }
            Certificate::Basis(_) | Certificate::Exhausted { .. } => {}
        }
        Ok(())
    }
}

/// States named in `names`, resolved against the model.
pub fn state_set(model: &Pcs, names: &[&str]) -> Result<BTreeSet<usize>, PcsError> {
    names.iter().map(|n| model.state_index(n)).collect()
}
