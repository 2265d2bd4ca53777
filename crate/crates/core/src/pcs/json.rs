//! JSON forms of models, configurations and runs. Names are used on the wire;
//! indices are used in memory.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Config, Label, Op, Pcs, PcsError, Rule, Run, RunStep, Semantics};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSource {
    pub from: String,
    pub channel: String,
    pub op: Op,
    pub letter: u32,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSource {
    pub level: Letter,
    pub channels: Vec<String>,
    pub states: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    pub rules: Vec<RuleSource>,
}

impl ModelSource {
    /// Resolves names, collecting every violation.
    pub fn build(&self) -> Result<Pcs, PcsError> {
        let mut errors = Vec::new();
        let lookup = |names: &[String], name: &str| names.iter().position(|n| n == name);
        let mut rules = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            let from = lookup(&self.states, &r.from);
            let to = lookup(&self.states, &r.to);
            let channel = lookup(&self.channels, &r.channel);
            for (found, name) in [(from, &r.from), (to, &r.to)] {
                if found.is_none() {
                    errors.push(PcsError::UnknownState(name.clone()));
                }
            }
            if channel.is_none() {
                errors.push(PcsError::UnknownChannel(r.channel.clone()));
            }
            if r.letter > u32::from(self.level) {
                errors.push(PcsError::LetterOutOfRange { rule: i, letter: r.letter, level: self.level });
            }
            if let (Some(from), Some(to), Some(channel)) = (from, to, channel) {
                rules.push(Rule { from, channel, op: r.op, letter: r.letter.min(255) as Letter, to });
            }
        }
        let initial = match &self.initial {
            Some(name) => match lookup(&self.states, name) {
                Some(i) => Some(i),
                None => {
                    errors.push(PcsError::UnknownState(name.clone()));
                    None
                }
            },
            None => None,
        };
        let pcs = Pcs::from_parts(self.level, self.channels.clone(), self.states.clone(), initial, rules);
        if let Err(e) = pcs.validate() {
            match e {
                PcsError::Invalid(v) => errors.extend(v),
                e => errors.push(e),
            }
        }
        match errors.len() {
            0 => Ok(pcs),
            1 => Err(errors.remove(0)),
            _ => Err(PcsError::Invalid(errors)),
        }
    }
}

impl Pcs {
    pub fn to_source(&self) -> ModelSource {
        ModelSource {
            level: self.level,
            channels: self.channels.clone(),
            states: self.states.clone(),
            initial: self.initial.map(|i| self.states[i].clone()),
            rules: self
                .rules
                .iter()
                .map(|r| RuleSource {
                    from: self.states[r.from].clone(),
                    channel: self.channels[r.channel].clone(),
                    op: r.op,
                    letter: r.letter.into(),
                    to: self.states[r.to].clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Pcs, PcsError> {
        let source: ModelSource = serde_json::from_str(text).map_err(|e| PcsError::Syntax(e.to_string()))?;
        source.build()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_source()).expect("model serializes")
    }

    pub fn config_to_json(&self, c: &Config) -> ConfigJson {
        ConfigJson {
            state: self.states[c.state].clone(),
            channels: self
                .channels
                .iter()
                .zip(&c.channels)
                .map(|(name, w)| (name.clone(), w.to_text_at(self.level)))
                .collect(),
        }
    }

    pub fn config_from_json(&self, json: &ConfigJson) -> Result<Config, PcsError> {
        for name in json.channels.keys() {
            self.channel_index(name)?;
        }
        let channels = self
            .channels
            .iter()
            .map(|name| json.channels.get(name).map_or(Ok(Word::empty()), |t| Word::parse(t, self.level)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Config::new(self.state_index(&json.state)?, channels))
    }

    fn label_to_json(&self, label: Label) -> LabelJson {
        match label {
            Label::Rule { rule, dropped } => LabelJson::Rule { rule, dropped },
            Label::Internal { channel, position } => {
                LabelJson::Internal { channel: self.channels[channel].clone(), position }
            }
        }
    }

    fn label_from_json(&self, label: &LabelJson) -> Result<Label, PcsError> {
        Ok(match label {
            LabelJson::Rule { rule, dropped } => {
                self.rule(*rule)?;
                Label::Rule { rule: *rule, dropped: *dropped }
            }
            LabelJson::Internal { channel, position } => {
                Label::Internal { channel: self.channel_index(channel)?, position: *position }
            }
        })
    }

    pub fn run_to_json(&self, run: &Run) -> RunFile {
        RunFile {
            start: self.config_to_json(&run.start),
            semantics: run.semantics,
            steps: run
                .steps
                .iter()
                .map(|s| StepJson { label: self.label_to_json(s.label), config: self.config_to_json(&s.config) })
                .collect(),
            deadlocked: run.deadlocked,
        }
    }

    pub fn run_from_json(&self, file: &RunFile) -> Result<Run, PcsError> {
        let steps = file
            .steps
            .iter()
            .map(|s| Ok(RunStep { label: self.label_from_json(&s.label)?, config: self.config_from_json(&s.config)? }))
            .collect::<Result<Vec<_>, PcsError>>()?;
        Ok(Run {
            semantics: file.semantics,
            start: self.config_from_json(&file.start)?,
            steps,
            deadlocked: file.deadlocked,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub state: String,
    #[serde(default)]
    pub channels: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LabelJson {
    Rule {
        rule: usize,
        #[serde(default)]
        dropped: usize,
    },
    Internal {
        channel: String,
        position: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub label: LabelJson,
    pub config: ConfigJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunFile {
    pub start: ConfigJson,
    pub semantics: Semantics,
    pub steps: Vec<StepJson>,
    #[serde(default)]
    pub deadlocked: bool,
}
