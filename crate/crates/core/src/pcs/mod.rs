//! Priority channel systems, configurations and the four step semantics.

mod json;
mod random;
mod run;

pub use json::{ConfigJson, LabelJson, ModelSource, RuleSource, RunFile, StepJson};
pub use random::{random_model, ModelShape};
pub use run::{enumerate_reachable, find_run, run_simulate, Bounds, Reachable, ReplayError, Run, RunStep};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::pleq;
use crate::word::{Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcsError {
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("unknown channel {0:?}")]
    UnknownChannel(String),
    #[error("rule {rule}: letter {letter} exceeds level {level}")]
    LetterOutOfRange { rule: usize, letter: u32, level: Letter },
    #[error("duplicate state {0:?}")]
    DuplicateState(String),
    #[error("duplicate channel {0:?}")]
    DuplicateChannel(String),
    #[error("model has no states")]
    NoStates,
    #[error("invalid model: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<PcsError>),
    #[error("configuration has {found} channels, model has {expected}")]
    Arity { expected: usize, found: usize },
    #[error("configuration does not conform: {0}")]
    Nonconforming(String),
    #[error("unknown rule index {0}")]
    UnknownRule(usize),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("malformed input: {0}")]
    Syntax(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Op {
    #[serde(rename = "?", alias = "get", alias = "read")]
    Read,
    #[serde(rename = "!", alias = "send", alias = "write")]
    Write,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Read => "?",
            Op::Write => "!",
        })
    }
}

/// `from –channel op letter→ to`, with state and channel indices into the owning model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub from: usize,
    pub channel: usize,
    pub op: Op,
    pub letter: Letter,
    pub to: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    Reliable,
    WriteSuperseding,
    InternalSuperseding,
    Strict,
}

impl Semantics {
    pub const ALL: [Semantics; 4] =
        [Semantics::Reliable, Semantics::WriteSuperseding, Semantics::InternalSuperseding, Semantics::Strict];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::Reliable => "reliable",
            Semantics::WriteSuperseding => "write-superseding",
            Semantics::InternalSuperseding => "internal-superseding",
            Semantics::Strict => "strict",
        }
    }
}

impl std::str::FromStr for Semantics {
    type Err = PcsError;

    fn from_str(s: &str) -> Result<Self, PcsError> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.name() == s)
            .ok_or_else(|| PcsError::Syntax(format!("unknown semantics {s:?}")))
    }
}

/// Step labels: a rule (with the number of letters dropped by a superseding
/// write) or an internal superseding at 1-based position `k` of a channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Rule { rule: usize, dropped: usize },
    Internal { channel: usize, position: usize },
}

impl Label {
    pub fn rule(rule: usize) -> Label {
        Label::Rule { rule, dropped: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config {
    pub state: usize,
    pub channels: Vec<Word>,
}

impl Config {
    pub fn new(state: usize, channels: Vec<Word>) -> Self {
        Config { state, channels }
    }

    pub fn total_len(&self) -> usize {
        self.channels.iter().map(|w| w.len()).sum()
    }

    pub fn with_channel(&self, channel: usize, word: Word) -> Config {
        let mut next = self.clone();
        next.channels[channel] = word;
        next
    }
}

/// `C ≤_♯ D`: same control state and channelwise priority embedding.
pub fn config_leq(lhs: &Config, rhs: &Config) -> Result<bool, PcsError> {
    if lhs.channels.len() != rhs.channels.len() {
        return Err(PcsError::Arity { expected: lhs.channels.len(), found: rhs.channels.len() });
    }
    Ok(config_leq_unchecked(lhs, rhs))
}

pub(crate) fn config_leq_unchecked(lhs: &Config, rhs: &Config) -> bool {
    lhs.state == rhs.state && lhs.channels.iter().zip(&rhs.channels).all(|(x, y)| pleq(x, y))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pcs {
    level: Letter,
    channels: Vec<String>,
    states: Vec<String>,
    initial: Option<usize>,
    rules: Vec<Rule>,
}

impl Pcs {
    /// An empty machine with the given names; add rules with [`Pcs::add_rule`].
    pub fn new<S: Into<String>>(
        level: Letter,
        channels: impl IntoIterator<Item = S>,
        states: impl IntoIterator<Item = S>,
    ) -> Result<Pcs, PcsError> {
        let pcs = Pcs {
            level,
            channels: channels.into_iter().map(Into::into).collect(),
            states: states.into_iter().map(Into::into).collect(),
            initial: None,
            rules: Vec::new(),
        };
        pcs.validate()?;
        Ok(pcs)
    }

    pub(crate) fn from_parts(
        level: Letter,
        channels: Vec<String>,
        states: Vec<String>,
        initial: Option<usize>,
        rules: Vec<Rule>,
    ) -> Pcs {
        Pcs { level, channels, states, initial, rules }
    }

    pub fn level(&self) -> Letter {
        self.level
    }

    pub fn channels(&self) -> &[String] {
        &self.channels
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn initial(&self) -> Option<usize> {
        self.initial
    }

    pub fn set_initial(&mut self, state: &str) -> Result<(), PcsError> {
        self.initial = Some(self.state_index(state)?);
        Ok(())
    }

    pub fn state_index(&self, name: &str) -> Result<usize, PcsError> {
        self.states.iter().position(|s| s == name).ok_or_else(|| PcsError::UnknownState(name.to_string()))
    }

    pub fn channel_index(&self, name: &str) -> Result<usize, PcsError> {
        self.channels.iter().position(|s| s == name).ok_or_else(|| PcsError::UnknownChannel(name.to_string()))
    }

    pub fn state_name(&self, index: usize) -> &str {
        &self.states[index]
    }

    pub fn channel_name(&self, index: usize) -> &str {
        &self.channels[index]
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> Result<usize, PcsError> {
        let name = name.into();
        if self.states.contains(&name) {
            return Err(PcsError::DuplicateState(name));
        }
        self.states.push(name);
        Ok(self.states.len() - 1)
    }

    pub fn add_rule(&mut self, from: &str, channel: &str, op: Op, letter: Letter, to: &str) -> Result<usize, PcsError> {
        let rule = Rule {
            from: self.state_index(from)?,
            channel: self.channel_index(channel)?,
            op,
            letter,
            to: self.state_index(to)?,
        };
        self.push_rule(rule)
    }

    pub fn push_rule(&mut self, rule: Rule) -> Result<usize, PcsError> {
        let index = self.rules.len();
        if rule.letter > self.level {
            return Err(PcsError::LetterOutOfRange { rule: index, letter: rule.letter.into(), level: self.level });
        }
        if rule.from >= self.states.len() || rule.to >= self.states.len() {
            return Err(PcsError::UnknownState(format!("#{}", rule.from.max(rule.to))));
        }
        if rule.channel >= self.channels.len() {
            return Err(PcsError::UnknownChannel(format!("#{}", rule.channel)));
        }
        self.rules.push(rule);
        Ok(index)
    }

    pub fn rule(&self, index: usize) -> Result<&Rule, PcsError> {
        self.rules.get(index).ok_or(PcsError::UnknownRule(index))
    }

    /// Checks every model invariant and reports all violations together.
    pub fn validate(&self) -> Result<(), PcsError> {
        let mut errors = Vec::new();
        if self.states.is_empty() {
            errors.push(PcsError::NoStates);
        }
        for (i, s) in self.states.iter().enumerate() {
            if self.states[..i].contains(s) {
                errors.push(PcsError::DuplicateState(s.clone()));
            }
        }
        for (i, c) in self.channels.iter().enumerate() {
            if self.channels[..i].contains(c) {
                errors.push(PcsError::DuplicateChannel(c.clone()));
            }
        }
        for (i, r) in self.rules.iter().enumerate() {
            if r.letter > self.level {
                errors.push(PcsError::LetterOutOfRange { rule: i, letter: r.letter.into(), level: self.level });
            }
            for s in [r.from, r.to] {
                if s >= self.states.len() {
                    errors.push(PcsError::UnknownState(format!("#{s}")));
                }
            }
            if r.channel >= self.channels.len() {
                errors.push(PcsError::UnknownChannel(format!("#{}", r.channel)));
            }
        }
        match errors.len() {
            0 => Ok(()),
            1 => Err(errors.remove(0)),
            _ => Err(PcsError::Invalid(errors)),
        }
    }

    /// Builds a configuration from a state name and one word per channel.
    pub fn config(&self, state: &str, words: &[&str]) -> Result<Config, PcsError> {
        let channels = words.iter().map(|t| Word::parse(t, self.level)).collect::<Result<Vec<_>, _>>()?;
        let c = Config::new(self.state_index(state)?, channels);
        self.check_config(&c)?;
        Ok(c)
    }

    /// The configuration at `state` with every channel empty.
    pub fn empty_config(&self, state: usize) -> Config {
        Config::new(state, vec![Word::empty(); self.channels.len()])
    }

    pub fn check_config(&self, c: &Config) -> Result<(), PcsError> {
        if c.channels.len() != self.channels.len() {
            return Err(PcsError::Arity { expected: self.channels.len(), found: c.channels.len() });
        }
        if c.state >= self.states.len() {
            return Err(PcsError::Nonconforming(format!("state #{}", c.state)));
        }
        for w in &c.channels {
            w.check_level(self.level)?;
        }
        Ok(())
    }

    /// Literal `state:w1,w2,…` (words separated by `;` when the level exceeds 9).
    pub fn show(&self, c: &Config) -> String {
        let sep = if self.level > 9 { ";" } else { "," };
        let words: Vec<String> = c.channels.iter().map(|w| w.to_text_at(self.level)).collect();
        format!("{}:{}", self.states[c.state], words.join(sep))
    }

    pub fn parse_config(&self, literal: &str) -> Result<Config, PcsError> {
        let (state, rest) = literal.split_once(':').unwrap_or((literal, ""));
        let words: Vec<Word> = if self.channels.is_empty() {
            Vec::new()
        } else if self.level > 9 {
            rest.split(';').map(|t| Word::parse(t, self.level)).collect::<Result<_, _>>()?
        } else if self.channels.len() == 1 {
            vec![Word::parse(rest, self.level)?]
        } else {
            rest.split(',').map(|t| Word::parse(t, self.level)).collect::<Result<_, _>>()?
        };
        let c = Config::new(self.state_index(state.trim())?, words);
        self.check_config(&c)?;
        Ok(c)
    }

    pub fn show_rule(&self, index: usize) -> String {
        let r = &self.rules[index];
        format!("{} –{}{}{}→ {}", self.states[r.from], self.channels[r.channel], r.op, r.letter, self.states[r.to])
    }

    /// Applies one labeled step, or `None` when the label is not enabled.
    pub fn apply(&self, c: &Config, label: Label, sem: Semantics) -> Option<Config> {
        match label {
            Label::Rule { rule, dropped } => {
                let r = self.rules.get(rule)?;
                if r.from != c.state {
                    return None;
                }
                let x = c.channels.get(r.channel)?;
                let mut next = c.clone();
                next.state = r.to;
                match r.op {
                    Op::Read => {
                        if dropped != 0 || x.first() != Some(&r.letter) {
                            return None;
                        }
                        next.channels[r.channel] = Word::from(&x[1..]);
                    }
                    Op::Write => {
                        let max_drop = match sem {
                            Semantics::WriteSuperseding => droppable_suffix(x, r.letter),
                            _ => 0,
                        };
                        if dropped > max_drop {
                            return None;
                        }
                        let mut letters = x[..x.len() - dropped].to_vec();
                        letters.push(r.letter);
                        next.channels[r.channel] = Word::new(letters);
                    }
                }
                Some(next)
            }
            Label::Internal { channel, position } => {
                let x = c.channels.get(channel)?;
                if position == 0 || position >= x.len() {
                    return None;
                }
                let (a, b) = (x[position - 1], x[position]);
                let enabled = match sem {
                    Semantics::InternalSuperseding => a <= b,
                    Semantics::Strict => a < b,
                    _ => false,
                };
                enabled.then(|| c.with_channel(channel, x.without(position - 1)))
            }
        }
    }

    /// All labeled successors of `c`. An empty result means `c` is deadlocked.
    pub fn successors(&self, c: &Config, sem: Semantics) -> Result<Vec<(Label, Config)>, PcsError> {
        self.check_config(c)?;
        Ok(self.successors_unchecked(c, sem))
    }

    pub(crate) fn successors_unchecked(&self, c: &Config, sem: Semantics) -> Vec<(Label, Config)> {
        let mut out = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            if r.from != c.state {
                continue;
            }
            let x = &c.channels[r.channel];
            match r.op {
                Op::Read => {
                    if x.first() == Some(&r.letter) {
                        let mut next = c.clone();
                        next.state = r.to;
                        next.channels[r.channel] = Word::from(&x[1..]);
                        out.push((Label::rule(i), next));
                    }
                }
                Op::Write => {
                    let max_drop = if sem == Semantics::WriteSuperseding { droppable_suffix(x, r.letter) } else { 0 };
                    for dropped in 0..=max_drop {
                        let mut letters = x[..x.len() - dropped].to_vec();
                        letters.push(r.letter);
                        let mut next = c.clone();
                        next.state = r.to;
                        next.channels[r.channel] = Word::new(letters);
                        out.push((Label::Rule { rule: i, dropped }, next));
                    }
                }
            }
        }
        if matches!(sem, Semantics::InternalSuperseding | Semantics::Strict) {
            for (ch, x) in c.channels.iter().enumerate() {
                for k in 1..x.len() {
                    let (a, b) = (x[k - 1], x[k]);
                    let enabled = if sem == Semantics::Strict { a < b } else { a <= b };
                    if enabled {
                        out.push((Label::Internal { channel: ch, position: k }, c.with_channel(ch, x.without(k - 1))));
                    }
                }
            }
        }
        out
    }
}

/// Length of the maximal suffix of `x` made of letters at most `a`.
pub fn droppable_suffix(x: &[Letter], a: Letter) -> usize {
    x.iter().rev().take_while(|&&b| b <= a).count()
}

/// The single-channel 3-PCS with states `p`, `q` used throughout the documentation.
pub fn example_model() -> Pcs {
    let mut m = Pcs::new(3, ["c"], ["p", "q"]).expect("valid names");
    m.add_rule("p", "c", Op::Write, 1, "q").expect("valid rule");
    m.add_rule("q", "c", Op::Read, 3, "p").expect("valid rule");
    m.add_rule("p", "c", Op::Write, 0, "p").expect("valid rule");
    m.add_rule("q", "c", Op::Write, 3, "q").expect("valid rule");
    m.set_initial("p").expect("p exists");
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn targets(succ: &[(Label, Config)]) -> Vec<Config> {
        let mut v: Vec<Config> = succ.iter().map(|(_, c)| c.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    #[test]
    fn example_model_is_valid() {
        assert_eq!(example_model().validate(), Ok(()));
    }

    #[test]
    fn invalid_models_are_reported() {
        let mut m = Pcs::new(3, ["c"], ["p"]).unwrap();
        assert!(matches!(m.add_rule("p", "c", Op::Write, 4, "p"), Err(PcsError::LetterOutOfRange { .. })));
        assert!(matches!(m.add_rule("p", "d", Op::Write, 0, "p"), Err(PcsError::UnknownChannel(_))));
        assert!(matches!(Pcs::new(1, ["c", "c"], ["p", "p"]), Err(PcsError::Invalid(v)) if v.len() == 2));
    }

    #[test]
    fn write_superseding_successors() {
        let m = example_model();
        let c = m.config("p", &["0200"]).unwrap();
        let succ: Vec<(Label, Config)> = m
            .successors(&c, Semantics::WriteSuperseding)
            .unwrap()
            .into_iter()
            .filter(|(l, _)| matches!(l, Label::Rule { rule: 0, .. }))
            .collect();
        let expected: Vec<Config> = ["02001", "0201", "021"].iter().map(|x| m.config("q", &[x]).unwrap()).collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(targets(&succ), expected);
        assert_eq!(succ.len(), 1 + droppable_suffix(&w("0200"), 1));
    }

    #[test]
    fn internal_step_from_example_run() {
        let m = example_model();
        let c = m.config("q", &["02001"]).unwrap();
        let succ = m.successors(&c, Semantics::InternalSuperseding).unwrap();
        let target = m.config("q", &["0201"]).unwrap();
        assert!(succ.iter().any(|(l, d)| *d == target && matches!(l, Label::Internal { position: 3, .. })));
    }

    #[test]
    fn reliable_read_needs_matching_head() {
        let m = example_model();
        let c = m.config("q", &["13"]).unwrap();
        let succ = m.successors(&c, Semantics::Reliable).unwrap();
        assert!(succ.iter().all(|(l, _)| *l != Label::rule(1)));
    }

    #[test]
    fn config_order() {
        let m = example_model();
        let c = |s: &str, x: &str| m.config(s, &[x]).unwrap();
        assert_eq!(config_leq(&c("p", ""), &c("p", "0")), Ok(false));
        assert_eq!(config_leq(&c("p", "0"), &c("p", "00")), Ok(true));
        assert_eq!(config_leq(&c("p", "01"), &c("q", "01")), Ok(false));
        assert_eq!(config_leq(&c("p", "201"), &c("p", "22011")), Ok(true));
        let two = Config::new(0, vec![Word::empty(), Word::empty()]);
        assert!(matches!(config_leq(&c("p", ""), &two), Err(PcsError::Arity { .. })));
    }

    #[test]
    fn apply_agrees_with_successors() {
        let m = example_model();
        let c = m.config("p", &["0210"]).unwrap();
        for sem in Semantics::ALL {
            for (label, d) in m.successors(&c, sem).unwrap() {
                assert_eq!(m.apply(&c, label, sem), Some(d));
            }
        }
        assert_eq!(m.apply(&c, Label::Rule { rule: 0, dropped: 3 }, Semantics::WriteSuperseding), None);
    }

    #[test]
    fn config_literals_round_trip() {
        let m = example_model();
        let c = m.parse_config("q:021").unwrap();
        assert_eq!(m.show(&c), "q:021");
        assert_eq!(m.parse_config("p:ε").unwrap(), m.empty_config(0));
        assert_eq!(m.parse_config("p:").unwrap(), m.empty_config(0));
        assert!(m.parse_config("z:0").is_err());
    }
}
