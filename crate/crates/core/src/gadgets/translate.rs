use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::builder::Builder;
use super::GadgetError;
use crate::pcs::{Config, Op, Pcs};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CsOp {
    #[serde(rename = "!", alias = "write")]
    Write,
    #[serde(rename = "?", alias = "read")]
    Read,
    #[serde(rename = "send")]
    Send,
    #[serde(rename = "get")]
    Get,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsRule {
    pub from: String,
    pub channel: String,
    pub op: CsOp,
    /// Message index for `!` and `?`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<usize>,
    pub to: String,
}

/// A channel system over messages `a_0, …, a_{messages-1}`, optionally with
/// a second-order channel holding whole channel contents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelSystem {
    pub messages: usize,
    pub channels: Vec<String>,
    pub states: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    #[serde(default)]
    pub lossy: bool,
    /// Name of the second-order channel, when `send`/`get` are used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_order: Option<String>,
    pub rules: Vec<CsRule>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Fixed-width binary blocks followed by `$`, over `{0, 1, $}`.
    Plain,
    /// `a_i ↦ 0ⁱ$`, over `{0, $}`; messages may also decrease.
    Weak,
    /// `a_i ↦ i$` with a top marker `£` separating second-order entries.
    Dlcs,
}

/// How a source system evolves between rule steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceSemantics {
    Reliable,
    Lossy,
    /// Lossy, and a message may be replaced by a smaller one.
    Weak,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CsConfig {
    pub state: usize,
    pub channels: Vec<Vec<usize>>,
    pub second: Vec<Vec<usize>>,
}

fn higman<T>(x: &[T], y: &[T], leq: impl Fn(&T, &T) -> bool) -> bool {
    let mut rest = y.iter();
    x.iter().all(|a| rest.any(|b| leq(a, b)))
}

impl CsConfig {
    /// `self` is obtained from `other` by losses (and, when `weak`, by lowering messages).
    pub fn embeds_in(&self, other: &CsConfig, weak: bool) -> bool {
        let msg = |a: &usize, b: &usize| if weak { a <= b } else { a == b };
        self.state == other.state
            && self.channels.len() == other.channels.len()
            && self.channels.iter().zip(&other.channels).all(|(x, y)| higman(x, y, msg))
            && higman(&self.second, &other.second, |x, y| higman(x, y, msg))
    }
}

impl ChannelSystem {
    pub fn from_json(text: &str) -> Result<ChannelSystem, GadgetError> {
        let cs: ChannelSystem = serde_json::from_str(text).map_err(|e| GadgetError::Source(e.to_string()))?;
        cs.validate()?;
        Ok(cs)
    }

    pub fn validate(&self) -> Result<(), GadgetError> {
        let bad = |msg: String| Err(GadgetError::Source(msg));
        if self.states.is_empty() {
            return bad("no states".into());
        }
        if let Some(i) = &self.initial {
            if !self.states.contains(i) {
                return bad(format!("unknown initial state {i:?}"));
            }
        }
        if self.second_order.as_ref().is_some_and(|s| self.channels.contains(s)) {
            return bad("the second-order channel must not be a standard channel".into());
        }
        for (i, r) in self.rules.iter().enumerate() {
            if !self.states.contains(&r.from) || !self.states.contains(&r.to) {
                return bad(format!("rule {i} mentions an unknown state"));
            }
            if !self.channels.contains(&r.channel) {
                return bad(format!("rule {i} mentions an unknown channel {:?}", r.channel));
            }
            match (r.op, r.message) {
                (CsOp::Write | CsOp::Read, Some(m)) if m < self.messages => {}
                (CsOp::Write | CsOp::Read, _) => {
                    return bad(format!("rule {i} needs a message below {}", self.messages))
                }
                (CsOp::Send | CsOp::Get, _) if self.second_order.is_none() => {
                    return bad(format!("rule {i} needs a second-order channel"))
                }
                (CsOp::Send | CsOp::Get, None) => {}
                (CsOp::Send | CsOp::Get, Some(_)) => return bad(format!("rule {i}: send/get take no message")),
            }
        }
        Ok(())
    }

    fn state(&self, name: &str) -> usize {
        self.states.iter().position(|s| s == name).expect("validated")
    }

    fn channel(&self, name: &str) -> usize {
        self.channels.iter().position(|s| s == name).expect("validated")
    }

    pub fn config(&self, state: &str, channels: &[&[usize]]) -> Result<CsConfig, GadgetError> {
        let state = self
            .states
            .iter()
            .position(|s| s == state)
            .ok_or_else(|| GadgetError::Source(format!("unknown state {state:?}")))?;
        if channels.len() != self.channels.len() {
            return Err(GadgetError::Source(format!("expected {} channels", self.channels.len())));
        }
        Ok(CsConfig { state, channels: channels.iter().map(|c| c.to_vec()).collect(), second: Vec::new() })
    }

    /// Successors by rules and by one loss (or one decrease) step.
    pub fn successors(&self, c: &CsConfig, sem: SourceSemantics) -> Vec<CsConfig> {
        let mut out = Vec::new();
        for r in self.rules.iter().filter(|r| self.state(&r.from) == c.state) {
            let ch = self.channel(&r.channel);
            let mut next = c.clone();
            next.state = self.state(&r.to);
            match r.op {
                CsOp::Write => next.channels[ch].push(r.message.expect("validated")),
                CsOp::Read => {
                    if c.channels[ch].first() != r.message.as_ref() {
                        continue;
                    }
                    next.channels[ch].remove(0);
                }
                CsOp::Send => next.second.push(c.channels[ch].clone()),
                CsOp::Get => {
                    if c.second.is_empty() {
                        continue;
                    }
                    next.channels[ch] = next.second.remove(0);
                }
            }
            out.push(next);
        }
        if sem == SourceSemantics::Reliable {
            return out;
        }
        for (ch, x) in c.channels.iter().enumerate() {
            for (i, &msg) in x.iter().enumerate() {
                let mut next = c.clone();
                next.channels[ch].remove(i);
                out.push(next);
                if sem == SourceSemantics::Weak {
                    for m in 0..msg {
                        let mut next = c.clone();
                        next.channels[ch][i] = m;
                        out.push(next);
                    }
                }
            }
        }
        for (j, seq) in c.second.iter().enumerate() {
            let mut next = c.clone();
            next.second.remove(j);
            out.push(next);
            for i in 0..seq.len() {
                let mut next = c.clone();
                next.second[j].remove(i);
                out.push(next);
            }
        }
        out
    }

    /// Breadth-first reachable set, skipping configurations with a channel
    /// (or the second-order channel, counted in messages) longer than `max_len`.
    pub fn reachable(
        &self,
        c0: &CsConfig,
        sem: SourceSemantics,
        max_len: usize,
        max_configs: usize,
    ) -> (HashSet<CsConfig>, bool) {
        let mut seen = HashSet::from([c0.clone()]);
        let mut queue = VecDeque::from([c0.clone()]);
        let mut truncated = false;
        while let Some(c) = queue.pop_front() {
            for next in self.successors(&c, sem) {
                if seen.contains(&next) {
                    continue;
                }
                let size2: usize = next.second.iter().map(|s| s.len() + 1).sum();
                if next.channels.iter().any(|x| x.len() > max_len) || size2 > max_len || seen.len() >= max_configs {
                    truncated = true;
                    continue;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        (seen, truncated)
    }
}

/// Message encoding of a translation; `None` is the strict reliable simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Encoding {
    pub flavor: Option<Flavor>,
    pub messages: usize,
}

fn binary_width(messages: usize) -> usize {
    let mut w = 1;
    while (1usize << w) < messages {
        w += 1;
    }
    w
}

impl Encoding {
    /// `$` of the encoding.
    pub fn separator(&self) -> Letter {
        match self.flavor {
            Some(Flavor::Plain) => 2,
            Some(Flavor::Weak) => 1,
            Some(Flavor::Dlcs) | None => self.messages as Letter,
        }
    }

    pub fn message(&self, m: usize) -> Vec<Letter> {
        let mut out = match self.flavor {
            Some(Flavor::Plain) => {
                let w = binary_width(self.messages);
                (0..w).rev().map(|b| ((m >> b) & 1) as Letter).collect()
            }
            Some(Flavor::Weak) => vec![0; m],
            Some(Flavor::Dlcs) | None => vec![m as Letter],
        };
        out.push(self.separator());
        out
    }

    pub fn word(&self, msgs: &[usize]) -> Word {
        Word::new(msgs.iter().flat_map(|&m| self.message(m)).collect())
    }

    /// Messages of a channel word. Blocks that lost their content (a bare
    /// `$`, or a truncated binary block) carry no message and are skipped;
    /// in the unary encoding a bare `$` is `a_0`. `None` when the word does
    /// not end with `$` or holds a letter above `$`.
    pub fn decode(&self, x: &[Letter]) -> Option<Vec<usize>> {
        let s = self.separator();
        if x.iter().any(|&a| a > s) || x.last().is_some_and(|&a| a != s) {
            return None;
        }
        let mut out = Vec::new();
        for block in x.split(|&a| a == s).take(x.iter().filter(|&&a| a == s).count()) {
            match self.flavor {
                Some(Flavor::Weak) => {
                    if block.iter().any(|&a| a != 0) || block.len() >= self.messages {
                        return None;
                    }
                    out.push(block.len());
                }
                Some(Flavor::Plain) => {
                    if block.len() == binary_width(self.messages) {
                        let m = block.iter().fold(0usize, |acc, &b| 2 * acc + usize::from(b));
                        if m >= self.messages || block.iter().any(|&b| b > 1) {
                            return None;
                        }
                        out.push(m);
                    } else if block.len() > binary_width(self.messages) {
                        return None;
                    }
                }
                Some(Flavor::Dlcs) | None => match block {
                    [] => {}
                    [m] => out.push(usize::from(*m)),
                    _ => return None,
                },
            }
        }
        Some(out)
    }
}

/// A PCS obtained from a channel system, with its message encoding.
/// Source states keep their names and come first, in source order.
#[derive(Debug, Clone)]
pub struct Translation {
    pub pcs: Pcs,
    pub encoding: Encoding,
    pub source_states: usize,
    /// Whether the last PCS channel stands for the second-order channel.
    pub second_order: bool,
}

impl Translation {
    /// Image of a source configuration; the second-order channel, if any, comes last.
    pub fn encode_config(&self, c: &CsConfig) -> Config {
        let mut channels: Vec<Word> = c.channels.iter().map(|x| self.encoding.word(x)).collect();
        if self.second_order {
            let top = self.encoding.separator() + 1;
            let mut second = Vec::new();
            for seq in &c.second {
                second.extend(self.encoding.word(seq).into_letters());
                second.push(top);
            }
            channels.push(Word::new(second));
        }
        Config::new(c.state, channels)
    }

    /// Source configuration represented by a PCS configuration at a source state.
    pub fn decode_config(&self, c: &Config) -> Option<CsConfig> {
        if c.state >= self.source_states {
            return None;
        }
        let standard = self.pcs.channels().len() - usize::from(self.second_order);
        let channels = c.channels[..standard].iter().map(|x| self.encoding.decode(x)).collect::<Option<Vec<_>>>()?;
        let mut second = Vec::new();
        if self.second_order {
            let x = &c.channels[standard];
            let top = self.encoding.separator() + 1;
            if x.last().is_some_and(|a| a != top) {
                return None;
            }
            let count = x.iter().filter(|&&a| a == top).count();
            for seq in x.split(|&a| a == top).take(count) {
                second.push(self.encoding.decode(seq)?);
            }
        }
        Some(CsConfig { state: c.state, channels, second })
    }
}

fn level_of(cs: &ChannelSystem, flavor: Option<Flavor>) -> Result<Letter, GadgetError> {
    let too_many = || GadgetError::Source(format!("{} messages do not fit the priority alphabet", cs.messages));
    match flavor {
        Some(Flavor::Plain) => Ok(2),
        Some(Flavor::Weak) => Ok(1),
        Some(Flavor::Dlcs) => Letter::try_from(cs.messages + 1).ok().filter(|&l| l < Letter::MAX).ok_or_else(too_many),
        None => Letter::try_from(cs.messages).map_err(|_| too_many()),
    }
}

fn translate(cs: &ChannelSystem, flavor: Option<Flavor>) -> Result<Translation, GadgetError> {
    cs.validate()?;
    let level = level_of(cs, flavor)?;
    if cs.second_order.is_some() && flavor != Some(Flavor::Dlcs) {
        return Err(GadgetError::Source("second-order channels need the dlcs flavor".into()));
    }
    let mut names: Vec<&str> = cs.channels.iter().map(String::as_str).collect();
    let second = cs.second_order.as_deref().unwrap_or("c0");
    if cs.second_order.is_some() {
        names.push(second);
    }
    let mut b = Builder::new(level, &names);
    let states: Vec<usize> = cs.states.iter().map(|s| b.state(s)).collect();
    let enc = Encoding { flavor, messages: cs.messages };
    let s = enc.separator();
    let top = s + 1;
    let c0 = names.len().saturating_sub(1);
    for (i, r) in cs.rules.iter().enumerate() {
        let prefix = format!("r{i}");
        let (from, to) = (states[cs.state(&r.from)], states[cs.state(&r.to)]);
        let c = cs.channel(&r.channel);
        match r.op {
            CsOp::Write => {
                let word = enc.message(r.message.expect("validated"));
                b.write_word(from, c, &word, to, &prefix);
            }
            CsOp::Read => {
                if flavor.is_some() {
                    b.read_word(from, c, &[s], from, &prefix);
                }
                let word = enc.message(r.message.expect("validated"));
                b.read_word(from, c, &word, to, &prefix);
            }
            CsOp::Send => {
                let (m1, m2) = (b.fresh(&prefix), b.fresh(&prefix));
                b.write_word(from, c, &[top], m1, &prefix);
                for x in 0..=s {
                    b.chain(m1, &[(c, Op::Read, x), (c, Op::Write, x), (c0, Op::Write, x)], m1, &prefix);
                }
                b.read_word(m1, c, &[top], m2, &prefix);
                b.write_word(m2, c0, &[top], to, &prefix);
            }
            CsOp::Get => {
                let (m1, m2) = (b.fresh(&prefix), b.fresh(&prefix));
                b.read_word(from, c0, &[top], from, &prefix);
                b.write_word(from, c, &[top], m1, &prefix);
                b.read_word(m1, c, &[top], m2, &prefix);
                for x in 0..=s {
                    b.chain(m2, &[(c0, Op::Read, x), (c, Op::Write, x)], m2, &prefix);
                }
                b.read_word(m2, c0, &[top], to, &prefix);
            }
        }
    }
    let initial = cs.initial.clone().unwrap_or_else(|| cs.states[0].clone());
    Ok(Translation {
        pcs: b.finish(&initial)?,
        encoding: enc,
        source_states: cs.states.len(),
        second_order: cs.second_order.is_some(),
    })
}

/// PCS simulating a lossy (or weak, or dynamic lossy) channel system under superseding.
pub fn translate_lcs(cs: &ChannelSystem, flavor: Flavor) -> Result<Translation, GadgetError> {
    translate(cs, Some(flavor))
}

/// PCS simulating a reliable channel system under strict superseding: `a_i ↦ i$`.
pub fn build_strict_reliable_sim(cs: &ChannelSystem) -> Result<Translation, GadgetError> {
    translate(cs, None)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::pcs::{enumerate_reachable, find_run, Bounds, Label, Run, Semantics};
    use crate::word::w;

    pub(crate) fn weak_example() -> ChannelSystem {
        ChannelSystem::from_json(
            r#"{"messages":2,"channels":["c"],"states":["p","q","r"],"lossy":true,
                "rules":[{"from":"p","channel":"c","op":"!","message":1,"to":"q"},
                         {"from":"q","channel":"c","op":"!","message":0,"to":"p"},
                         {"from":"p","channel":"c","op":"?","message":1,"to":"r"},
                         {"from":"r","channel":"c","op":"?","message":0,"to":"r"}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn weak_write_is_unary() {
        let cs = ChannelSystem::from_json(
            r#"{"messages":2,"channels":["c"],"states":["p","q"],"lossy":true,
                "rules":[{"from":"p","channel":"c","op":"!","message":1,"to":"q"}]}"#,
        )
        .unwrap();
        let t = translate_lcs(&cs, Flavor::Weak).unwrap();
        let shown: Vec<String> = (0..t.pcs.rules().len()).map(|i| t.pcs.show_rule(i)).collect();
        assert_eq!(shown, ["p –c!0→ r0~1", "r0~1 –c!1→ q"]);
        assert_eq!(t.encoding.word(&[1, 0]), w("011"));
    }

    #[test]
    fn plain_blocks_are_binary() {
        let enc = Encoding { flavor: Some(Flavor::Plain), messages: 3 };
        assert_eq!(enc.word(&[2, 0]), w("102002"));
        let enc = Encoding { flavor: Some(Flavor::Plain), messages: 2 };
        assert_eq!(enc.message(1), [1, 2]);
    }

    #[test]
    fn write_then_read_empties_the_channel() {
        let cs = ChannelSystem::from_json(
            r#"{"messages":1,"channels":["c"],"states":["p","q","r"],"lossy":true,
                "rules":[{"from":"p","channel":"c","op":"!","message":0,"to":"q"},
                         {"from":"q","channel":"c","op":"?","message":0,"to":"r"}]}"#,
        )
        .unwrap();
        let start = cs.config("p", &[&[]]).unwrap();
        let end = cs.config("r", &[&[]]).unwrap();
        assert!(cs.reachable(&start, SourceSemantics::Lossy, 4, 1000).0.contains(&end));
        for flavor in [Flavor::Plain, Flavor::Weak, Flavor::Dlcs] {
            let t = translate_lcs(&cs, flavor).unwrap();
            let goal = t.encode_config(&end);
            let (run, _) =
                find_run(&t.pcs, &t.encode_config(&start), Semantics::InternalSuperseding, Bounds::new(1000, 6), |c| {
                    *c == goal
                });
            assert!(run.is_some(), "{flavor:?}");
        }
    }

    #[test]
    fn send_then_get_roundtrips() {
        let cs = ChannelSystem::from_json(
            r#"{"messages":2,"channels":["c"],"states":["p","q","r","s"],"lossy":true,"second_order":"c0",
                "rules":[{"from":"p","channel":"c","op":"send","to":"q"},
                         {"from":"q","channel":"c","op":"?","message":1,"to":"r"},
                         {"from":"r","channel":"c","op":"get","to":"s"}]}"#,
        )
        .unwrap();
        let t = translate_lcs(&cs, Flavor::Dlcs).unwrap();
        assert_eq!(t.pcs.channels(), ["c", "c0"]);
        let start = cs.config("p", &[&[1, 0]]).unwrap();
        let mut end = cs.config("s", &[&[1, 0]]).unwrap();
        let reach = cs.reachable(&start, SourceSemantics::Reliable, 6, 1000).0;
        assert!(reach.contains(&end));
        let goal = t.encode_config(&end);
        assert_eq!(goal.channels, [w("1202"), w("")]);
        let c0 = t.encode_config(&start);
        // get overwrites c by letting £ supersede the old contents
        let (run, _) = find_run(&t.pcs, &c0, Semantics::InternalSuperseding, Bounds::new(100_000, 12), |c| *c == goal);
        assert!(run.is_some());
        let (run, _) = find_run(&t.pcs, &c0, Semantics::Reliable, Bounds::new(100_000, 12), |c| *c == goal);
        assert!(run.is_none());
        // losing the first message of the stored sequence
        end.channels[0] = vec![0];
        assert!(cs.reachable(&start, SourceSemantics::Lossy, 6, 10_000).0.contains(&end));
        let (run, _) = find_run(&t.pcs, &c0, Semantics::InternalSuperseding, Bounds::new(100_000, 12), |c| {
            t.decode_config(c).is_some_and(|d| d == end)
        });
        assert!(run.is_some());
    }

    fn queue() -> ChannelSystem {
        ChannelSystem::from_json(
            r#"{"messages":2,"channels":["c"],"states":["p","q","r","s"],
                "rules":[{"from":"p","channel":"c","op":"!","message":1,"to":"q"},
                         {"from":"q","channel":"c","op":"!","message":0,"to":"r"},
                         {"from":"r","channel":"c","op":"?","message":1,"to":"s"},
                         {"from":"s","channel":"c","op":"?","message":0,"to":"p"}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn strict_simulation_is_faithful() {
        let cs = queue();
        let t = build_strict_reliable_sim(&cs).unwrap();
        assert_eq!(t.pcs.level(), 2);
        let c = |s: &str, x: &str| t.pcs.config(s, &[x]).unwrap();
        let mut run = Run::empty(Semantics::Strict, c("p", ""));
        for (rule, state, x) in [(0, "r0~1", "1"), (1, "q", "12"), (2, "r1~2", "120"), (3, "r", "1202")] {
            run.push(Label::rule(rule), c(state, x));
        }
        assert_eq!(run.replay(&t.pcs), Ok(()));
        let end = t.pcs.empty_config(t.pcs.state_index("p").unwrap());
        let reach = enumerate_reachable(&t.pcs, &c("p", ""), Semantics::Strict, Bounds::new(100_000, 8));
        assert!(reach.configs.contains(&end));
    }

    #[test]
    fn strict_superseding_leaves_a_double_separator() {
        let t = build_strict_reliable_sim(&queue()).unwrap();
        let start = t.pcs.config("r", &["1202"]).unwrap();
        let reach = enumerate_reachable(&t.pcs, &start, Semantics::Strict, Bounds::new(10_000, 8));
        let stuck = t.pcs.config("r", &["22"]).unwrap();
        assert!(reach.configs.contains(&stuck));
        let from_stuck = enumerate_reachable(&t.pcs, &stuck, Semantics::Strict, Bounds::new(10_000, 8));
        assert!(from_stuck.configs.iter().all(|c| c.channels[0].starts_with(&[2, 2])));
    }

    #[test]
    fn one_state_system_translates_to_no_rules() {
        let cs = ChannelSystem {
            messages: 0,
            channels: vec![],
            states: vec!["p".into()],
            initial: None,
            lossy: false,
            second_order: None,
            rules: vec![],
        };
        let t = build_strict_reliable_sim(&cs).unwrap();
        assert!(t.pcs.rules().is_empty());
        assert_eq!(t.pcs.states(), ["p"]);
    }

    #[test]
    fn malformed_sources() {
        for text in [
            r#"{"messages":1,"channels":["c"],"states":[],"rules":[]}"#,
            r#"{"messages":1,"channels":["c"],"states":["p"],"rules":[{"from":"p","channel":"d","op":"!","message":0,"to":"p"}]}"#,
            r#"{"messages":1,"channels":["c"],"states":["p"],"rules":[{"from":"p","channel":"c","op":"!","message":3,"to":"p"}]}"#,
            r#"{"messages":1,"channels":["c"],"states":["p"],"rules":[{"from":"p","channel":"c","op":"send","to":"p"}]}"#,
            "not json",
        ] {
            assert!(matches!(ChannelSystem::from_json(text), Err(GadgetError::Source(_))), "{text}");
        }
    }

    #[test]
    fn decoding() {
        let weak = Encoding { flavor: Some(Flavor::Weak), messages: 3 };
        assert_eq!(weak.decode(&w("011001")), Some(vec![1, 0, 2]));
        assert_eq!(weak.decode(&w("010")), None);
        let plain = Encoding { flavor: Some(Flavor::Plain), messages: 3 };
        assert_eq!(plain.decode(&w("1022102")), Some(vec![2, 2]));
        let dlcs = Encoding { flavor: Some(Flavor::Dlcs), messages: 2 };
        assert_eq!(dlcs.decode(&w("1222")), Some(vec![1]));
        assert_eq!(dlcs.decode(&w("3")), None);
    }

    #[test]
    fn weak_reachability_matches_modulo_encoding() {
        let cs = weak_example();
        let t = translate_lcs(&cs, Flavor::Weak).unwrap();
        let start = cs.config("p", &[&[]]).unwrap();
        let (src, _) = cs.reachable(&start, SourceSemantics::Weak, 6, 100_000);
        let reach = enumerate_reachable(
            &t.pcs,
            &t.encode_config(&start),
            Semantics::InternalSuperseding,
            Bounds::new(100_000, 10),
        );
        let images: Vec<CsConfig> = reach.configs.iter().filter_map(|c| t.decode_config(c)).collect();
        let mut mismatches = Vec::new();
        for st in ["p", "q", "r"] {
            for len in 0..=3 {
                for code in 0..(1usize << len) {
                    let msgs: Vec<usize> = (0..len).map(|i| (code >> i) & 1).collect();
                    let c = cs.config(st, &[&msgs]).unwrap();
                    let a = src.contains(&c);
                    let b = images.iter().any(|d| c.embeds_in(d, true));
                    if a != b {
                        mismatches.push(format!("{st} {msgs:?} lcs={a} pcs={b}"));
                    }
                }
            }
        }
        assert!(mismatches.is_empty(), "{mismatches:#?}");
    }
}
