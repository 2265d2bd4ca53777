use std::collections::{BTreeSet, HashMap, HashSet};

use crate::pcs::{Op, Pcs, Rule};
use crate::word::Letter;

use super::{GadgetError, Lang};

/// One per-letter operation of a meta-rule: the letter read by the automaton
/// is read from or written to `channel`.
pub type Step = (usize, Op);

/// `c ⦸ a`: read `a` and write it back.
pub fn rwb(channel: usize) -> Vec<Step> {
    vec![(channel, Op::Read), (channel, Op::Write)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetaMode {
    ReadWriteBack,
    ReadOnly,
    WriteOnly,
}

impl MetaMode {
    pub fn steps(self, channel: usize) -> Vec<Step> {
        match self {
            MetaMode::ReadWriteBack => rwb(channel),
            MetaMode::ReadOnly => vec![(channel, Op::Read)],
            MetaMode::WriteOnly => vec![(channel, Op::Write)],
        }
    }
}

/// Incremental construction of a PCS with ε-edges and anonymous states.
///
/// Named states are kept by [`Builder::finish`]; fresh states are dropped
/// when unreachable from every named state.
#[derive(Debug, Clone)]
pub struct Builder {
    level: Letter,
    channels: Vec<String>,
    names: Vec<String>,
    named: Vec<bool>,
    index: HashMap<String, usize>,
    rules: Vec<Rule>,
    eps: Vec<(usize, usize)>,
    fresh: usize,
}

impl Builder {
    pub fn new(level: Letter, channels: &[&str]) -> Builder {
        Builder {
            level,
            channels: channels.iter().map(|c| c.to_string()).collect(),
            names: Vec::new(),
            named: Vec::new(),
            index: HashMap::new(),
            rules: Vec::new(),
            eps: Vec::new(),
            fresh: 0,
        }
    }

    pub fn level(&self) -> Letter {
        self.level
    }

    pub fn channel(&self, name: &str) -> usize {
        self.channels.iter().position(|c| c == name).unwrap_or_else(|| panic!("unknown channel {name:?}"))
    }

    /// The named state `name`, created on first use.
    pub fn state(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            self.named[i] = true;
            return i;
        }
        let i = self.push(name.to_string());
        self.named[i] = true;
        i
    }

    pub fn fresh(&mut self, prefix: &str) -> usize {
        self.fresh += 1;
        let name = format!("{prefix}~{}", self.fresh);
        self.push(name)
    }

    fn push(&mut self, name: String) -> usize {
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        self.named.push(false);
        i
    }

    pub fn rule(&mut self, from: usize, channel: usize, op: Op, letter: Letter, to: usize) {
        assert!(letter <= self.level, "letter {letter} above level {}", self.level);
        self.rules.push(Rule { from, channel, op, letter, to });
    }

    pub fn eps(&mut self, from: usize, to: usize) {
        self.eps.push((from, to));
    }

    /// A sequence of single operations through fresh states; an empty sequence is an ε-edge.
    pub fn chain(&mut self, from: usize, ops: &[(usize, Op, Letter)], to: usize, prefix: &str) {
        let Some((last, init)) = ops.split_last() else {
            self.eps(from, to);
            return;
        };
        let mut cur = from;
        for &(ch, op, a) in init {
            let next = self.fresh(prefix);
            self.rule(cur, ch, op, a, next);
            cur = next;
        }
        self.rule(cur, last.0, last.1, last.2, to);
    }

    pub fn write_word(&mut self, from: usize, channel: usize, word: &[Letter], to: usize, prefix: &str) {
        let ops: Vec<_> = word.iter().map(|&a| (channel, Op::Write, a)).collect();
        self.chain(from, &ops, to, prefix);
    }

    pub fn read_word(&mut self, from: usize, channel: usize, word: &[Letter], to: usize, prefix: &str) {
        let ops: Vec<_> = word.iter().map(|&a| (channel, Op::Read, a)).collect();
        self.chain(from, &ops, to, prefix);
    }

    /// Reads and writes back each letter of `word`.
    pub fn check_word(&mut self, from: usize, channel: usize, word: &[Letter], to: usize, prefix: &str) {
        let ops: Vec<_> = word.iter().flat_map(|&a| [(channel, Op::Read, a), (channel, Op::Write, a)]).collect();
        self.chain(from, &ops, to, prefix);
    }

    /// Meta-rule: from `from` to `to` along any word of `lang`, performing
    /// `steps` for each letter. One fresh state per live automaton state.
    pub fn meta(
        &mut self,
        from: usize,
        to: usize,
        lang: &Lang,
        steps: &[Step],
        prefix: &str,
    ) -> Result<(), GadgetError> {
        let dfa = lang.compile(self.level)?;
        let dead = dfa.dead_states();
        if dead[dfa.start()] {
            return Ok(());
        }
        let nodes: Vec<Option<usize>> =
            (0..dfa.state_count()).map(|s| (!dead[s]).then(|| self.fresh(prefix))).collect();
        self.eps(from, nodes[dfa.start()].expect("live start"));
        for s in 0..dfa.state_count() {
            let Some(src) = nodes[s] else { continue };
            if dfa.is_accepting(s) {
                self.eps(src, to);
            }
            for a in 0..=self.level {
                if let Some(dst) = nodes[dfa.next(s, usize::from(a))] {
                    let ops: Vec<_> = steps.iter().map(|&(ch, op)| (ch, op, a)).collect();
                    self.chain(src, &ops, dst, prefix);
                }
            }
        }
        Ok(())
    }

    /// The meta-rule of a single channel in one of the three standard modes.
    pub fn expand_meta(
        &mut self,
        from: usize,
        to: usize,
        channel: usize,
        lang: &Lang,
        mode: MetaMode,
        prefix: &str,
    ) -> Result<(), GadgetError> {
        self.meta(from, to, lang, &mode.steps(channel), prefix)
    }

    /// Eliminates ε-edges, drops states unreachable from named states and
    /// duplicate rules, and sets the initial state.
    pub fn finish(mut self, initial: &str) -> Result<Pcs, GadgetError> {
        self.merge_eps_cycles();
        let n = self.names.len();
        let closure = self.eps_closure();
        let mut into = vec![Vec::new(); n];
        for (s0, cl) in closure.iter().enumerate() {
            for &s1 in cl {
                into[s1].push(s0);
            }
        }
        let mut useful = self.named.clone();
        for r in &self.rules {
            useful[r.from] = true;
        }
        let mut seen = HashSet::new();
        let mut rules = Vec::new();
        for r in &self.rules {
            for &s0 in &into[r.from] {
                for &s3 in closure[r.to].iter().filter(|&&s3| useful[s3]) {
                    let rule = Rule { from: s0, to: s3, ..*r };
                    if seen.insert(rule) {
                        rules.push(rule);
                    }
                }
            }
        }
        let mut out = vec![Vec::new(); n];
        for r in &rules {
            out[r.from].push(r.to);
        }
        let mut keep: Vec<bool> = self.named.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&s| keep[s]).collect();
        while let Some(s) = stack.pop() {
            for &t in &out[s] {
                if !keep[t] {
                    keep[t] = true;
                    stack.push(t);
                }
            }
        }
        let mut renumber = vec![usize::MAX; n];
        let mut states = Vec::new();
        for s in 0..n {
            if keep[s] {
                renumber[s] = states.len();
                states.push(self.names[s].clone());
            }
        }
        let mut pcs = Pcs::new(self.level, self.channels.clone(), states)?;
        for r in rules.into_iter().filter(|r| keep[r.from] && keep[r.to]) {
            pcs.push_rule(Rule { from: renumber[r.from], to: renumber[r.to], ..r })?;
        }
        pcs.set_initial(initial)?;
        Ok(pcs)
    }

    /// `closure[s]`: states reachable from `s` by ε-edges, `s` included.
    fn eps_closure(&self) -> Vec<BTreeSet<usize>> {
        let n = self.names.len();
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in &self.eps {
            succ[a].push(b);
        }
        (0..n)
            .map(|s| {
                let mut seen = BTreeSet::from([s]);
                let mut stack = vec![s];
                while let Some(x) = stack.pop() {
                    for &y in &succ[x] {
                        if seen.insert(y) {
                            stack.push(y);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Redirects every anonymous state lying on an ε-cycle to one state of its cycle,
    /// a named one when there is one. Named states are never merged.
    fn merge_eps_cycles(&mut self) {
        let closure = self.eps_closure();
        let n = self.names.len();
        let mut rep: Vec<usize> = (0..n).collect();
        for s in 0..n {
            if self.named[s] {
                continue;
            }
            let scc = closure[s].iter().copied().filter(|&t| closure[t].contains(&s));
            let best = scc.min_by_key(|&t| (!self.named[t], t)).unwrap_or(s);
            rep[s] = best;
        }
        for r in &mut self.rules {
            r.from = rep[r.from];
            r.to = rep[r.to];
        }
        for e in &mut self.eps {
            *e = (rep[e.0], rep[e.1]);
        }
        self.eps.retain(|(a, b)| a != b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcs::{enumerate_reachable, Bounds, Semantics};

    #[test]
    fn dollar_check_is_two_rules() {
        let mut b = Builder::new(1, &["c"]);
        let (p, q) = (b.state("p"), b.state("q"));
        b.expand_meta(p, q, 0, &Lang::Letter(1), MetaMode::ReadWriteBack, "m").unwrap();
        let pcs = b.finish("p").unwrap();
        assert_eq!(pcs.rules().len(), 2);
        assert_eq!(pcs.states().len(), 3);
    }

    #[test]
    fn zero_star_is_a_self_loop_pair() {
        let mut b = Builder::new(1, &["c"]);
        let p = b.state("p");
        b.expand_meta(p, p, 0, &Lang::star(Lang::Letter(0)), MetaMode::ReadWriteBack, "m").unwrap();
        let pcs = b.finish("p").unwrap();
        assert_eq!(pcs.rules().len(), 2);
        let r = &pcs.rules()[0];
        assert_eq!((r.from, r.op, r.letter), (0, Op::Read, 0));
        assert_eq!(pcs.rules()[1].to, 0);
    }

    #[test]
    fn proper_check_is_linear_in_the_level() {
        for d in 0..6u8 {
            let dfa = Lang::proper(i32::from(d)).compile(d + 1).unwrap();
            let live = dfa.dead_states().iter().filter(|dead| !**dead).count();
            assert!(live <= usize::from(d) + 2, "d={d}: {live}");
            let mut b = Builder::new(d + 1, &["o"]);
            let (p, q) = (b.state("p"), b.state("q"));
            b.expand_meta(p, q, 0, &Lang::proper(i32::from(d)), MetaMode::ReadWriteBack, "m").unwrap();
            let pcs = b.finish("p").unwrap();
            // one state per live automaton state, one between each read and its write-back
            let transitions = pcs.rules().iter().filter(|r| r.op == Op::Read).count();
            assert!(pcs.states().len() <= 2 + live + transitions);
        }
    }

    #[test]
    fn checking_p1_accepts_exactly_p1() {
        let mut b = Builder::new(2, &["o"]);
        let (p, q, r) = (b.state("p"), b.state("q"), b.state("r"));
        b.expand_meta(p, q, 0, &Lang::proper(1), MetaMode::ReadWriteBack, "m").unwrap();
        b.check_word(q, 0, &[2], r, "m");
        let pcs = b.finish("p").unwrap();
        let r = pcs.state_index("r").unwrap();
        for (x, ok) in [("0112", true), ("2", true), ("02", false), ("1012", true), ("102", false)] {
            let c0 = pcs.config("p", &[x]).unwrap();
            let reach = enumerate_reachable(&pcs, &c0, Semantics::Reliable, Bounds::new(1000, 10));
            let hit = reach.configs.iter().any(|c| c.state == r);
            assert_eq!(hit, ok, "{x}");
            if ok {
                assert!(reach.configs.iter().filter(|c| c.state == r).all(|c| c.channels[0].letters() == w_of(x)));
            }
        }
    }

    fn w_of(x: &str) -> Vec<Letter> {
        crate::word::w(x).into_letters()
    }
}
