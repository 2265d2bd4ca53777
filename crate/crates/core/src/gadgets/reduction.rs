use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::builder::{rwb, Builder};
use super::hardy::{add_hardy_loops, Direction, C, O, T};
use super::{GadgetError, Lang};
use crate::encodings::encode;
use crate::ordinals::Term;
use crate::pcs::{Op, Pcs};
use crate::word::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    L,
    R,
    S,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TmRule {
    pub state: String,
    pub read: Letter,
    pub write: Letter,
    #[serde(rename = "move")]
    pub mv: Move,
    pub next: String,
}

/// A deterministic Turing machine over tape symbols `0..symbols`, 0 being the blank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TinyTm {
    pub states: Vec<String>,
    pub symbols: Letter,
    pub start: String,
    pub halt: String,
    pub rules: Vec<TmRule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TmOutcome {
    Halted {
        steps: usize,
        tape: Vec<Letter>,
    },
    /// The head moved right of the last cell.
    OutOfSpace {
        steps: usize,
    },
    /// No rule applies.
    Stuck {
        steps: usize,
    },
    Running,
}

impl TinyTm {
    pub fn from_json(text: &str) -> Result<TinyTm, GadgetError> {
        let tm: TinyTm = serde_json::from_str(text).map_err(|e| GadgetError::Tm(e.to_string()))?;
        tm.validate()?;
        Ok(tm)
    }

    pub fn validate(&self) -> Result<(), GadgetError> {
        let bad = |msg: String| Err(GadgetError::Tm(msg));
        if self.symbols == 0 {
            return bad("at least the blank symbol is needed".into());
        }
        for s in [&self.start, &self.halt] {
            if !self.states.contains(s) {
                return bad(format!("unknown state {s:?}"));
            }
        }
        if self.start == self.halt {
            return bad("the start state cannot be the halting state".into());
        }
        for (i, r) in self.rules.iter().enumerate() {
            if !self.states.contains(&r.state) || !self.states.contains(&r.next) {
                return bad(format!("rule {i} mentions an unknown state"));
            }
            if r.read >= self.symbols || r.write >= self.symbols {
                return bad(format!("rule {i} uses a symbol outside 0..{}", self.symbols));
            }
            if r.state == self.halt {
                return bad(format!("rule {i} leaves the halting state"));
            }
            if self.rules[..i].iter().any(|o| o.state == r.state && o.read == r.read) {
                return bad(format!("rule {i} makes the machine nondeterministic"));
            }
        }
        Ok(())
    }

    /// Number of states plus number of rules.
    pub fn size(&self) -> usize {
        self.states.len() + self.rules.len()
    }

    pub fn lookup(&self, state: &str, read: Letter) -> Option<&TmRule> {
        self.rules.iter().find(|r| r.state == state && r.read == read)
    }

    /// Runs on `cells` blank cells with the head on the first one. A left move
    /// on the first cell stays put; the move of a halting transition is ignored.
    pub fn simulate(&self, cells: usize, max_steps: usize) -> TmOutcome {
        let mut tape = vec![0; cells];
        let (mut head, mut q) = (0usize, self.start.as_str());
        if cells == 0 {
            return TmOutcome::OutOfSpace { steps: 0 };
        }
        for steps in 1..=max_steps {
            let Some(r) = self.lookup(q, tape[head]) else { return TmOutcome::Stuck { steps: steps - 1 } };
            tape[head] = r.write;
            q = &r.next;
            if *q == self.halt {
                return TmOutcome::Halted { steps, tape };
            }
            match r.mv {
                Move::L => head = head.saturating_sub(1),
                Move::S => {}
                Move::R => {
                    head += 1;
                    if head == cells {
                        return TmOutcome::OutOfSpace { steps };
                    }
                }
            }
        }
        TmOutcome::Running
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOptions {
    /// Initial ordinal; `Ω_d` when absent.
    pub alpha: Option<Term>,
    /// Initial counter; `|M|` when absent.
    pub n: Option<usize>,
    /// Code level `d`; the least admissible level when absent.
    pub level: Option<Letter>,
    /// Adds a fourth channel `b` holding a time budget of one unit per TM step.
    pub time_budget: bool,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub pcs: Pcs,
    pub level: Letter,
    pub alpha: Term,
    pub n: usize,
    /// Block name to number of states.
    pub blocks: BTreeMap<String, usize>,
}

impl Reduction {
    pub const INITIAL: &'static str = "q0";
    pub const FINAL: &'static str = "q_h";
}

/// Block of a generated state name: `fwd.s1`, `bwd.s4`, `tm`, `seed`, `drain`, ...
pub fn block_of(name: &str) -> String {
    let base = name.split('~').next().unwrap_or(name);
    let mut parts = base.split('.');
    let first = parts.next().unwrap_or_default();
    match (first, parts.next()) {
        ("fwd" | "bwd", Some(second)) => format!("{first}.{second}"),
        _ => first.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Phase {
    q: usize,
    next: Option<usize>,
    pending: Option<Letter>,
    mark: bool,
}

enum Target {
    Phase(Phase),
    Rotation(usize),
    Halt,
}

/// One letter of a rotation: the cell (or `$` when `None`) read from c, the
/// letters written back, and the control phase that follows. A plain symbol
/// `g` is the letter `g`; the cell under the head is `k + g`.
fn rotate(tm: &TinyTm, k: Letter, ph: Phase, read: Option<Letter>, dollar: Letter) -> Option<(Vec<Letter>, Target)> {
    let halt = tm.states.iter().position(|s| *s == tm.halt).expect("validated");
    let mut writes: Vec<Letter> = Vec::new();
    let mut next = ph;
    match read {
        None => {
            let q2 = ph.next.filter(|_| !ph.mark)?;
            writes.extend(ph.pending);
            writes.push(dollar);
            return Some((writes, if q2 == halt { Target::Halt } else { Target::Rotation(q2) }));
        }
        Some(x) if x >= k => {
            if ph.next.is_some() {
                return None;
            }
            let r = tm.lookup(&tm.states[ph.q], x - k)?;
            let q2 = tm.states.iter().position(|s| *s == r.next).expect("validated");
            next.next = Some(q2);
            if q2 == halt {
                writes.extend(ph.pending);
                next.pending = Some(r.write);
            } else {
                match (r.mv, ph.pending) {
                    (Move::L, Some(p)) => {
                        writes.push(k + p);
                        next.pending = Some(r.write);
                    }
                    (Move::L, None) | (Move::S, _) => {
                        writes.extend(ph.pending);
                        next.pending = Some(k + r.write);
                    }
                    (Move::R, _) => {
                        writes.extend(ph.pending);
                        next.pending = Some(r.write);
                        next.mark = true;
                    }
                }
            }
        }
        Some(g) => {
            writes.extend(ph.pending);
            next.pending = Some(if ph.mark { k + g } else { g });
            next.mark = false;
        }
    }
    Some((writes, Target::Phase(next)))
}

/// The three-stage machine: seed, forward Hardy computer, TM simulation on
/// channel c, backward Hardy computer, and a drain back to empty channels.
pub fn build_reduction(tm: &TinyTm, opts: &ReductionOptions) -> Result<Reduction, GadgetError> {
    tm.validate()?;
    let k = tm.symbols;
    let tm_level = 2 * k - 1;
    let (d, alpha) = match &opts.alpha {
        Some(a) => {
            if a.contains_epsilon0() {
                return Err(GadgetError::Parameter("the initial ordinal must lie below ε₀".into()));
            }
            let need = tm_level.max(a.depth().saturating_sub(1).min(usize::from(u8::MAX - 2)) as Letter);
            let d = opts.level.unwrap_or(need);
            if d < need {
                return Err(GadgetError::Parameter(format!("level {d} is below the required {need}")));
            }
            (d, a.clone())
        }
        None => {
            let need = tm_level.max((tm.size() + 1).min(usize::from(u8::MAX - 2)) as Letter);
            let d = opts.level.unwrap_or(need);
            if d < tm_level {
                return Err(GadgetError::Parameter(format!("level {d} is below the required {tm_level}")));
            }
            (d, Term::tower(usize::from(d)))
        }
    };
    let n = opts.n.unwrap_or(tm.size());
    let s = d + 1;
    let code = encode(&alpha, d)?.into_letters();
    let mut channels = vec!["o", "c", "t"];
    if opts.time_budget {
        channels.push("b");
    }
    let mut b = Builder::new(d + 1, &channels);
    let bud = 3;
    let q0 = b.state(Reduction::INITIAL);
    let fwd = b.state("fwd");
    let p0 = b.state("p0");
    let ph = b.state("p_h");
    let bwd = b.state("bwd");
    let qh = b.state(Reduction::FINAL);

    let mut o_word = code.clone();
    o_word.push(s);
    let mut c_word = vec![0; n];
    c_word.push(s);
    let mut seed: Vec<(usize, Op, Letter)> = o_word.iter().map(|&a| (O, Op::Write, a)).collect();
    seed.extend(c_word.iter().map(|&a| (C, Op::Write, a)));
    seed.push((T, Op::Write, s));
    if opts.time_budget {
        seed.push((bud, Op::Write, s));
    }
    b.chain(q0, &seed, fwd, "seed");

    add_hardy_loops(&mut b, d, Direction::Fwd, fwd, "fwd.")?;
    b.check_word(fwd, T, &[s], p0, "fwd");

    // mark the first cell as the head
    let mut init = p0;
    if opts.time_budget {
        let m = b.fresh("tm");
        b.meta(p0, m, &Lang::star(Lang::Letter(0)), &[(C, Op::Read), (C, Op::Write), (bud, Op::Write)], "tm")?;
        init = b.fresh("tm");
        b.chain(m, &[(C, Op::Read, s), (C, Op::Write, s), (bud, Op::Read, s), (bud, Op::Write, s)], init, "tm");
    }
    let m1 = b.fresh("tm");
    let m2 = b.fresh("tm");
    b.chain(init, &[(C, Op::Read, 0), (C, Op::Write, k)], m1, "tm");
    b.meta(m1, m2, &Lang::star(Lang::Letter(0)), &rwb(C), "tm")?;
    let rotation: Vec<usize> = tm.states.iter().map(|q| b.state(&format!("tm.{q}"))).collect();
    let start = tm.states.iter().position(|q| *q == tm.start).expect("validated");
    b.check_word(m2, C, &[s], rotation[start], "tm");

    let mut phases: HashMap<Phase, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let halt = tm.states.iter().position(|q| *q == tm.halt).expect("validated");
    for q in (0..tm.states.len()).filter(|&q| q != halt) {
        let ph0 = Phase { q, next: None, pending: None, mark: false };
        let body = if opts.time_budget {
            let st = b.fresh("tm");
            b.read_word(rotation[q], bud, &[0], st, "tm");
            st
        } else {
            rotation[q]
        };
        phases.insert(ph0, body);
        queue.push_back(ph0);
    }
    while let Some(phase) = queue.pop_front() {
        let from = phases[&phase];
        let reads = (0..2 * k).map(Some).chain([None]);
        for read in reads {
            let Some((writes, target)) = rotate(tm, k, phase, read, s) else { continue };
            let to = match target {
                Target::Halt => ph,
                Target::Rotation(q) => rotation[q],
                Target::Phase(p) => *phases.entry(p).or_insert_with(|| {
                    queue.push_back(p);
                    b.fresh("tm")
                }),
            };
            let mut ops = vec![(C, Op::Read, read.unwrap_or(s))];
            ops.extend(writes.iter().map(|&a| (C, Op::Write, a)));
            b.chain(from, &ops, to, "tm");
        }
    }

    if opts.time_budget {
        let m = b.fresh("drain");
        b.meta(ph, m, &Lang::star(Lang::Letter(0)), &[(bud, Op::Read)], "drain")?;
        b.read_word(m, bud, &[s], bwd, "drain");
    } else {
        b.eps(ph, bwd);
    }
    add_hardy_loops(&mut b, d, Direction::Bwd, bwd, "bwd.")?;
    let mut drain: Vec<(usize, Op, Letter)> = o_word.iter().map(|&a| (O, Op::Read, a)).collect();
    drain.extend(c_word.iter().map(|&a| (C, Op::Read, a)));
    drain.push((T, Op::Read, s));
    b.chain(bwd, &drain, qh, "drain");

    let pcs = b.finish(Reduction::INITIAL)?;
    let mut blocks = BTreeMap::new();
    for name in pcs.states() {
        *blocks.entry(block_of(name)).or_insert(0) += 1;
    }
    Ok(Reduction { pcs, level: d, alpha, n, blocks })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::pcs::{enumerate_reachable, find_run, Bounds, Semantics};

    /// Clears nothing and halts at once.
    pub(crate) fn halting_tm() -> TinyTm {
        TinyTm::from_json(
            r#"{"states":["s","h"],"symbols":1,"start":"s","halt":"h",
                "rules":[{"state":"s","read":0,"write":0,"move":"S","next":"h"}]}"#,
        )
        .unwrap()
    }

    /// Writes a 1, moves right, comes back, clears it, then halts.
    pub(crate) fn two_state_tm() -> TinyTm {
        TinyTm::from_json(
            r#"{"states":["a","b","h"],"symbols":2,"start":"a","halt":"h",
                "rules":[{"state":"a","read":0,"write":1,"move":"R","next":"b"},
                         {"state":"b","read":0,"write":0,"move":"L","next":"a"},
                         {"state":"a","read":1,"write":0,"move":"S","next":"h"}]}"#,
        )
        .unwrap()
    }

    pub(crate) fn looping_tm() -> TinyTm {
        TinyTm::from_json(
            r#"{"states":["s","h"],"symbols":1,"start":"s","halt":"h",
                "rules":[{"state":"s","read":0,"write":0,"move":"S","next":"s"}]}"#,
        )
        .unwrap()
    }

    pub(crate) fn small(tm: &TinyTm) -> Reduction {
        let opts = ReductionOptions { alpha: Some(Term::omega()), n: Some(2), ..Default::default() };
        build_reduction(tm, &opts).unwrap()
    }

    #[test]
    fn machines_validate() {
        assert_eq!(two_state_tm().simulate(4, 100), TmOutcome::Halted { steps: 3, tape: vec![0; 4] });
        assert_eq!(two_state_tm().simulate(1, 100), TmOutcome::OutOfSpace { steps: 1 });
        assert_eq!(looping_tm().simulate(4, 50), TmOutcome::Running);
        let mut bad = halting_tm();
        bad.rules.push(bad.rules[0].clone());
        assert!(matches!(bad.validate(), Err(GadgetError::Tm(_))));
        bad = halting_tm();
        bad.halt = "s".into();
        assert!(bad.validate().is_err());
    }

    #[test]
    fn generated_blocks() {
        let r = small(&two_state_tm());
        let names: Vec<&str> = r.blocks.keys().map(String::as_str).collect();
        assert_eq!(
            names,
            ["bwd", "bwd.s2", "bwd.s4", "drain", "fwd", "fwd.s1", "fwd.s3", "p0", "p_h", "q0", "q_h", "seed", "tm"]
        );
        assert_eq!(r.level, 3);
        assert!(r.pcs.validate().is_ok());
        let default = build_reduction(&halting_tm(), &ReductionOptions::default()).unwrap();
        assert_eq!(default.level, 4);
        assert_eq!(default.alpha, Term::tower(4));
        assert_eq!(default.n, 3);
        let timed =
            build_reduction(&halting_tm(), &ReductionOptions { time_budget: true, ..Default::default() }).unwrap();
        assert_eq!(timed.pcs.channels(), ["o", "c", "t", "b"]);
    }

    fn covers_final(r: &Reduction) -> bool {
        let q0 = r.pcs.empty_config(r.pcs.state_index(Reduction::INITIAL).unwrap());
        let goal = r.pcs.empty_config(r.pcs.state_index(Reduction::FINAL).unwrap());
        let (run, _) = find_run(&r.pcs, &q0, Semantics::Reliable, Bounds::new(2_000_000, 40), |c| *c == goal);
        run.is_some_and(|run| run.replay(&r.pcs).is_ok())
    }

    #[test]
    fn halting_machines_reach_the_end() {
        assert!(covers_final(&small(&halting_tm())));
        assert!(covers_final(&small(&two_state_tm())));
    }

    #[test]
    fn looping_machine_never_halts() {
        let r = small(&looping_tm());
        let q0 = r.pcs.empty_config(r.pcs.state_index(Reduction::INITIAL).unwrap());
        let reach = enumerate_reachable(&r.pcs, &q0, Semantics::InternalSuperseding, Bounds::new(2_000_000, 40));
        assert!(!reach.truncated);
        let ph = r.pcs.state_index("p_h").unwrap();
        assert!(reach.configs.iter().all(|c| c.state != ph));
        let rotation = r.pcs.state_index("tm.s").unwrap();
        let budgets: std::collections::BTreeSet<usize> =
            reach.configs.iter().filter(|c| c.state == rotation).map(|c| c.channels[1].len() - 1).collect();
        // superseding may erase cells, down to an empty tape; nothing exceeds H^ω(2) = 4
        assert_eq!(budgets.into_iter().collect::<Vec<_>>(), [0, 1, 2, 3, 4]);
    }
}
