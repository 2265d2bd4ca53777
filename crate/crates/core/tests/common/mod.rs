#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use prio_channels::order::pleq;
use prio_channels::pcs::{enumerate_reachable, Bounds, Config, Pcs, Semantics};
use prio_channels::Word;

pub const SEM: Semantics = Semantics::InternalSuperseding;

/// Configurations reachable in one or more steps, or `None` when the bounded
/// enumeration was cut short.
pub fn reach_plus(m: &Pcs, c0: &Config, sem: Semantics, bounds: Bounds) -> Option<HashSet<Config>> {
    let all = enumerate_reachable(m, c0, sem, bounds);
    if all.truncated {
        return None;
    }
    let back_to_start = all.configs.iter().any(|c| m.successors(c, sem).unwrap().iter().any(|(_, d)| d == c0));
    let mut out = all.configs;
    if !back_to_start {
        out.remove(c0);
    }
    Some(out)
}

/// Does the successor graph restricted to `set` contain a cycle?
pub fn has_cycle(m: &Pcs, set: &HashSet<Config>, sem: Semantics) -> bool {
    let succ: HashMap<&Config, Vec<Config>> =
        set.iter().map(|c| (c, m.successors(c, sem).unwrap().into_iter().map(|(_, d)| d).collect())).collect();
    // Kahn's algorithm: a cycle remains iff some node never reaches in-degree zero
    let mut indeg: HashMap<&Config, usize> = set.iter().map(|c| (c, 0)).collect();
    for ds in succ.values() {
        for d in ds {
            *indeg.get_mut(d).expect("closed set") += 1;
        }
    }
    let mut ready: Vec<&Config> = indeg.iter().filter(|(_, &k)| k == 0).map(|(c, _)| *c).collect();
    let mut removed = 0;
    while let Some(c) = ready.pop() {
        removed += 1;
        for d in &succ[c] {
            let k = indeg.get_mut(d).expect("closed set");
            *k -= 1;
            if *k == 0 {
                ready.push(set.get(d).expect("closed set"));
            }
        }
    }
    removed < set.len()
}

/// Whether some configuration of `set` lies above `target` in `≤_♯`.
pub fn hits(set: &HashSet<Config>, target: &Config) -> bool {
    set.iter().any(|c| c.state == target.state && c.channels.iter().zip(&target.channels).all(|(y, x)| pleq(x, y)))
}

/// All words over `0..=level` of length at most `max_len`.
pub fn words_upto(level: u8, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| (0..=level).map(move |a| w.with(a))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}
