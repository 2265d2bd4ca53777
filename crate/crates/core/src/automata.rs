//! Small finite automata over a dense alphabet `0..alphabet`, used for
//! closure automata and for compiling gadget languages.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Nondeterministic automaton with ε-moves.
#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: usize,
    start: BTreeSet<usize>,
    accepting: Vec<bool>,
    moves: Vec<Vec<Vec<usize>>>,
    eps: Vec<Vec<usize>>,
}

impl Nfa {
    pub fn new(alphabet: usize) -> Self {
        Nfa { alphabet, start: BTreeSet::new(), accepting: Vec::new(), moves: Vec::new(), eps: Vec::new() }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.moves.push(vec![Vec::new(); self.alphabet]);
        self.eps.push(Vec::new());
        self.accepting.len() - 1
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn set_start(&mut self, state: usize) {
        self.start.insert(state);
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn add_move(&mut self, from: usize, letter: usize, to: usize) {
        self.moves[from][letter].push(to);
    }

    pub fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].push(to);
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.eps[s] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    /// Subset construction. The result is complete; the empty subset becomes a sink.
    pub fn determinize(&self) -> Dfa {
        let mut start = self.start.clone();
        self.closure(&mut start);
        let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut trans: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let subset = subsets[id].clone();
            let mut row = Vec::with_capacity(self.alphabet);
            for letter in 0..self.alphabet {
                let mut next: BTreeSet<usize> =
                    subset.iter().flat_map(|&s| self.moves[s][letter].iter().copied()).collect();
                self.closure(&mut next);
                let target = match index.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = subsets.len();
                        subsets.push(next.clone());
                        index.insert(next, t);
                        queue.push_back(t);
                        t
                    }
                };
                row.push(target);
            }
            if trans.len() <= id {
                trans.resize(id + 1, Vec::new());
            }
            trans[id] = row;
        }
        let accepting = subsets.iter().map(|s| s.iter().any(|&q| self.accepting[q])).collect();
        Dfa { alphabet: self.alphabet, start: 0, accepting, trans }
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut current = self.start.clone();
        self.closure(&mut current);
        for &letter in word {
            let mut next: BTreeSet<usize> =
                current.iter().flat_map(|&s| self.moves[s][letter].iter().copied()).collect();
            self.closure(&mut next);
            current = next;
        }
        current.iter().any(|&s| self.accepting[s])
    }
}

/// Complete deterministic automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: usize,
    start: usize,
    accepting: Vec<bool>,
    trans: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn next(&self, state: usize, letter: usize) -> usize {
        self.trans[state][letter]
    }

    pub fn run(&self, word: impl IntoIterator<Item = usize>) -> usize {
        word.into_iter().fold(self.start, |s, a| self.trans[s][a])
    }

    pub fn accepts(&self, word: impl IntoIterator<Item = usize>) -> bool {
        self.accepting[self.run(word)]
    }

    /// States from which no accepting state is reachable.
    pub fn dead_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut alive = self.accepting.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for s in 0..n {
                if !alive[s] && self.trans[s].iter().any(|&t| alive[t]) {
                    alive[s] = true;
                    changed = true;
                }
            }
        }
        alive.into_iter().map(|a| !a).collect()
    }

    /// Moore partition refinement, restricted to states reachable from the start.
    pub fn minimize(&self) -> Dfa {
        let mut reachable = vec![false; self.state_count()];
        let mut order = vec![self.start];
        reachable[self.start] = true;
        let mut i = 0;
        while i < order.len() {
            for &t in &self.trans[order[i]] {
                if !reachable[t] {
                    reachable[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        let mut class: Vec<usize> = (0..self.state_count()).map(|s| usize::from(self.accepting[s])).collect();
        loop {
            let mut signatures: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut next = vec![0; self.state_count()];
            for &s in &order {
                let sig = (class[s], self.trans[s].iter().map(|&t| class[t]).collect::<Vec<_>>());
                let fresh = signatures.len();
                next[s] = *signatures.entry(sig).or_insert(fresh);
            }
            let old_count = order.iter().map(|&s| class[s]).collect::<BTreeSet<_>>().len();
            let stable = signatures.len() == old_count;
            class = next;
            if stable {
                break;
            }
        }
        // renumber in breadth-first order from the start
        let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
        for &s in &order {
            let fresh = renumber.len();
            renumber.entry(class[s]).or_insert(fresh);
        }
        let count = renumber.len();
        let mut accepting = vec![false; count];
        let mut trans = vec![Vec::new(); count];
        for &s in &order {
            let id = renumber[&class[s]];
            accepting[id] = self.accepting[s];
            trans[id] = self.trans[s].iter().map(|&t| renumber[&class[t]]).collect();
        }
        Dfa { alphabet: self.alphabet, start: renumber[&class[self.start]], accepting, trans }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // (ab)* over {a=0, b=1}
    fn ab_star() -> Nfa {
        let mut nfa = Nfa::new(2);
        let s = nfa.add_state(true);
        let m = nfa.add_state(false);
        let extra = nfa.add_state(true);
        nfa.set_start(s);
        nfa.add_move(s, 0, m);
        nfa.add_move(m, 1, extra);
        nfa.add_eps(extra, s);
        nfa
    }

    #[test]
    fn determinize_agrees_with_nfa() {
        let nfa = ab_star();
        let dfa = nfa.determinize();
        let min = dfa.minimize();
        for len in 0..6 {
            for bits in 0..(1usize << len) {
                let word: Vec<usize> = (0..len).map(|i| (bits >> i) & 1).collect();
                let expected = nfa.accepts(&word);
                assert_eq!(dfa.accepts(word.iter().copied()), expected);
                assert_eq!(min.accepts(word.iter().copied()), expected);
            }
        }
        assert_eq!(min.state_count(), 3);
    }

    #[test]
    fn dead_states_found() {
        let dfa = ab_star().determinize().minimize();
        let dead = dfa.dead_states();
        assert_eq!(dead.iter().filter(|&&d| d).count(), 1);
        assert!(!dead[dfa.start()]);
    }
}
