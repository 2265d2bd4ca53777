//! Superseding, the priority embedding `⊑ₚ`, canonical factorizations and
//! closure automata.

mod labeled;

pub use labeled::{gen_pleq, FiniteEquality, LabelOrder, LabeledLetter, Stratum, SubwordOrder, TableOrder};

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::automata::{Dfa, Nfa};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("heights differ: {0:?} vs {1:?}")]
    HeightMismatch(Option<Letter>, Option<Letter>),
    #[error("label {label:?} does not belong to stratum {stratum}")]
    MalformedLabel { stratum: Letter, label: String },
    #[error("priority {priority} has no stratum in the label order")]
    MissingStratum { priority: Letter },
}

/// Words obtained by one internal superseding step: drop `a_k` when `a_k ≤ a_{k+1}`.
pub fn supersede_successors(x: &Word) -> Vec<Word> {
    successors_by(x, |a, b| a <= b)
}

/// Strict variant: drop `a_k` only when `a_k < a_{k+1}`.
pub fn strict_supersede_successors(x: &Word) -> Vec<Word> {
    successors_by(x, |a, b| a < b)
}

fn successors_by(x: &Word, drops: impl Fn(Letter, Letter) -> bool) -> Vec<Word> {
    let set: BTreeSet<Word> =
        x.windows(2).enumerate().filter(|(_, pair)| drops(pair[0], pair[1])).map(|(k, _)| x.without(k)).collect();
    set.into_iter().collect()
}

/// Reflexive-transitive closure of [`supersede_successors`]. Exponential; meant as an oracle.
pub fn supersede_closure(y: &Word) -> BTreeSet<Word> {
    let mut seen: HashSet<Word> = HashSet::from([y.clone()]);
    let mut stack = vec![y.clone()];
    while let Some(w) = stack.pop() {
        for next in supersede_successors(&w) {
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// Reachability table of the embedding DP: `table[j][i]` holds when the first
/// `j` letters of `y` can be consumed while matching the first `i` letters of `x`.
fn embedding_table(x: &[Letter], y: &[Letter]) -> Vec<Vec<bool>> {
    let mut table = vec![vec![false; x.len() + 1]; y.len() + 1];
    table[0][0] = true;
    for (j, &b) in y.iter().enumerate() {
        for i in 0..=x.len() {
            if !table[j][i] || i == x.len() {
                continue;
            }
            if b <= x[i] {
                table[j + 1][i] = true;
            }
            if b == x[i] {
                table[j + 1][i + 1] = true;
            }
        }
    }
    table
}

/// Decides `x ⊑ₚ y`: `y = z_1 a_1 ⋯ z_ℓ a_ℓ` with `x = a_1⋯a_ℓ` and every letter of `z_i` at most `a_i`.
pub fn pleq(x: &[Letter], y: &[Letter]) -> bool {
    embedding_table(x, y)[y.len()][x.len()]
}

/// Witness of `x ⊑ₚ y`: the positions of `y` matched by the letters of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub positions: Vec<usize>,
}

impl Embedding {
    /// The gap words `z_1, …, z_ℓ` preceding each matched letter.
    pub fn gaps(&self, y: &[Letter]) -> Vec<Word> {
        let mut start = 0;
        self.positions
            .iter()
            .map(|&p| {
                let gap = Word::from(&y[start..p]);
                start = p + 1;
                gap
            })
            .collect()
    }

    /// Unmatched positions of `y`, in increasing order.
    pub fn unmatched(&self, len: usize) -> Vec<usize> {
        let matched: BTreeSet<usize> = self.positions.iter().copied().collect();
        (0..len).filter(|p| !matched.contains(p)).collect()
    }

    /// Internal superseding positions (0-based, applied in order) that turn `y` into `x`.
    /// Unmatched letters are removed right to left; each is superseded by its right neighbour.
    pub fn supersede_path(&self, len: usize) -> Vec<usize> {
        self.unmatched(len).into_iter().rev().collect()
    }
}

pub fn pleq_witness(x: &[Letter], y: &[Letter]) -> Option<Embedding> {
    let table = embedding_table(x, y);
    if !table[y.len()][x.len()] {
        return None;
    }
    let mut positions = Vec::with_capacity(x.len());
    let mut i = x.len();
    for j in (0..y.len()).rev() {
        // step (j, ?) -> (j + 1, i)
        if i > 0 && y[j] == x[i - 1] && table[j][i - 1] {
            positions.push(j);
            i -= 1;
        } else {
            debug_assert!(i < x.len() && y[j] <= x[i] && table[j][i]);
        }
    }
    positions.reverse();
    Some(Embedding { positions })
}

/// `x = x_0 h x_1 h ⋯ h x_k` with `h` the highest letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalFactorization {
    /// `None` stands for height −1 (the empty word).
    pub height: Option<Letter>,
    pub residuals: Vec<Word>,
}

impl CanonicalFactorization {
    pub fn height_value(&self) -> i32 {
        self.height.map_or(-1, i32::from)
    }

    pub fn reassemble(&self) -> Word {
        let mut letters = Vec::new();
        for (i, r) in self.residuals.iter().enumerate() {
            if i > 0 {
                letters.push(self.height.expect("several residuals need a height"));
            }
            letters.extend_from_slice(r);
        }
        Word::new(letters)
    }
}

pub fn canonical_factorize(x: &[Letter]) -> CanonicalFactorization {
    let Some(h) = x.iter().copied().max() else {
        return CanonicalFactorization { height: None, residuals: vec![Word::empty()] };
    };
    let residuals = x.split(|&a| a == h).map(Word::from).collect();
    CanonicalFactorization { height: Some(h), residuals }
}

/// Sufficient condition for `x ⊑ₚ y` when both have the same height: indices
/// `0 = j_0 < j_1 < ⋯ < j_k = m` with `x_i ⊑ₚ y_{j_i}` for the residuals.
pub fn lemma6_check(x: &[Letter], y: &[Letter]) -> Result<bool, OrderError> {
    let fx = canonical_factorize(x);
    let fy = canonical_factorize(y);
    if fx.height != fy.height {
        return Err(OrderError::HeightMismatch(fx.height, fy.height));
    }
    let (xs, ys) = (&fx.residuals, &fy.residuals);
    let (k, m) = (xs.len() - 1, ys.len() - 1);
    if k > m {
        return Ok(false);
    }
    if k == 0 {
        return Ok(pleq(&xs[0], &ys[0]) && m == 0);
    }
    if !pleq(&xs[0], &ys[0]) || !pleq(&xs[k], &ys[m]) {
        return Ok(false);
    }
    // greedy earliest placement of the middle residuals in ys[1..m]
    let mut j = 1;
    for xi in &xs[1..k] {
        while j < m && !pleq(xi, &ys[j]) {
            j += 1;
        }
        if j >= m {
            return Ok(false);
        }
        j += 1;
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureKind {
    Up,
    Down,
}

/// Minimal DFA for `{w : x ⊑ₚ w}` (up) or `{w : w ⊑ₚ x}` (down) over `Σ_level`.
#[derive(Debug, Clone)]
pub struct ClosureAutomaton {
    pub kind: ClosureKind,
    pub level: Letter,
    dfa: Dfa,
}

impl ClosureAutomaton {
    pub fn accepts(&self, word: &[Letter]) -> bool {
        word.iter().all(|&a| a <= self.level) && self.dfa.accepts(word.iter().map(|&a| usize::from(a)))
    }

    pub fn state_count(&self) -> usize {
        self.dfa.state_count()
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }
}

pub fn closure_automaton(x: &[Letter], kind: ClosureKind, level: Letter) -> ClosureAutomaton {
    let alphabet = usize::from(level) + 1;
    let mut nfa = Nfa::new(alphabet);
    for i in 0..=x.len() {
        nfa.add_state(i == x.len());
    }
    nfa.set_start(0);
    match kind {
        ClosureKind::Up => {
            for (i, &a) in x.iter().enumerate() {
                for b in 0..=a.min(level) {
                    nfa.add_move(i, usize::from(b), i);
                }
                if a <= level {
                    nfa.add_move(i, usize::from(a), i + 1);
                }
            }
        }
        ClosureKind::Down => {
            for j in 0..x.len() {
                let mut floor = 0;
                for (p, &xp) in x.iter().enumerate().skip(j) {
                    floor = floor.max(xp);
                    // x[j..=p] collapses onto x[p] when x[p] dominates it
                    if xp == floor && xp <= level {
                        nfa.add_move(j, usize::from(xp), p + 1);
                    }
                }
            }
        }
    }
    ClosureAutomaton { kind, level, dfa: nfa.determinize().minimize() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use proptest::prelude::*;

    fn set(words: &[&str]) -> Vec<Word> {
        let mut v: Vec<Word> = words.iter().map(|s| w(s)).collect();
        v.sort();
        v
    }

    #[test]
    fn supersede_examples() {
        assert_eq!(supersede_successors(&w("02001")), set(&["2001", "0201"]));
        assert!(supersede_successors(&w("")).is_empty());
        assert!(supersede_successors(&w("21")).is_empty());
        assert_eq!(strict_supersede_successors(&w("01")), set(&["1"]));
        assert!(strict_supersede_successors(&w("00")).is_empty());
        assert_eq!(strict_supersede_successors(&w("021")), set(&["21"]));
    }

    #[test]
    fn pleq_examples() {
        assert!(pleq(&w("201"), &w("22011")));
        assert!(!pleq(&w("120"), &w("10210")));
        assert!(pleq(&w(""), &w("")));
        assert!(!pleq(&w(""), &w("0")));
        assert!(!pleq(&w("2"), &w("20")));
        assert!(pleq(&w("0"), &w("00")));
    }

    #[test]
    fn witness_gaps() {
        let y = w("22011");
        let e = pleq_witness(&w("201"), &y).unwrap();
        let gaps = e.gaps(&y);
        let x = w("201");
        for (g, &a) in gaps.iter().zip(x.iter()) {
            assert!(g.iter().all(|&b| b <= a));
        }
        let mut cur = y.clone();
        for p in e.supersede_path(y.len()) {
            assert!(cur[p] <= cur[p + 1]);
            cur = cur.without(p);
        }
        assert_eq!(cur, x);
    }

    #[test]
    fn factorization_examples() {
        let f = canonical_factorize(&w("0200"));
        assert_eq!(f.height, Some(2));
        assert_eq!(f.residuals, vec![w("0"), w("00")]);
        let f = canonical_factorize(&w("23312340121234"));
        assert_eq!(f.height, Some(4));
        assert_eq!(f.residuals, vec![w("233123"), w("012123"), w("")]);
        let f = canonical_factorize(&w(""));
        assert_eq!(f.height_value(), -1);
        assert_eq!(f.residuals, vec![w("")]);
        assert_eq!(f.reassemble(), w(""));
    }

    #[test]
    fn split_check_examples() {
        assert_eq!(lemma6_check(&w("202"), &w("2002")), Ok(pleq(&w("202"), &w("2002"))));
        assert_eq!(lemma6_check(&w("0120"), &w("0120")), Ok(true));
        assert_eq!(lemma6_check(&w("22"), &w("2")), Ok(false));
        assert!(matches!(lemma6_check(&w("1"), &w("2")), Err(OrderError::HeightMismatch(..))));
    }

    #[test]
    fn closure_examples() {
        let up = closure_automaton(&w("20"), ClosureKind::Up, 3);
        assert!(up.accepts(&w("20")) && up.accepts(&w("200")));
        assert!(!up.accepts(&w("02")) && !up.accepts(&w("2")) && !up.accepts(&w("23")));
        let eps = closure_automaton(&w(""), ClosureKind::Up, 2);
        assert!(eps.accepts(&w("")) && !eps.accepts(&w("0")));
        let down = closure_automaton(&w("20"), ClosureKind::Down, 2);
        assert!(down.accepts(&w("20")));
        for len in 0..4 {
            for word in all_words(len, 2) {
                assert_eq!(down.accepts(&word), word == w("20"));
            }
        }
    }

    fn all_words(len: usize, level: Letter) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out.iter().flat_map(|u| (0..=level).map(move |a| u.with(a))).collect();
        }
        out
    }

    #[test]
    fn closure_automata_agree_with_pleq() {
        for len in 0..=4 {
            for x in all_words(len, 2) {
                let up = closure_automaton(&x, ClosureKind::Up, 2);
                let down = closure_automaton(&x, ClosureKind::Down, 2);
                assert!(up.state_count() <= x.len() + 2, "{x} has {} states", up.state_count());
                for l in 0..=len + 3 {
                    for y in all_words(l, 2) {
                        assert_eq!(up.accepts(&y), pleq(&x, &y), "up {x} {y}");
                        if l <= len {
                            assert_eq!(down.accepts(&y), pleq(&y, &x), "down {x} {y}");
                        }
                    }
                }
            }
        }
    }

    fn word(max_len: usize, level: Letter) -> impl Strategy<Value = Word> {
        prop::collection::vec(0..=level, 0..=max_len).prop_map(Word::new)
    }

    proptest! {
        #[test]
        fn pleq_matches_supersede_closure(y in word(7, 3), x in word(4, 3)) {
            let closure = supersede_closure(&y);
            prop_assert_eq!(pleq(&x, &y), closure.contains(&x));
            for z in &closure {
                prop_assert!(pleq(z, &y));
            }
        }

        #[test]
        fn pleq_is_a_quasi_order(x in word(4, 2), y in word(5, 2), z in word(6, 2)) {
            prop_assert!(pleq(&x, &x));
            if pleq(&x, &y) && pleq(&y, &z) {
                prop_assert!(pleq(&x, &z));
            }
        }

        #[test]
        fn pleq_is_compatible_with_concatenation(
            x1 in word(3, 2), y1 in word(5, 2), x2 in word(3, 2), y2 in word(5, 2)
        ) {
            if pleq(&x1, &y1) && pleq(&x2, &y2) {
                prop_assert!(pleq(&x1.concat(&x2), &y1.concat(&y2)));
            }
        }

        #[test]
        fn pleq_splits(x1 in word(3, 2), x2 in word(3, 2), y in word(7, 2)) {
            let x = x1.concat(&x2);
            if let Some(e) = pleq_witness(&x, &y) {
                let cut = if x1.is_empty() { 0 } else { e.positions[x1.len() - 1] + 1 };
                prop_assert!(pleq(&x1, &y[..cut]));
                prop_assert!(pleq(&x2, &y[cut..]));
            }
        }

        #[test]
        fn split_check_is_sound(x in word(5, 2), y in word(7, 2)) {
            if let Ok(true) = lemma6_check(&x, &y) {
                prop_assert!(pleq(&x, &y));
            }
        }

        #[test]
        fn pleq_implies_subword_and_same_last(x in word(4, 3), y in word(7, 3)) {
            if pleq(&x, &y) && !x.is_empty() {
                prop_assert_eq!(x.last(), y.last());
                let mut it = y.iter();
                prop_assert!(x.iter().all(|a| it.any(|b| b == a)));
            }
        }

        #[test]
        fn strict_successors_are_successors(x in word(7, 3)) {
            let all = supersede_successors(&x);
            for s in strict_supersede_successors(&x) {
                prop_assert!(all.contains(&s));
            }
        }

        #[test]
        fn factorization_reassembles(x in word(10, 4)) {
            let f = canonical_factorize(&x);
            prop_assert_eq!(f.reassemble(), x);
            for r in &f.residuals {
                prop_assert!(r.iter().all(|&a| Some(a) < f.height));
            }
        }
    }
}
