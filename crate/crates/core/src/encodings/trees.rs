use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{require_proper, EncodingError};
use crate::word::{Letter, Word};

/// Finite ordered tree with optional node labels. Depth counts edges, so a leaf has depth 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BoundedTree {
    pub label: Option<String>,
    pub children: Vec<BoundedTree>,
}

impl BoundedTree {
    pub fn leaf() -> Self {
        BoundedTree::default()
    }

    pub fn node(children: Vec<BoundedTree>) -> Self {
        BoundedTree { label: None, children }
    }

    pub fn labeled(label: impl Into<String>, children: Vec<BoundedTree>) -> Self {
        BoundedTree { label: Some(label.into()), children }
    }

    pub fn depth(&self) -> usize {
        self.children.iter().map(|c| 1 + c.depth()).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(BoundedTree::size).sum::<usize>()
    }

    /// `t @ u`: `u` appended as a last child of the root.
    pub fn extend(&self, u: &BoundedTree) -> BoundedTree {
        let mut t = self.clone();
        t.children.push(u.clone());
        t
    }

    fn is_labeled(&self) -> bool {
        self.label.is_some() || self.children.iter().any(BoundedTree::is_labeled)
    }
}

/// `s_d(•()) = ε`, `s_d(•(t_1⋯t_n)) = s_{d-1}(t_1) d ⋯ s_{d-1}(t_n) d`.
pub fn tree_encode(t: &BoundedTree, d: Letter) -> Result<Word, EncodingError> {
    if t.is_labeled() {
        return Err(EncodingError::Labeled);
    }
    let depth = t.depth();
    if depth > usize::from(d) + 1 {
        return Err(EncodingError::DepthOverflow { depth, level: i32::from(d) + 1 });
    }
    let mut out = Vec::new();
    encode_into(t, i32::from(d), &mut out);
    Ok(Word::new(out))
}

fn encode_into(t: &BoundedTree, d: i32, out: &mut Vec<Letter>) {
    for c in &t.children {
        encode_into(c, d - 1, out);
        out.push(d as Letter);
    }
}

/// `τ(ε) = •()`, `τ(x_1 h ⋯ x_m h) = •(τ(x_1) ⋯ τ(x_m))`.
pub fn tree_decode(x: &[Letter]) -> Result<BoundedTree, EncodingError> {
    require_proper(x)?;
    Ok(decode(x))
}

fn decode(x: &[Letter]) -> BoundedTree {
    if x.is_empty() {
        return BoundedTree::leaf();
    }
    BoundedTree::node(super::blocks(x).map(decode).collect())
}

/// `t ⊑_T u` with equal labels.
pub fn strong_embed(t: &BoundedTree, u: &BoundedTree) -> bool {
    strong_embed_by(t, u, &|a, b| a == b)
}

/// `t ⊑_T u` where a retained node's label may be lowered along `label_leq`.
pub fn strong_embed_by<F>(t: &BoundedTree, u: &BoundedTree, label_leq: &F) -> bool
where
    F: Fn(Option<&str>, Option<&str>) -> bool,
{
    if !label_leq(t.label.as_deref(), u.label.as_deref()) {
        return false;
    }
    let mut rest = u.children.iter();
    t.children.iter().all(|c| rest.any(|d| strong_embed_by(c, d, label_leq)))
}

// tree  := label? '(' tree* ')' | label
// label := [A-Za-z0-9_]+
struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, reason: impl Into<String>) -> EncodingError {
        EncodingError::TreeSyntax { text: self.text.to_string(), reason: reason.into() }
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn label(&mut self) -> Option<String> {
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.text[start..self.pos].to_string())
    }

    fn tree(&mut self) -> Result<BoundedTree, EncodingError> {
        self.skip_ws();
        let label = self.label();
        if self.bytes.get(self.pos) != Some(&b'(') {
            return match label {
                Some(l) => Ok(BoundedTree::labeled(l, Vec::new())),
                None => Err(self.fail(format!("expected '(' or a label at {}", self.pos))),
            };
        }
        self.pos += 1;
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.bytes.get(self.pos) {
                Some(b')') => {
                    self.pos += 1;
                    return Ok(BoundedTree { label, children });
                }
                None => return Err(self.fail("missing ')'")),
                _ => children.push(self.tree()?),
            }
        }
    }
}

impl FromStr for BoundedTree {
    type Err = EncodingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { text: s, bytes: s.as_bytes(), pos: 0 };
        let t = p.tree()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.fail(format!("trailing input at {}", p.pos)));
        }
        Ok(t)
    }
}

impl fmt::Display for BoundedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.label, self.children.is_empty()) {
            (Some(l), true) => return f.write_str(l),
            (Some(l), false) => f.write_str(l)?,
            (None, _) => {}
        }
        f.write_str("(")?;
        for (i, c) in self.children.iter().enumerate() {
            let bare = |t: &BoundedTree| t.label.is_some() && t.children.is_empty();
            if i > 0 && (bare(&self.children[i - 1]) || c.label.is_some()) {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::pleq;
    use crate::word::w;
    use proptest::prelude::*;

    fn tr(s: &str) -> BoundedTree {
        s.parse().unwrap()
    }

    fn left() -> BoundedTree {
        tr("(()()())")
    }

    fn right() -> BoundedTree {
        tr("((()())())")
    }

    #[test]
    fn encodes_the_two_trees() {
        assert_eq!(tree_encode(&left(), 1).unwrap(), w("111"));
        assert_eq!(tree_encode(&left(), 2).unwrap(), w("222"));
        assert_eq!(tree_encode(&right(), 1).unwrap(), w("0011"));
        assert_eq!(tree_encode(&right(), 2).unwrap(), w("1122"));
        assert_eq!(tree_encode(&BoundedTree::leaf(), 0).unwrap(), w(""));
        assert!(matches!(tree_encode(&right(), 0), Err(EncodingError::DepthOverflow { .. })));
        assert_eq!(tree_decode(&w("0011")).unwrap(), right());
        assert!(tree_decode(&w("02")).is_err());
    }

    #[test]
    fn strong_embedding_examples() {
        assert!(strong_embed(&BoundedTree::leaf(), &right()));
        assert!(!strong_embed(&left(), &right()));
        assert!(!strong_embed(&right(), &left()));
        assert!(strong_embed(&left(), &left().extend(&right())));
        assert!(strong_embed(&tr("f((g)(h))"), &tr("f((g)(x)(h))")));
        assert!(!strong_embed(&tr("f(g)"), &tr("f(h)")));
        let below = |a: Option<&str>, b: Option<&str>| a == b || (a == Some("a") && b == Some("b"));
        assert!(strong_embed_by(&tr("f(a)"), &tr("f(b)"), &below));
    }

    #[test]
    fn reflection_is_not_an_equivalence() {
        // t is u with its first child deleted, yet the codes do not embed
        let t = tr("((()()))");
        let u = tr("((())(()()))");
        assert!(strong_embed(&t, &u));
        assert_eq!(tree_encode(&t, 2).unwrap(), w("112"));
        assert_eq!(tree_encode(&u, 2).unwrap(), w("12112"));
        assert!(!pleq(&w("112"), &w("12112")));
    }

    #[test]
    fn syntax_roundtrip() {
        for s in ["()", "(()())", "f((g)(h))", "f(g h)", "(a (b) c)", "x"] {
            assert_eq!(tr(s).to_string(), s, "{s}");
        }
        for s in ["", "(", "(()", "()x", "f(g"] {
            assert!(s.parse::<BoundedTree>().is_err(), "{s}");
        }
    }

    fn trees_of_depth(max_depth: usize, max_nodes: usize) -> Vec<BoundedTree> {
        // all trees with at most max_nodes nodes and at most max_depth levels of nodes
        fn forests(depth: usize, budget: usize) -> Vec<(Vec<BoundedTree>, usize)> {
            let mut out = vec![(Vec::new(), 0)];
            if depth == 0 {
                return out;
            }
            let mut i = 0;
            while i < out.len() {
                let (forest, used) = out[i].clone();
                for (t, n) in trees(depth, budget - used) {
                    let mut f = forest.clone();
                    f.push(t);
                    out.push((f, used + n));
                }
                i += 1;
            }
            out
        }
        fn trees(depth: usize, budget: usize) -> Vec<(BoundedTree, usize)> {
            if budget == 0 || depth == 0 {
                return Vec::new();
            }
            forests(depth - 1, budget - 1).into_iter().map(|(f, n)| (BoundedTree::node(f), n + 1)).collect()
        }
        trees(max_depth, max_nodes).into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn codes_reflect_strong_embedding() {
        let all = trees_of_depth(4, 6);
        assert!(all.len() > 20);
        for t in &all {
            let x = tree_encode(t, 2).unwrap();
            for u in &all {
                let y = tree_encode(u, 2).unwrap();
                if pleq(&x, &y) {
                    assert!(strong_embed(t, u), "{t} vs {u}");
                }
            }
        }
    }

    fn tree_strategy(depth: u32) -> impl Strategy<Value = BoundedTree> {
        Just(BoundedTree::leaf())
            .prop_recursive(depth, 24, 3, |inner| prop::collection::vec(inner, 0..4).prop_map(BoundedTree::node))
    }

    proptest! {
        #[test]
        fn tree_roundtrip(t in tree_strategy(3), extra in 0u8..2) {
            let d = (t.depth() as u8).saturating_sub(1) + extra;
            let x = tree_encode(&t, d).unwrap();
            prop_assert_eq!(tree_decode(&x).unwrap(), t.clone());
            prop_assert_eq!(t.to_string().parse::<BoundedTree>().unwrap(), t);
        }
    }
}
