//! Proper codes over `Σ_d`, their decomposition, the ordinal codec `η`/`s_a`,
//! successor and limit steps on codes, and bounded-depth trees.

mod trees;

pub use trees::{strong_embed, strong_embed_by, tree_decode, tree_encode, BoundedTree};

use thiserror::Error;

use crate::order::pleq;
use crate::ordinals::{hardy_eval, HardyBudget, OrdinalError, Term};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("{0} is not a proper code")]
    Improper(Word),
    #[error("the empty code has no {0}")]
    Empty(&'static str),
    #[error("{word} does not have height {level}")]
    WrongHeight { word: Word, level: u8 },
    #[error("depth {depth} does not fit level {level}")]
    DepthOverflow { depth: usize, level: i32 },
    #[error("{0} encodes a limit")]
    Limit(Word),
    #[error("{0} encodes a successor")]
    Successor(Word),
    #[error("arguments must satisfy 1 ≤ n ≤ n', got n={n}, n'={m}")]
    Arguments { n: u64, m: u64 },
    #[error("Hardy inequality violated: H^{left}({n}) = {lv} > H^{right}({m}) = {rv}")]
    Violation { left: String, right: String, n: u64, m: u64, lv: u64, rv: u64 },
    #[error("cannot parse tree {text:?}: {reason}")]
    TreeSyntax { text: String, reason: String },
    #[error("labeled trees have no code")]
    Labeled,
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

/// Empty, or ends with its maximal letter and never jumps up by more than one.
pub fn is_proper(x: &[Letter]) -> bool {
    let Some(&last) = x.last() else { return true };
    x.iter().all(|&a| a <= last) && x.windows(2).all(|p| p[1] <= p[0] + 1)
}

fn require_proper(x: &[Letter]) -> Result<(), EncodingError> {
    if is_proper(x) {
        Ok(())
    } else {
        Err(EncodingError::Improper(Word::from(x)))
    }
}

fn require_level(x: &[Letter], d: Letter) -> Result<(), EncodingError> {
    require_proper(x)?;
    match x.last() {
        None => Err(EncodingError::Empty("decomposition")),
        Some(h) if h == &d => Ok(()),
        Some(_) => Err(EncodingError::WrongHeight { word: Word::from(x), level: d }),
    }
}

/// `x = y_d y_{d-1} ⋯ y_a st_a^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub level: Letter,
    /// `y_d, y_{d-1}, …, y_a`.
    pub blocks: Vec<Word>,
    pub a: Letter,
}

impl Decomposition {
    pub fn block(&self, i: Letter) -> Option<&Word> {
        (self.a..=self.level).contains(&i).then(|| &self.blocks[usize::from(self.level - i)])
    }

    pub fn reassemble(&self) -> Word {
        let mut out: Vec<Letter> = self.blocks.iter().flat_map(|b| b.iter().copied()).collect();
        out.extend(self.a..=self.level);
        Word::new(out)
    }
}

/// `st_a^b = a (a+1) ⋯ b`, empty when `a > b`.
pub fn staircase(a: Letter, b: Letter) -> Word {
    (a..=b).collect()
}

pub fn decompose(x: &[Letter], d: Letter) -> Result<Decomposition, EncodingError> {
    require_level(x, d)?;
    let mut start = x.len() - 1;
    while start > 0 && x[start - 1] + 1 == x[start] {
        start -= 1;
    }
    let a = x[start];
    let mut rest = &x[..start];
    let mut blocks = Vec::with_capacity(usize::from(d - a) + 1);
    for i in (a..=d).rev() {
        let cut = rest.iter().rposition(|&b| b == i).map_or(0, |p| p + 1);
        blocks.push(Word::from(&rest[..cut]));
        rest = &rest[cut..];
    }
    debug_assert!(rest.is_empty());
    Ok(Decomposition { level: d, blocks, a })
}

/// Splits a nonempty proper code at occurrences of its height.
fn blocks(x: &[Letter]) -> impl Iterator<Item = &[Letter]> {
    let h = *x.last().expect("nonempty");
    x[..x.len() - 1].split(move |&b| b == h)
}

/// `η(ε) = 0`, `η(y z a) = η(y) + ω^{η(z)}`.
pub fn eta(x: &[Letter]) -> Result<Term, EncodingError> {
    require_proper(x)?;
    Ok(eta_unchecked(x))
}

fn eta_unchecked(x: &[Letter]) -> Term {
    if x.is_empty() {
        return Term::zero();
    }
    Term::Sum(blocks(x).map(eta_unchecked).collect())
}

/// `s_a(Σγ_i) = s_a(γ_1)⋯s_a(γ_p)`, `s_a(ω^α) = s_{a-1}(α)·a`.
pub fn encode(t: &Term, level: Letter) -> Result<Word, EncodingError> {
    if t.contains_epsilon0() {
        return Err(OrdinalError::Epsilon0("encode").into());
    }
    let depth = t.depth();
    if depth > usize::from(level) + 1 {
        return Err(EncodingError::DepthOverflow { depth, level: i32::from(level) });
    }
    let mut out = Vec::new();
    encode_into(t, i32::from(level), &mut out);
    Ok(Word::new(out))
}

fn encode_into(t: &Term, a: i32, out: &mut Vec<Letter>) {
    for e in t.exponents() {
        encode_into(e, a - 1, out);
        out.push(a as Letter);
    }
}

/// Drops the final `d` of a successor code.
pub fn code_pred(x: &[Letter], d: Letter) -> Result<Word, EncodingError> {
    if x.is_empty() {
        return Err(EncodingError::Empty("predecessor"));
    }
    let dec = decompose(x, d)?;
    if dec.a != d {
        return Err(EncodingError::Limit(Word::from(x)));
    }
    Ok(Word::from(&x[..x.len() - 1]))
}

/// `(x)_n = y_d ⋯ y_{a+1} (y_a (a+1))^n st_{a+2}^d`.
pub fn code_limit_expand(x: &[Letter], n: usize, d: Letter) -> Result<Word, EncodingError> {
    if x.is_empty() {
        return Err(EncodingError::Empty("fundamental sequence"));
    }
    let dec = decompose(x, d)?;
    let a = dec.a;
    if a == d {
        return Err(EncodingError::Successor(Word::from(x)));
    }
    let mut out: Vec<Letter> = dec.blocks[..dec.blocks.len() - 1].iter().flat_map(|b| b.iter().copied()).collect();
    let ya = dec.blocks.last().expect("y_a");
    for _ in 0..n {
        out.extend_from_slice(ya);
        out.push(a + 1);
    }
    out.extend(a + 2..=d);
    Ok(Word::new(out))
}

/// Outcome of [`robust_leq`]: the embedding answer and, when checked, the two Hardy values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustCheck {
    pub embeds: bool,
    pub hardy: Option<(u64, u64)>,
}

/// `x ⊑ₚ x'` together with a check of `H^{η(x)}(n) ≤ H^{η(x')}(n')`.
/// The budget running out leaves `hardy` empty.
pub fn robust_leq(
    x: &[Letter],
    y: &[Letter],
    n: u64,
    m: u64,
    budget: HardyBudget,
) -> Result<RobustCheck, EncodingError> {
    require_proper(x)?;
    require_proper(y)?;
    if n == 0 || n > m {
        return Err(EncodingError::Arguments { n, m });
    }
    let embeds = pleq(x, y);
    if !embeds {
        return Ok(RobustCheck { embeds, hardy: None });
    }
    let (a, b) = (eta_unchecked(x), eta_unchecked(y));
    let values = hardy_eval(&a, n, budget).and_then(|lv| Ok((lv, hardy_eval(&b, m, budget)?)));
    match values {
        Ok((lv, rv)) if lv > rv => {
            Err(EncodingError::Violation { left: a.to_string(), right: b.to_string(), n, m, lv, rv })
        }
        Ok(pair) => Ok(RobustCheck { embeds, hardy: Some(pair) }),
        Err(OrdinalError::Budget { .. }) => Ok(RobustCheck { embeds, hardy: None }),
        Err(e) => Err(e.into()),
    }
}
