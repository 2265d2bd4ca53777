//! Ordinal terms below ε₀ (plus the ε₀ symbol), Cantor normal forms,
//! fundamental sequences, Hardy and fast-growing hierarchies, the structural
//! embedding `≤ₒ`, and natural sum and product.

mod hardy;
mod natural;
mod syntax;

pub use hardy::{fgh_eval, hardy_eval, hardy_step, HardyBudget};
pub use natural::{leqo, maxot_bounds, natural_product, natural_sum, MaxotBounds};

use std::cmp::Ordering;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("ε₀ is not supported by {0}")]
    Epsilon0(&'static str),
    #[error("{0} is not a limit")]
    NotLimit(String),
    #[error("the Hardy step is undefined on 0")]
    Zero,
    #[error("budget exhausted after {steps} steps (counter {value})")]
    Budget { steps: u64, value: u64 },
    #[error("cannot parse term {text:?}: {reason}")]
    Syntax { text: String, reason: String },
}

/// `Sum([α₁, …, αₖ])` stands for `ω^α₁ + ⋯ + ω^αₖ`; the empty sum is 0.
/// Terms are kept as written and need not be in Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Sum(Vec<Term>),
    Epsilon0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Zero,
    Successor,
    Limit,
}

impl Term {
    pub fn zero() -> Term {
        Term::Sum(Vec::new())
    }

    pub fn one() -> Term {
        Term::nat(1)
    }

    pub fn nat(n: usize) -> Term {
        Term::Sum(vec![Term::zero(); n])
    }

    pub fn omega() -> Term {
        Term::omega_pow(Term::one())
    }

    pub fn omega_pow(exponent: Term) -> Term {
        Term::Sum(vec![exponent])
    }

    /// `Ω_0 = 1`, `Ω_{n+1} = ω^{Ω_n}`.
    pub fn tower(n: usize) -> Term {
        (0..n).fold(Term::one(), |t, _| Term::omega_pow(t))
    }

    /// Exponents of the summands. Panics on ε₀.
    pub fn exponents(&self) -> &[Term] {
        match self {
            Term::Sum(v) => v,
            Term::Epsilon0 => panic!("ε₀ has no summands"),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Term::Sum(v) if v.is_empty())
    }

    pub fn contains_epsilon0(&self) -> bool {
        match self {
            Term::Epsilon0 => true,
            Term::Sum(v) => v.iter().any(Term::contains_epsilon0),
        }
    }

    /// Term concatenation `self + other`.
    pub fn plus(&self, other: &Term) -> Term {
        match (self, other) {
            (Term::Sum(a), Term::Sum(b)) => Term::Sum(a.iter().chain(b).cloned().collect()),
            _ => Term::Epsilon0,
        }
    }

    /// `self` repeated `k` times.
    pub fn times(&self, k: usize) -> Term {
        (0..k).fold(Term::zero(), |acc, _| acc.plus(self))
    }

    /// Nesting depth: 0 for 0, 1 for positive integers, `1 + max depth of exponents` otherwise.
    pub fn depth(&self) -> usize {
        match self {
            Term::Epsilon0 => usize::MAX,
            Term::Sum(v) => v.iter().map(|e| 1 + e.depth()).max().unwrap_or(0),
        }
    }

    /// The integer value when the term is a finite sum of `ω^0`.
    pub fn as_nat(&self) -> Option<usize> {
        match self {
            Term::Sum(v) if v.iter().all(Term::is_zero) => Some(v.len()),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Epsilon0 => 1,
            Term::Sum(v) => 1 + v.iter().map(Term::size).sum::<usize>(),
        }
    }
}

pub fn classify(a: &Term) -> Kind {
    match a {
        Term::Epsilon0 => Kind::Limit,
        Term::Sum(v) => match v.last() {
            None => Kind::Zero,
            Some(e) if e.is_zero() => Kind::Successor,
            Some(_) => Kind::Limit,
        },
    }
}

/// Cantor normal form: exponents normalized and non-increasing.
pub fn to_cnf(a: &Term) -> Result<Term, OrdinalError> {
    match a {
        Term::Epsilon0 => Err(OrdinalError::Epsilon0("to_cnf")),
        Term::Sum(v) => {
            let mut out: Vec<Term> = Vec::with_capacity(v.len());
            for e in v {
                let e = to_cnf(e)?;
                while out.last().is_some_and(|top| cmp_cnf(top, &e) == Ordering::Less) {
                    out.pop();
                }
                out.push(e);
            }
            Ok(Term::Sum(out))
        }
    }
}

fn cmp_cnf(a: &Term, b: &Term) -> Ordering {
    match (a, b) {
        (Term::Epsilon0, Term::Epsilon0) => Ordering::Equal,
        (Term::Epsilon0, _) => Ordering::Greater,
        (_, Term::Epsilon0) => Ordering::Less,
        (Term::Sum(x), Term::Sum(y)) => {
            for (p, q) in x.iter().zip(y) {
                match cmp_cnf(p, q) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            x.len().cmp(&y.len())
        }
    }
}

/// Compares the ordinals denoted by two terms; ε₀ lies above every other term.
pub fn ord_cmp(a: &Term, b: &Term) -> Ordering {
    match (a, b) {
        (Term::Epsilon0, Term::Epsilon0) => Ordering::Equal,
        (Term::Epsilon0, _) => Ordering::Greater,
        (_, Term::Epsilon0) => Ordering::Less,
        _ => {
            let (a, b) = (to_cnf(a).expect("no ε₀"), to_cnf(b).expect("no ε₀"));
            cmp_cnf(&a, &b)
        }
    }
}

pub fn ord_lt(a: &Term, b: &Term) -> bool {
    ord_cmp(a, b) == Ordering::Less
}

/// Rewrites a limit term into its `n`-th fundamental term, in place.
pub(crate) fn fund_in_place(term: &mut Term, n: usize) -> Result<(), OrdinalError> {
    let exps = match term {
        Term::Epsilon0 => {
            *term = Term::tower(n);
            return Ok(());
        }
        Term::Sum(exps) => exps,
    };
    let Some(mut last) = exps.pop() else {
        return Err(OrdinalError::NotLimit("0".into()));
    };
    match classify(&last) {
        Kind::Zero => {
            exps.push(last);
            Err(OrdinalError::NotLimit(term.to_string()))
        }
        Kind::Successor => {
            let Term::Sum(inner) = &mut last else { unreachable!() };
            inner.pop();
            exps.extend(std::iter::repeat_n(last, n));
            Ok(())
        }
        Kind::Limit => {
            fund_in_place(&mut last, n)?;
            exps.push(last);
            Ok(())
        }
    }
}

/// `λ_n`: `(γ+ω^{β+1})_n = γ+ω^β·n`, `(γ+ω^λ)_n = γ+ω^{λ_n}`, `ε₀_n = Ω_n`.
pub fn fund_seq(l: &Term, n: usize) -> Result<Term, OrdinalError> {
    if classify(l) != Kind::Limit {
        return Err(OrdinalError::NotLimit(l.to_string()));
    }
    let mut t = l.clone();
    fund_in_place(&mut t, n)?;
    Ok(t)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&t("0")), Kind::Zero);
        assert_eq!(classify(&t("2")), Kind::Successor);
        assert_eq!(classify(&t("w^w")), Kind::Limit);
        assert_eq!(classify(&Term::Epsilon0), Kind::Limit);
    }

    #[test]
    fn normal_forms() {
        assert_eq!(to_cnf(&t("w + w^2")).unwrap(), t("w^2"));
        assert_eq!(to_cnf(&t("w^2 + w")).unwrap(), t("w^2 + w"));
        assert_eq!(to_cnf(&t("0")).unwrap(), t("0"));
        assert_eq!(to_cnf(&t("1 + w + 3")).unwrap(), t("w + 3"));
        assert!(to_cnf(&Term::Epsilon0).is_err());
    }

    #[test]
    fn comparisons() {
        assert!(ord_lt(&t("1"), &t("w")));
        assert!(ord_lt(&t("w + w^2"), &t("w^2 + 1")));
        assert!(ord_lt(&Term::tower(2), &Term::Epsilon0));
        assert!(!ord_lt(&Term::Epsilon0, &Term::Epsilon0));
        assert_eq!(ord_cmp(&t("1 + w"), &t("w")), Ordering::Equal);
    }

    #[test]
    fn fundamental_sequences() {
        assert_eq!(fund_seq(&t("w"), 5).unwrap(), t("5"));
        assert_eq!(fund_seq(&t("w^w"), 3).unwrap(), t("w^3"));
        assert_eq!(fund_seq(&Term::Epsilon0, 3).unwrap(), t("w^(w^w)"));
        assert_eq!(fund_seq(&t("w^2"), 2).unwrap(), t("w*2"));
        assert!(matches!(fund_seq(&t("w + 1"), 2), Err(OrdinalError::NotLimit(_))));
        assert!(matches!(fund_seq(&t("0"), 2), Err(OrdinalError::NotLimit(_))));
    }

    pub(crate) fn small_term(depth: u32) -> impl Strategy<Value = Term> {
        let leaf = (0usize..3).prop_map(Term::nat);
        leaf.prop_recursive(depth, 12, 3, |inner| prop::collection::vec(inner, 0..3).prop_map(Term::Sum))
    }

    proptest! {
        #[test]
        fn cnf_preserves_value_and_is_idempotent(a in small_term(3)) {
            let c = to_cnf(&a).unwrap();
            prop_assert_eq!(ord_cmp(&a, &c), Ordering::Equal);
            prop_assert_eq!(to_cnf(&c).unwrap(), c.clone());
            let v = c.exponents();
            prop_assert!(v.windows(2).all(|p| ord_cmp(&p[0], &p[1]) != Ordering::Less));
        }

        #[test]
        fn fundamental_sequences_increase(a in small_term(3), n in 0usize..4) {
            if classify(&a) == Kind::Limit {
                let x = fund_seq(&a, n).unwrap();
                let y = fund_seq(&a, n + 1).unwrap();
                prop_assert!(ord_cmp(&x, &y) != Ordering::Greater);
                prop_assert!(ord_lt(&y, &a));
                if n > 0 {
                    prop_assert!(ord_lt(&x, &y));
                }
            }
        }
    }
}
