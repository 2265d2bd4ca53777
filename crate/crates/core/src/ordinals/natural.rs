use serde::Serialize;

use super::{ord_cmp, to_cnf, OrdinalError, Term};

/// Structural embedding: the summands of `a` map injectively and in order to
/// summands of `b` with `≤ₒ` exponents.
pub fn leqo(a: &Term, b: &Term) -> Result<bool, OrdinalError> {
    if a.contains_epsilon0() || b.contains_epsilon0() {
        return Err(OrdinalError::Epsilon0("leqo"));
    }
    Ok(embeds(a, b))
}

fn embeds(a: &Term, b: &Term) -> bool {
    let mut rest = b.exponents().iter();
    // leftmost matching is complete for subsequence embeddings
    a.exponents().iter().all(|x| rest.any(|y| embeds(x, y)))
}

fn sort_desc(mut v: Vec<Term>) -> Term {
    v.sort_by(|x, y| ord_cmp(y, x));
    Term::Sum(v)
}

/// `a ⊕ b`, in Cantor normal form.
pub fn natural_sum(a: &Term, b: &Term) -> Result<Term, OrdinalError> {
    let (a, b) = (to_cnf(a)?, to_cnf(b)?);
    Ok(sort_desc(a.exponents().iter().chain(b.exponents()).cloned().collect()))
}

/// `a ⊗ b`, in Cantor normal form: `ω^x ⊗ ω^y = ω^{x⊕y}` distributed over sums.
pub fn natural_product(a: &Term, b: &Term) -> Result<Term, OrdinalError> {
    let (a, b) = (to_cnf(a)?, to_cnf(b)?);
    let mut out = Vec::with_capacity(a.exponents().len() * b.exponents().len());
    for x in a.exponents() {
        for y in b.exponents() {
            out.push(natural_sum(x, y)?);
        }
    }
    Ok(sort_desc(out))
}

fn power(base: &Term, m: usize) -> Result<Term, OrdinalError> {
    (0..m).try_fold(Term::one(), |acc, _| natural_product(&acc, base))
}

/// Order-type bounds for configurations with `m` channels of level `d` and `q` states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxotBounds {
    /// `o_{-1}, o_0, …, o_d`.
    pub o: Vec<String>,
    /// `o_d^{⊗m} ⊗ q`.
    pub config_bound: String,
    /// `Ω_{2d+1}^{⊗m} ⊗ q`.
    pub envelope: String,
    #[serde(skip)]
    pub terms: Vec<Term>,
    #[serde(skip)]
    pub config_term: Term,
    #[serde(skip)]
    pub envelope_term: Term,
}

/// `o_{-1} = 1`, `o_k = ω^{ω^{o_{k-1}}} ⊗ o_{k-1} ⊗ o_{k-1} ⊗ k`, the factor `k` omitted at `k = 0`.
pub fn maxot_bounds(d: u8, m: usize, q: usize) -> Result<MaxotBounds, OrdinalError> {
    let mut terms = vec![Term::one()];
    for k in 0..=usize::from(d) {
        let prev = terms.last().expect("o_{-1}").clone();
        let mut o = Term::omega_pow(Term::omega_pow(prev.clone()));
        o = natural_product(&o, &prev)?;
        o = natural_product(&o, &prev)?;
        if k > 0 {
            o = natural_product(&o, &Term::nat(k))?;
        }
        terms.push(o);
    }
    let od = terms.last().expect("o_d");
    let config_term = natural_product(&power(od, m)?, &Term::nat(q))?;
    let envelope_term = natural_product(&power(&Term::tower(2 * usize::from(d) + 1), m)?, &Term::nat(q))?;
    Ok(MaxotBounds {
        o: terms.iter().map(Term::to_string).collect(),
        config_bound: config_term.to_string(),
        envelope: envelope_term.to_string(),
        terms,
        config_term,
        envelope_term,
    })
}
