use super::{classify, fund_in_place, Kind, OrdinalError, Term};

/// Ceilings for Hardy evaluation. `PCS_BUDGET_STEPS` overrides `max_steps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HardyBudget {
    pub max_value: u64,
    pub max_steps: u64,
}

impl HardyBudget {
    pub const DEFAULT_VALUE: u64 = 1_000_000;
    pub const DEFAULT_STEPS: u64 = 10_000_000;

    pub fn from_env() -> Self {
        let max_steps = std::env::var("PCS_BUDGET_STEPS")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&s| s > 0)
            .unwrap_or(Self::DEFAULT_STEPS);
        HardyBudget { max_value: Self::DEFAULT_VALUE, max_steps }
    }
}

impl Default for HardyBudget {
    fn default() -> Self {
        HardyBudget::from_env()
    }
}

fn step_in_place(a: &mut Term, n: &mut u64) -> Result<(), OrdinalError> {
    match classify(a) {
        Kind::Zero => Err(OrdinalError::Zero),
        Kind::Successor => {
            let Term::Sum(v) = a else { unreachable!() };
            v.pop();
            *n += 1;
            Ok(())
        }
        Kind::Limit => {
            let k = usize::try_from(*n).map_err(|_| OrdinalError::Budget { steps: 0, value: *n })?;
            fund_in_place(a, k)
        }
    }
}

/// `(α+1, n) → (α, n+1)` and `(λ, n) → (λ_n, n)`.
pub fn hardy_step(a: &Term, n: u64) -> Result<(Term, u64), OrdinalError> {
    let mut a = a.clone();
    let mut n = n;
    step_in_place(&mut a, &mut n)?;
    Ok((a, n))
}

/// `H^α(n)` by iterating [`hardy_step`] down to 0.
pub fn hardy_eval(a: &Term, n: u64, budget: HardyBudget) -> Result<u64, OrdinalError> {
    let mut a = a.clone();
    let mut n = n;
    let mut steps = 0;
    while !a.is_zero() {
        if steps >= budget.max_steps || n > budget.max_value {
            return Err(OrdinalError::Budget { steps, value: n });
        }
        step_in_place(&mut a, &mut n)?;
        steps += 1;
        // for n ≥ 1 every summand adds at least one to the result
        if let Term::Sum(v) = &a {
            if n >= 1 && n.saturating_add(v.len() as u64) > budget.max_value {
                return Err(OrdinalError::Budget { steps, value: n });
            }
        }
    }
    Ok(n)
}

/// `F_k(n) = H^{ω^k}(n)`.
pub fn fgh_eval(k: &Term, n: u64, budget: HardyBudget) -> Result<u64, OrdinalError> {
    if k.contains_epsilon0() {
        return Err(OrdinalError::Epsilon0("fgh_eval"));
    }
    hardy_eval(&Term::omega_pow(k.clone()), n, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinals::tests::{small_term, t};
    use proptest::prelude::*;

    const BUDGET: HardyBudget = HardyBudget { max_value: 1_000_000, max_steps: 10_000_000 };
    const SMALL: HardyBudget = HardyBudget { max_value: 20_000, max_steps: 200_000 };

    #[test]
    fn steps() {
        assert_eq!(hardy_step(&t("w"), 2).unwrap(), (t("2"), 2));
        assert_eq!(hardy_step(&t("2"), 2).unwrap(), (t("1"), 3));
        assert_eq!(hardy_step(&t("w^w"), 1).unwrap(), (t("w"), 1));
        assert_eq!(hardy_step(&t("0"), 1), Err(OrdinalError::Zero));
    }

    #[test]
    fn evaluation() {
        assert_eq!(hardy_eval(&t("w"), 2, BUDGET).unwrap(), 4);
        assert_eq!(hardy_eval(&t("0"), 7, BUDGET).unwrap(), 7);
        assert_eq!(hardy_eval(&t("w^w"), 1, BUDGET).unwrap(), 2);
        assert_eq!(fgh_eval(&t("0"), 5, BUDGET).unwrap(), 6);
        assert_eq!(fgh_eval(&t("1"), 3, BUDGET).unwrap(), 6);
        assert_eq!(fgh_eval(&t("2"), 3, BUDGET).unwrap(), 24);
        assert_eq!(hardy_eval(&Term::Epsilon0, 1, BUDGET).unwrap(), 2);
    }

    #[test]
    fn closed_forms() {
        for n in 0..=10 {
            assert_eq!(hardy_eval(&t("w"), n, BUDGET).unwrap(), 2 * n);
        }
        for n in 0..=6 {
            assert_eq!(fgh_eval(&t("2"), n, BUDGET).unwrap(), (1 << n) * n);
        }
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let tight = HardyBudget { max_value: 100, max_steps: 1_000 };
        assert!(matches!(fgh_eval(&t("3"), 3, tight), Err(OrdinalError::Budget { .. })));
        assert!(matches!(hardy_eval(&Term::Epsilon0, 3, tight), Err(OrdinalError::Budget { .. })));
    }

    proptest! {
        #[test]
        fn monotone_and_expansive(a in small_term(2), n in 0u64..6) {
            if let (Ok(x), Ok(y)) = (hardy_eval(&a, n, SMALL), hardy_eval(&a, n + 1, SMALL)) {
                prop_assert!(n <= x);
                prop_assert!(x <= y);
            }
        }

        #[test]
        fn sums_compose(g in small_term(2), a in small_term(2), n in 0u64..4) {
            let whole = hardy_eval(&g.plus(&a), n, SMALL);
            let inner = hardy_eval(&a, n, SMALL).and_then(|m| hardy_eval(&g, m, SMALL));
            if let (Ok(x), Ok(y)) = (whole, inner) {
                prop_assert_eq!(x, y);
            }
        }
    }
}
