//! Generalized priority embedding over a stratified family of label orders.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::OrderError;
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledLetter<L> {
    pub priority: Letter,
    pub label: L,
}

impl<L> LabeledLetter<L> {
    pub fn new(priority: Letter, label: L) -> Self {
        LabeledLetter { priority, label }
    }
}

/// A quasi-order `≤_a` per priority stratum `a`.
pub trait LabelOrder<L> {
    fn leq(&self, stratum: Letter, lhs: &L, rhs: &L) -> Result<bool, OrderError>;
}

impl<L, F> LabelOrder<L> for F
where
    F: Fn(Letter, &L, &L) -> Result<bool, OrderError>,
{
    fn leq(&self, stratum: Letter, lhs: &L, rhs: &L) -> Result<bool, OrderError> {
        self(stratum, lhs, rhs)
    }
}

/// Decides `x ⊑_{p,γ} y`: `y = y_1 (a_1,w_1) ⋯ y_ℓ (a_ℓ,w_ℓ)` with `x = (a_1,v_1)⋯(a_ℓ,v_ℓ)`,
/// priorities in `y_i` at most `a_i`, and `v_i ≤_{a_i} w_i`.
pub fn gen_pleq<L>(
    x: &[LabeledLetter<L>],
    y: &[LabeledLetter<L>],
    order: &impl LabelOrder<L>,
) -> Result<bool, OrderError> {
    let mut table = vec![vec![false; x.len() + 1]; y.len() + 1];
    table[0][0] = true;
    for (j, b) in y.iter().enumerate() {
        for i in 0..x.len() {
            if !table[j][i] {
                continue;
            }
            let a = &x[i];
            if b.priority <= a.priority {
                table[j + 1][i] = true;
            }
            if b.priority == a.priority && order.leq(a.priority, &a.label, &b.label)? {
                table[j + 1][i + 1] = true;
            }
        }
    }
    Ok(table[y.len()][x.len()])
}

fn stratum<T>(strata: &[T], priority: Letter) -> Result<&T, OrderError> {
    strata.get(usize::from(priority)).ok_or(OrderError::MissingStratum { priority })
}

/// Equality on a finite label set per stratum.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct FiniteEquality {
    pub strata: Vec<BTreeSet<String>>,
}

impl FiniteEquality {
    /// Every stratum `0..=level` gets the same label set.
    pub fn uniform(level: Letter, labels: impl IntoIterator<Item = impl Into<String>>) -> Self {
        let labels: BTreeSet<String> = labels.into_iter().map(Into::into).collect();
        FiniteEquality { strata: vec![labels; usize::from(level) + 1] }
    }

    fn check(&self, priority: Letter, label: &str) -> Result<(), OrderError> {
        if stratum(&self.strata, priority)?.contains(label) {
            Ok(())
        } else {
            Err(OrderError::MalformedLabel { stratum: priority, label: label.to_string() })
        }
    }
}

impl LabelOrder<String> for FiniteEquality {
    fn leq(&self, stratum: Letter, lhs: &String, rhs: &String) -> Result<bool, OrderError> {
        self.check(stratum, lhs)?;
        self.check(stratum, rhs)?;
        Ok(lhs == rhs)
    }
}

/// A finite partial order per stratum, given by generating pairs `(lo, hi)`.
/// Reflexive and transitive closure is taken on construction.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(from = "TableSource")]
pub struct TableOrder {
    strata: Vec<BTreeMap<String, BTreeSet<String>>>,
}

#[derive(Debug, Clone, Deserialize)]
struct TableSource {
    strata: Vec<TableStratum>,
}

#[derive(Debug, Clone, Deserialize)]
struct TableStratum {
    labels: Vec<String>,
    #[serde(default)]
    less: Vec<(String, String)>,
}

impl From<TableSource> for TableOrder {
    fn from(source: TableSource) -> Self {
        TableOrder::new(source.strata.into_iter().map(|s| (s.labels, s.less)).collect())
    }
}

/// Labels of one priority and the strict pairs `(lo, hi)` among them.
pub type Stratum = (Vec<String>, Vec<(String, String)>);

impl TableOrder {
    pub fn new(strata: Vec<Stratum>) -> Self {
        let strata = strata
            .into_iter()
            .map(|(labels, pairs)| {
                let mut above: BTreeMap<String, BTreeSet<String>> =
                    labels.iter().map(|l| (l.clone(), BTreeSet::from([l.clone()]))).collect();
                for (lo, hi) in pairs {
                    above.entry(hi.clone()).or_insert_with(|| BTreeSet::from([hi.clone()]));
                    above.entry(lo.clone()).or_insert_with(|| BTreeSet::from([lo.clone()])).insert(hi);
                }
                loop {
                    let mut changed = false;
                    let keys: Vec<String> = above.keys().cloned().collect();
                    for k in &keys {
                        let reach: BTreeSet<String> = above[k].iter().flat_map(|m| above[m].iter().cloned()).collect();
                        if reach.len() > above[k].len() {
                            above.insert(k.clone(), reach);
                            changed = true;
                        }
                    }
                    if !changed {
                        break above;
                    }
                }
            })
            .collect();
        TableOrder { strata }
    }
}

impl LabelOrder<String> for TableOrder {
    fn leq(&self, priority: Letter, lhs: &String, rhs: &String) -> Result<bool, OrderError> {
        let table = stratum(&self.strata, priority)?;
        for label in [lhs, rhs] {
            if !table.contains_key(label) {
                return Err(OrderError::MalformedLabel { stratum: priority, label: label.clone() });
            }
        }
        Ok(table[lhs].contains(rhs))
    }
}

/// Subword embedding on strings over a finite character set per stratum.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SubwordOrder {
    pub strata: Vec<BTreeSet<char>>,
}

impl SubwordOrder {
    pub fn uniform(level: Letter, alphabet: &str) -> Self {
        SubwordOrder { strata: vec![alphabet.chars().collect(); usize::from(level) + 1] }
    }
}

impl LabelOrder<String> for SubwordOrder {
    fn leq(&self, priority: Letter, lhs: &String, rhs: &String) -> Result<bool, OrderError> {
        let alphabet = stratum(&self.strata, priority)?;
        for label in [lhs, rhs] {
            if !label.chars().all(|c| alphabet.contains(&c)) {
                return Err(OrderError::MalformedLabel { stratum: priority, label: label.clone() });
            }
        }
        let mut it = rhs.chars();
        Ok(lhs.chars().all(|c| it.any(|d| d == c)))
    }
}
