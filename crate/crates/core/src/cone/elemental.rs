use std::fmt;

use crate::rankfn::{GroundSet, LinearFunctional, Subset};
use crate::rational::{int, Rational};
use crate::Result;

/// One elemental Shannon inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementalId {
    /// `g(N) − g(N∖i) ≥ 0`, i.e. `H(X_i | X_{N∖i}) ≥ 0`.
    Conditional { i: usize },
    /// `g(K∪i) + g(K∪j) − g(K∪i∪j) − g(K) ≥ 0`, i.e. `I(X_i; X_j | X_K) ≥ 0`.
    MutualInformation { i: usize, j: usize, given: Subset },
}

impl ElementalId {
    pub fn is_mutual_information(self) -> bool {
        matches!(self, ElementalId::MutualInformation { .. })
    }
}

impl fmt::Display for ElementalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ElementalId::Conditional { i } => write!(f, "H({i}|rest)"),
            ElementalId::MutualInformation { i, j, given } if given.is_empty() => {
                write!(f, "I({i};{j})")
            }
            ElementalId::MutualInformation { i, j, given } => write!(f, "I({i};{j}|{given})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElementalRow {
    pub id: ElementalId,
    pub functional: LinearFunctional,
}

/// Facet description of the Shannon cone `Γ_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementalSystem {
    n: usize,
    rows: Vec<ElementalRow>,
}

impl ElementalSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[ElementalRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `n + C(n,2)·2^{n−2}`.
    pub fn expected_len(n: usize) -> usize {
        if n < 2 {
            return n;
        }
        n + n * (n - 1) / 2 * (1 << (n - 2))
    }

    /// Dense coefficient vectors, one per row.
    pub fn dense_rows(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.functional.dense()).collect()
    }
}

/// Conditional rows for `i = 1..n`, then mutual-information rows ordered by
/// `(i, j, K)` with `K` in increasing mask order.
pub fn elemental_system(n: usize) -> Result<ElementalSystem> {
    let ground = GroundSet::new(n)?;
    let full = ground.full();
    let mut rows = Vec::with_capacity(ElementalSystem::expected_len(n));
    for i in 1..=n {
        let functional = LinearFunctional::from_terms(
            n,
            [(full, int(1)), (full.without(i), int(-1))],
        )?;
        rows.push(ElementalRow {
            id: ElementalId::Conditional { i },
            functional,
        });
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let rest = full.without(i).without(j);
            for given in ground.subsets().filter(|k| k.is_subset_of(rest)) {
                let functional = LinearFunctional::from_terms(
                    n,
                    [
                        (given.with(i), int(1)),
                        (given.with(j), int(1)),
                        (given.with(i).with(j), int(-1)),
                        (given, int(-1)),
                    ],
                )?;
                rows.push(ElementalRow {
                    id: ElementalId::MutualInformation { i, j, given },
                    functional,
                });
            }
        }
    }
    Ok(ElementalSystem { n, rows })
}
