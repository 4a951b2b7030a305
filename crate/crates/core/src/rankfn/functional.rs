use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::rank::RankFunction;
use super::subset::{GroundSet, Subset};
use crate::rational::{to_f64, Rational};
use crate::{Error, Result};

/// Coefficients `c_α` over nonempty subsets, encoding `Σ_α c_α g(α) ≥ 0`
/// (equivalently `∏_α |K_α|^{c_α} ≥ 1`). Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearFunctional {
    ground: GroundSet,
    coeffs: BTreeMap<Subset, Rational>,
}

impl LinearFunctional {
    pub fn zero(n: usize) -> Result<Self> {
        Ok(LinearFunctional {
            ground: GroundSet::new(n)?,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Subset, Rational)>) -> Result<Self> {
        let mut f = Self::zero(n)?;
        for (s, c) in terms {
            f.add_term(s, c)?;
        }
        Ok(f)
    }

    /// Accumulates `c` onto the coefficient of `s`. A term on ∅ is dropped
    /// since `g(∅) = 0`.
    pub fn add_term(&mut self, s: Subset, c: Rational) -> Result<()> {
        if !s.is_subset_of(self.ground.full()) {
            return Err(Error::InvalidArgument(format!(
                "subset {{{s}}} outside ground set of size {}",
                self.n()
            )));
        }
        if s.is_empty() || c.is_zero() {
            return Ok(());
        }
        let entry = self.coeffs.entry(s).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn coeff(&self, s: Subset) -> Rational {
        self.coeffs.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Dense coefficient vector over nonempty subsets in mask order.
    pub fn dense(&self) -> Vec<Rational> {
        self.ground.nonempty().map(|s| self.coeff(s)).collect()
    }

    pub fn from_dense(n: usize, dense: &[Rational]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if dense.len() != ground.len() - 1 {
            return Err(Error::DimensionMismatch {
                expected: ground.len() - 1,
                found: dense.len(),
            });
        }
        Self::from_terms(n, ground.nonempty().zip(dense.iter().cloned()))
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-Rational::from_integer(1.into()))
    }

    pub fn scaled(&self, a: &Rational) -> Self {
        let mut out = LinearFunctional {
            ground: self.ground,
            coeffs: BTreeMap::new(),
        };
        for (s, c) in &self.coeffs {
            out.add_term(*s, c * a).expect("same ground set");
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other.n())?;
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(*s, c.clone())?;
        }
        Ok(out)
    }

    /// `Σ_α c_α g(α)` in floating point.
    pub fn evaluate(&self, g: &RankFunction) -> Result<f64> {
        g.check_same_n(self.n())?;
        Ok(self.coeffs.iter().map(|(s, c)| to_f64(c) * g.get(*s)).sum())
    }

    /// Exact `Σ_α c_α g(α)`.
    pub fn evaluate_exact(&self, g: &RankFunction<Rational>) -> Result<Rational> {
        g.check_same_n(self.n())?;
        Ok(self.coeffs.iter().map(|(s, c)| c * g.get(*s)).sum())
    }

    /// `Σ_α |c_α g(α)|`, the magnitude scale of an evaluation.
    pub fn abs_mass(&self, g: &RankFunction) -> f64 {
        self.coeffs
            .iter()
            .map(|(s, c)| (to_f64(c) * g.get(*s)).abs())
            .sum()
    }

    /// `b_i = Σ_{α∋i} c_α`. The functional is nonnegative on `φ_i` iff `b_i ≤ 0`.
    pub fn balance_profile(&self) -> Vec<Rational> {
        (1..=self.n())
            .map(|i| {
                self.coeffs
                    .iter()
                    .filter(|(s, _)| s.contains(i))
                    .map(|(_, c)| c.clone())
                    .sum()
            })
            .collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.balance_profile().iter().all(Zero::is_zero)
    }

    /// Largest `|c_α|`, used for scale-aware tolerances.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .values()
            .map(|c| to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }

    fn check_same_n(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: n,
            });
        }
        Ok(())
    }
}
