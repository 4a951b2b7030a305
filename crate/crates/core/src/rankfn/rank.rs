use std::ops::{Add, Mul};

use num_traits::Zero;

use super::subset::{GroundSet, Subset};
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// A set function on the subsets of `{1, …, n}` with value 0 at ∅.
///
/// Values are indexed by subset mask. `T = f64` holds entropies and
/// log-determinants in bits; `T = Rational` holds exact cone generators.
#[derive(Debug, Clone, PartialEq)]
pub struct RankFunction<T = f64> {
    ground: GroundSet,
    values: Vec<T>,
}

impl<T: Clone + Zero> RankFunction<T> {
    pub fn zero(n: usize) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        Ok(RankFunction {
            ground,
            values: vec![T::zero(); ground.len()],
        })
    }

    /// Builds from a closure over nonempty subsets; ∅ is set to zero.
    pub fn from_fn(n: usize, mut f: impl FnMut(Subset) -> T) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let values = ground
            .subsets()
            .map(|s| if s.is_empty() { T::zero() } else { f(s) })
            .collect();
        Ok(RankFunction { ground, values })
    }

    /// Fallible variant of [`RankFunction::from_fn`].
    pub fn try_from_fn<E>(
        n: usize,
        mut f: impl FnMut(Subset) -> std::result::Result<T, E>,
    ) -> std::result::Result<Self, E>
    where
        E: From<Error>,
    {
        let ground = GroundSet::new(n)?;
        let mut values = Vec::with_capacity(ground.len());
        for s in ground.subsets() {
            values.push(if s.is_empty() { T::zero() } else { f(s)? });
        }
        Ok(RankFunction { ground, values })
    }

    /// Values in mask order; `values[0]` must be zero.
    pub fn from_values(n: usize, values: Vec<T>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if values.len() != ground.len() {
            return Err(Error::DimensionMismatch {
                expected: ground.len(),
                found: values.len(),
            });
        }
        if !values[0].is_zero() {
            return Err(Error::NonzeroEmptySet);
        }
        Ok(RankFunction { ground, values })
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn get(&self, s: Subset) -> &T {
        &self.values[s.mask()]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, &T)> {
        self.values
            .iter()
            .enumerate()
            .map(|(m, v)| (Subset(m as u32), v))
    }

    /// Values on the nonempty subsets, mask order.
    pub fn nonempty_values(&self) -> &[T] {
        &self.values[1..]
    }

    pub fn map<U: Clone + Zero>(&self, mut f: impl FnMut(&T) -> U) -> RankFunction<U> {
        RankFunction {
            ground: self.ground,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(m, v)| if m == 0 { U::zero() } else { f(v) })
                .collect(),
        }
    }

    pub(crate) fn check_same_n(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.n(),
            });
        }
        Ok(())
    }
}

impl<T> RankFunction<T>
where
    T: Clone + Zero + Mul<Output = T>,
{
    pub fn scaled(&self, a: T) -> Self {
        self.map(|v| a.clone() * v.clone())
    }
}

/// Pointwise sum `g1 + g2`.
pub fn sum<T>(g1: &RankFunction<T>, g2: &RankFunction<T>) -> Result<RankFunction<T>>
where
    T: Clone + Zero + Add<Output = T>,
{
    g2.check_same_n(g1.n())?;
    Ok(RankFunction {
        ground: g1.ground,
        values: g1
            .values
            .iter()
            .zip(&g2.values)
            .map(|(a, b)| a.clone() + b.clone())
            .collect(),
    })
}

/// `g'(α) = g(α) + Σ_{i∈α} s_i`. Signed shifts: the sign convention of a
/// coordinate rescaling `Y_i = X_i / c_i` is left to the caller.
pub fn scale_shift(g: &RankFunction, shifts: &[f64]) -> Result<RankFunction> {
    if shifts.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: shifts.len(),
        });
    }
    Ok(RankFunction {
        ground: g.ground,
        values: g
            .iter()
            .map(|(s, v)| v + s.indices().map(|i| shifts[i - 1]).sum::<f64>())
            .collect(),
    })
}

/// `φ_i`: −1 on subsets containing `i`, 0 elsewhere.
pub fn phi(n: usize, i: usize) -> Result<RankFunction> {
    Ok(phi_exact(n, i)?.map(crate::rational::to_f64))
}

pub fn phi_exact(n: usize, i: usize) -> Result<RankFunction<Rational>> {
    GroundSet::new(n)?.check_index(i)?;
    RankFunction::from_fn(n, |s| if s.contains(i) { int(-1) } else { int(0) })
}
