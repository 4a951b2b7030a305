use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rankfn::{GroundSet, RankFunction, Subset};
use crate::{Error, Result};

pub const PMF_SUM_TOLERANCE: f64 = 1e-12;

/// Finitely supported pmf of `(X_1, …, X_n)` on integer tuples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscretePmf {
    support: Vec<Vec<i64>>,
    probabilities: Vec<f64>,
}

impl DiscretePmf {
    pub fn new(support: Vec<Vec<i64>>, probabilities: Vec<f64>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidArgument("empty support".into()));
        }
        if support.len() != probabilities.len() {
            return Err(Error::DimensionMismatch {
                expected: support.len(),
                found: probabilities.len(),
            });
        }
        let n = support[0].len();
        GroundSet::new(n)?;
        if let Some(bad) = support.iter().find(|x| x.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let mut sorted = support.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("support has repeated points".into()));
        }
        if let Some(&p) = probabilities.iter().find(|&&p| !(p > 0.0) || !p.is_finite()) {
            return Err(Error::InvalidArgument(format!("probability {p} must be positive")));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > PMF_SUM_TOLERANCE {
            return Err(Error::InvalidArgument(format!("probabilities sum to {total}")));
        }
        Ok(DiscretePmf {
            support,
            probabilities,
        })
    }

    /// Uniform pmf on the given points.
    pub fn uniform(support: Vec<Vec<i64>>) -> Result<Self> {
        let p = 1.0 / support.len() as f64;
        let len = support.len();
        DiscretePmf::new(support, vec![p; len])
    }

    pub fn n(&self) -> usize {
        self.support[0].len()
    }

    pub fn support(&self) -> &[Vec<i64>] {
        &self.support
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Probability of a point (0 off the support).
    pub fn mass(&self, x: &[i64]) -> f64 {
        self.support
            .iter()
            .position(|s| s.as_slice() == x)
            .map_or(0.0, |k| self.probabilities[k])
    }

    /// Marginal pmf of `X_α`, keyed by the α-coordinates in index order.
    pub fn marginal(&self, alpha: Subset) -> Result<BTreeMap<Vec<i64>, f64>> {
        let n = self.n();
        if alpha.mask() >> n != 0 {
            return Err(Error::IndexOutOfRange {
                index: alpha.indices().last().unwrap_or(0),
                n,
            });
        }
        let mut out: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
        for (x, &p) in self.support.iter().zip(&self.probabilities) {
            let key: Vec<i64> = alpha.indices().map(|i| x[i - 1]).collect();
            *out.entry(key).or_insert(0.0) += p;
        }
        Ok(out)
    }

    /// `H(X_α)` in bits.
    pub fn entropy(&self, alpha: Subset) -> Result<f64> {
        if alpha.is_empty() {
            return Ok(0.0);
        }
        Ok(self
            .marginal(alpha)?
            .values()
            .map(|&q| -q * q.log2())
            .sum())
    }

    /// `α ↦ H(X_α)`.
    pub fn entropy_function(&self) -> Result<RankFunction> {
        RankFunction::try_from_fn(self.n(), |s| self.entropy(s))
    }
}

/// Density `f(y) = (∏ c_i) · p(⌊c_1 y_1⌋, …, ⌊c_n y_n⌋)`: constant on the
/// boxes `∏ [x_i/c_i, (x_i+1)/c_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewisePdf {
    base: DiscretePmf,
    scales: Vec<f64>,
}

pub fn pmf_to_pdf(p: &DiscretePmf, c: &[f64]) -> Result<PiecewisePdf> {
    if c.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            found: c.len(),
        });
    }
    if let Some(&bad) = c.iter().find(|&&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::NonPositiveScale(bad));
    }
    Ok(PiecewisePdf {
        base: p.clone(),
        scales: c.to_vec(),
    })
}

impl PiecewisePdf {
    pub fn base(&self) -> &DiscretePmf {
        &self.base
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn density(&self, y: &[f64]) -> f64 {
        let cell: Vec<i64> = y
            .iter()
            .zip(&self.scales)
            .map(|(v, c)| (v * c).floor() as i64)
            .collect();
        self.scales.iter().product::<f64>() * self.base.mass(&cell)
    }

    /// `Σ_cells volume · density`, which is 1 up to rounding.
    pub fn total_mass(&self) -> f64 {
        let volume: f64 = self.scales.iter().map(|c| 1.0 / c).product();
        let scale: f64 = self.scales.iter().product();
        self.base
            .probabilities
            .iter()
            .map(|p| volume * (scale * p))
            .sum()
    }
}

/// `h(Y_α)` by summing `−(volume·density)·log₂ density` over the constant
/// cells of the α-marginal; equals `H(X_α) − Σ_{i∈α} log₂ c_i`.
pub fn exact_entropy(f: &PiecewisePdf, alpha: Subset) -> Result<f64> {
    if alpha.is_empty() {
        return Err(Error::InvalidArgument("α must be nonempty".into()));
    }
    let marginal = f.base.marginal(alpha)?;
    let scale: f64 = alpha.indices().map(|i| f.scales[i - 1]).product();
    let volume: f64 = alpha.indices().map(|i| 1.0 / f.scales[i - 1]).product();
    Ok(marginal
        .values()
        .map(|&q| {
            let density = q * scale;
            -(volume * density) * density.log2()
        })
        .sum())
}
