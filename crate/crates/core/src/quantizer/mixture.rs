use serde::Serialize;

use crate::rankfn::RankFunction;
use crate::{Error, Result};

/// `h_b(x) = −x log₂ x − (1−x) log₂(1−x)`, with `h_b(0) = h_b(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// Endpoints of the mixture that scales an entropy function by `c`:
/// `Z = U` (uniform cube, `h = 0`) with probability `1 − c/j`, and `j`
/// replicas of `X` (`h = j·g`) with probability `c/j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixtureBounds {
    pub c: f64,
    pub j: u64,
    /// `h(Z_α | T = 1) = j·g(α)`.
    pub given_replicas: RankFunction,
    /// `h(Z_α | T) = c·g(α)`; lower bound on `h(Z_α)`.
    pub lower: RankFunction,
    /// `h(Z_α | T) + h_b(c/j)`; upper bound on `h(Z_α)`.
    pub upper: RankFunction,
}

impl MixtureBounds {
    pub fn gap(&self) -> f64 {
        binary_entropy(self.c / self.j as f64)
    }
}

pub fn mixture_bounds(g: &RankFunction, c: f64, j: u64) -> Result<MixtureBounds> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::NonPositiveScale(c));
    }
    if j == 0 || c > j as f64 {
        return Err(Error::InvalidArgument(format!(
            "need j >= c so that c/j is a probability, got c = {c}, j = {j}"
        )));
    }
    let p = c / j as f64;
    let given_replicas = g.map(|v| j as f64 * v);
    let lower = given_replicas.map(|v| p * v);
    let hb = binary_entropy(p);
    let upper = lower.map(|v| v + hb);
    Ok(MixtureBounds {
        c,
        j,
        given_replicas,
        lower,
        upper,
    })
}
