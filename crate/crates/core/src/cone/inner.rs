use super::lp::{nonneg_combination, LpOutcome};
use super::rays::extreme_rays_cached;
use crate::rankfn::{phi_exact, RankFunction};
use crate::rational::{from_f64, Rational};
use crate::Result;

/// Result of testing membership in `con(extreme rays of Γ_n, φ_1, …, φ_n)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    /// `g = Σ_r ray_weights[r] · ray_r + Σ_i phi_weights[i] · φ_i`.
    Inside {
        ray_weights: Vec<Rational>,
        phi_weights: Vec<Rational>,
    },
    Outside,
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }
}

/// Exact membership test for `n ≤ 3`, where this cone is the closure of the
/// cone of scalar-Gaussian entropy functions.
pub fn inner_membership(g: &RankFunction<Rational>) -> Result<Membership> {
    let n = g.n();
    let rays = extreme_rays_cached(n)?;
    let mut columns: Vec<Vec<Rational>> = rays
        .rays
        .iter()
        .map(|r| r.nonempty_values().to_vec())
        .collect();
    for i in 1..=n {
        columns.push(phi_exact(n, i)?.nonempty_values().to_vec());
    }
    Ok(match nonneg_combination(&columns, g.nonempty_values()) {
        LpOutcome::Feasible(mut w) => {
            let phi_weights = w.split_off(rays.rays.len());
            Membership::Inside {
                ray_weights: w,
                phi_weights,
            }
        }
        LpOutcome::Infeasible(_) => Membership::Outside,
    })
}

/// Float input converted exactly (every finite double is a rational).
pub fn inner_membership_f64(g: &RankFunction) -> Result<Membership> {
    let exact = RankFunction::try_from_fn(g.n(), |s| from_f64(*g.get(s)))?;
    inner_membership(&exact)
}
