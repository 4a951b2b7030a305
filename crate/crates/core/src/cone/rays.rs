use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dd::double_description;
use super::elemental::elemental_system;
use super::lp::{nonneg_combination, LpOutcome};
use crate::gausslin::{representable_rank_exact, VectorConfig};
use crate::rankfn::RankFunction;
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// Largest ground set for which extreme rays are enumerated.
pub const MAX_RAY_N: usize = 3;

/// Extreme rays of the Shannon cone `Γ_n`, each scaled so that its largest
/// entry is 1, sorted lexicographically by value vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremeRaySet {
    pub n: usize,
    pub rays: Vec<RankFunction<Rational>>,
}

fn normalize_max(v: Vec<Rational>) -> Vec<Rational> {
    let max = v
        .iter()
        .max()
        .cloned()
        .filter(|m| m.is_positive())
        .expect("Shannon cone rays have a positive entry");
    v.into_iter().map(|x| x / &max).collect()
}

/// Double description over the elemental rows in their natural order.
pub fn extreme_rays(n: usize) -> Result<ExtremeRaySet> {
    let m = elemental_system(n)?.len();
    extreme_rays_in_order(n, &(0..m).collect::<Vec<_>>())
}

/// Double description processing the elemental rows in `order`.
pub fn extreme_rays_in_order(n: usize, order: &[usize]) -> Result<ExtremeRaySet> {
    if n > MAX_RAY_N {
        return Err(Error::InvalidArgument(format!(
            "extreme-ray enumeration is limited to n <= {MAX_RAY_N}"
        )));
    }
    let rows = elemental_system(n)?.dense_rows();
    let mut seen = vec![false; rows.len()];
    for &k in order {
        if k >= rows.len() || seen[k] {
            return Err(Error::InvalidArgument(format!("bad row order {order:?}")));
        }
        seen[k] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidArgument("row order must be a permutation".into()));
    }
    let ordered: Vec<Vec<Rational>> = order.iter().map(|&k| rows[k].clone()).collect();
    let dim = (1 << n) - 1;
    let mut rays: Vec<RankFunction<Rational>> = double_description(&ordered, dim)?
        .into_iter()
        .map(|v| {
            let mut values = vec![Rational::zero()];
            values.extend(normalize_max(v));
            RankFunction::from_values(n, values).expect("2^n values")
        })
        .collect();
    rays.sort_by(|a, b| a.values().cmp(b.values()));
    Ok(ExtremeRaySet { n, rays })
}

/// Cached [`extreme_rays`] for `n ≤ 3`.
pub fn extreme_rays_cached(n: usize) -> Result<&'static ExtremeRaySet> {
    static CACHE: [OnceLock<ExtremeRaySet>; MAX_RAY_N] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    if n == 0 || n > MAX_RAY_N {
        return Err(Error::InvalidArgument(format!(
            "extreme-ray enumeration is limited to 1 <= n <= {MAX_RAY_N}"
        )));
    }
    if let Some(set) = CACHE[n - 1].get() {
        return Ok(set);
    }
    let set = extreme_rays(n)?;
    Ok(CACHE[n - 1].get_or_init(|| set))
}

/// Cached [`ExtremeRaySet::representations`] of [`extreme_rays_cached`].
pub fn ray_representations_cached(n: usize) -> Result<&'static [VectorConfig]> {
    static CACHE: [OnceLock<Vec<VectorConfig>>; MAX_RAY_N] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let set = extreme_rays_cached(n)?;
    if let Some(reps) = CACHE[n - 1].get() {
        return Ok(reps);
    }
    let reps = set.representations()?;
    Ok(CACHE[n - 1].get_or_init(|| reps))
}

impl ExtremeRaySet {
    /// True if no ray lies in the cone spanned by the others.
    pub fn is_irredundant(&self) -> bool {
        (0..self.rays.len()).all(|k| {
            let others: Vec<Vec<Rational>> = self
                .rays
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, r)| r.nonempty_values().to_vec())
                .collect();
            matches!(
                nonneg_combination(&others, self.rays[k].nonempty_values()),
                LpOutcome::Infeasible(_)
            )
        })
    }

    /// A real vector configuration realizing each ray up to positive scaling.
    pub fn representations(&self) -> Result<Vec<VectorConfig>> {
        self.rays
            .iter()
            .map(|r| {
                find_representation(r).ok_or_else(|| {
                    Error::InvalidArgument(format!("no 0/1 representation found for ray {r:?}"))
                })
            })
            .collect()
    }
}

/// `true` if `g = λ·ray` for some `λ > 0`.
pub fn is_positive_multiple(g: &RankFunction<Rational>, ray: &RankFunction<Rational>) -> bool {
    if g.n() != ray.n() {
        return false;
    }
    let (Some(gm), Some(rm)) = (g.values().iter().max(), ray.values().iter().max()) else {
        return false;
    };
    if !gm.is_positive() || !rm.is_positive() {
        return false;
    }
    g.values()
        .iter()
        .zip(ray.values())
        .all(|(a, b)| a / gm == b / rm)
}

/// Searches one-vector-per-index configurations in `{0,1}^n`, in
/// lexicographic order, for one whose rank function is a positive multiple
/// of `ray`.
pub fn find_representation(ray: &RankFunction<Rational>) -> Option<VectorConfig> {
    let n = ray.n();
    let per_vector = 1usize << n;
    let total = per_vector.checked_pow(n as u32)?;
    (0..total).find_map(|code| {
        let mut rest = code;
        let vectors: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                let bits = rest % per_vector;
                rest /= per_vector;
                (0..n).map(|b| int(((bits >> (n - 1 - b)) & 1) as i64)).collect()
            })
            .collect();
        let config = VectorConfig::scalar(vectors).ok()?;
        is_positive_multiple(&representable_rank_exact(&config), ray).then_some(config)
    })
}
