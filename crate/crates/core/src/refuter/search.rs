use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::SearchConfig;
use super::descent::local_descent;
use crate::gausslin::{
    diagonal_scale, logdet_rank_function, representable_to_gaussian, wishart_sample, SpdMatrix,
    VectorConfig,
};
use crate::rankfn::LinearFunctional;
use crate::{derive_seed, Result};

/// Agreement required between a stored value and its recomputation.
pub const REVERIFY_TOLERANCE: f64 = 1e-9;

/// A value counts as a violation only below `−(1e−9 + 1e−12·Σ|c_α g(α)|)`,
/// which keeps float cancellation in valid inequalities from reading as a
/// counterexample.
pub fn violation_threshold(f: &LinearFunctional, g: &crate::RankFunction) -> f64 {
    -(1e-9 + 1e-12 * f.abs_mass(g))
}

/// How a candidate matrix was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateKind {
    Wishart,
    ScaledWishart,
    Representable,
}

impl CandidateKind {
    pub fn of_index(index: u64) -> Self {
        match index % 3 {
            0 => CandidateKind::Wishart,
            1 => CandidateKind::ScaledWishart,
            _ => CandidateKind::Representable,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CandidateKind::Wishart => "wishart",
            CandidateKind::ScaledWishart => "scaled-wishart",
            CandidateKind::Representable => "representable",
        }
    }
}

/// Candidate `index` of the stream for `cfg.seed`. Depends only on
/// `(n, cfg, index)`, never on evaluation order.
pub fn candidate(n: usize, cfg: &SearchConfig, index: u64) -> Result<(SpdMatrix, CandidateKind)> {
    let seed = derive_seed(cfg.seed, index);
    let kind = CandidateKind::of_index(index);
    let k = match kind {
        CandidateKind::Wishart => wishart_sample(n, cfg.dof_for(n), seed)?,
        CandidateKind::ScaledWishart => {
            let k = wishart_sample(n, cfg.dof_for(n), seed)?;
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 1));
            let (lo, hi) = cfg.scale_range;
            // g shifts by s_i bits on sets containing i.
            let d: Vec<f64> = (0..n)
                .map(|_| 2f64.powf(0.5 * rng.random_range(lo..=hi)))
                .collect();
            diagonal_scale(&k, &d)?
        }
        CandidateKind::Representable => {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 2));
            let vectors: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.random_range(-2i32..=2) as f64).collect())
                .collect();
            let c = 2f64.powf(-rng.random_range(0.0..=20.0));
            let config = VectorConfig::with_dim(n, vectors.into_iter().map(|v| vec![v]).collect())?;
            representable_to_gaussian(&config, c)?.covariance().clone()
        }
    };
    Ok((k, kind))
}

/// A positive definite matrix on which a functional is negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub matrix: SpdMatrix,
    pub value_bits: f64,
    pub seed: u64,
    pub candidate_index: u64,
    /// Sampler kind, plus the descent step count when polished.
    pub provenance: String,
}

impl Counterexample {
    pub(crate) fn from_matrix(
        f: &LinearFunctional,
        matrix: SpdMatrix,
        seed: u64,
        candidate_index: u64,
        provenance: String,
    ) -> Result<Self> {
        let value_bits = f.evaluate(&logdet_rank_function(&matrix)?)?;
        Ok(Counterexample {
            matrix,
            value_bits,
            seed,
            candidate_index,
            provenance,
        })
    }

    /// Recomputes the value from the matrix alone.
    pub fn recompute(&self, f: &LinearFunctional) -> Result<f64> {
        f.evaluate(&logdet_rank_function(&self.matrix)?)
    }

    /// Recomputed value agrees within [`REVERIFY_TOLERANCE`] and is negative.
    pub fn reverify(&self, f: &LinearFunctional) -> Result<bool> {
        let v = self.recompute(f)?;
        Ok((v - self.value_bits).abs() <= REVERIFY_TOLERANCE && v < 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Found(Counterexample),
    NotFound { candidates: usize },
}

impl SearchOutcome {
    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::NotFound { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.counterexample().is_some()
    }
}

fn violates(f: &LinearFunctional, k: &SpdMatrix) -> Option<f64> {
    let g = logdet_rank_function(k).ok()?;
    let v = f.evaluate(&g).ok()?;
    (v < violation_threshold(f, &g)).then_some(v)
}

/// Returns the lowest-index candidate that strictly violates `f`.
pub fn random_search(f: &LinearFunctional, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let n = f.n();
    let hit = cfg.install(|| {
        (0..cfg.budget as u64).into_par_iter().find_map_first(|t| {
            let (k, kind) = candidate(n, cfg, t).ok()?;
            violates(f, &k).map(|_| (t, k, kind))
        })
    })?;
    Ok(match hit {
        Some((t, k, kind)) => SearchOutcome::Found(Counterexample::from_matrix(
            f,
            k,
            cfg.seed,
            t,
            kind.name().to_string(),
        )?),
        None => SearchOutcome::NotFound {
            candidates: cfg.budget,
        },
    })
}

/// [`random_search`], then [`local_descent`] from the violator to deepen it.
pub fn refute(f: &LinearFunctional, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let outcome = random_search(f, cfg)?;
    let SearchOutcome::Found(found) = outcome else {
        return Ok(outcome);
    };
    let d = local_descent(f, &found.matrix, cfg)?;
    if d.steps == 0 || !(d.value < found.value_bits) {
        return Ok(SearchOutcome::Found(found));
    }
    let polished = Counterexample::from_matrix(
        f,
        d.matrix,
        found.seed,
        found.candidate_index,
        format!("{}+descent:{}", found.provenance, d.steps),
    )?;
    if polished.value_bits < found.value_bits {
        Ok(SearchOutcome::Found(polished))
    } else {
        Ok(SearchOutcome::Found(found))
    }
}
