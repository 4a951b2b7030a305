use num_traits::Signed;

use super::prove::{Certificate, ProofOutcome, Refusal, ShannonProver};
use super::rays::{extreme_rays_cached, ray_representations_cached, MAX_RAY_N};
use crate::gausslin::{representable_to_gaussian, SpdMatrix};
use crate::rankfn::{phi_exact, LinearFunctional, RankFunction};
use crate::rational::{format_rational, to_f64, Rational, RationalText};
use crate::refuter::{local_descent, refute, Counterexample, SearchConfig, SearchOutcome};
use crate::{Error, Result};

/// Witnesses built from a generator are accepted once below this value.
pub const WITNESS_MARGIN: f64 = 1e-3;
const MAX_PHI_SHIFT: f64 = 512.0;
const MAX_LIMIT_EXPONENT: i32 = 40;

/// A generator of `con(Γ_n, φ)` on which the functional is negative.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Phi { index: usize },
    Ray { index: usize, ray: RankFunction<Rational> },
}

impl Generator {
    pub fn rank_function(&self, n: usize) -> Result<RankFunction<Rational>> {
        match self {
            Generator::Phi { index } => phi_exact(n, *index),
            Generator::Ray { ray, .. } => Ok(ray.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refutation {
    pub generator: Generator,
    /// `f(generator)`, exact and negative.
    pub generator_value: Rational,
    pub witness: Counterexample,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    Proven(Certificate),
    Refuted(Refutation),
}

impl Classification {
    pub fn is_proven(&self) -> bool {
        matches!(self, Classification::Proven(_))
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            Classification::Refuted(r) => Some(r),
            Classification::Proven(_) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Classification::Proven(c) => c.to_json(),
            Classification::Refuted(r) => {
                let generator = match &r.generator {
                    Generator::Phi { index } => serde_json::json!({"kind": "phi", "index": index}),
                    Generator::Ray { index, ray } => {
                        serde_json::json!({"kind": "ray", "index": index, "ray": ray})
                    }
                };
                serde_json::json!({
                    "verdict": "refuted",
                    "n": r.witness.matrix.n(),
                    "generator": generator,
                    "generator_value": RationalText(r.generator_value.clone()),
                    "witness": r.witness,
                })
            }
        }
    }
}

/// Total decision procedure for `n ≤ 3`: either an exact certificate, or a
/// negative generator together with a matrix realizing the violation.
pub fn classify(f: &LinearFunctional) -> Result<Classification> {
    let n = f.n();
    if n > MAX_RAY_N {
        return Err(Error::InvalidArgument(format!(
            "classification is complete only for n <= {MAX_RAY_N}"
        )));
    }
    let refusal = match ShannonProver::new(n)?.prove(f) {
        ProofOutcome::Proven(c) => return Ok(Classification::Proven(c)),
        ProofOutcome::NotProvable(r) => r,
    };
    let (generator, generator_value) = match refusal {
        Refusal::ScalingDirection { index, balance } => (Generator::Phi { index }, -balance),
        Refusal::ShannonDual { .. } => {
            let rays = extreme_rays_cached(n)?;
            let (index, value) = rays
                .rays
                .iter()
                .enumerate()
                .map(|(k, r)| Ok((k, f.evaluate_exact(r)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
                .expect("at least one ray");
            if !value.is_negative() {
                return Err(Error::InvalidArgument(format!(
                    "internal: no extreme ray separates {f:?}"
                )));
            }
            let ray = rays.rays[index].clone();
            (Generator::Ray { index, ray }, value)
        }
    };
    let witness = materialize(f, &generator, &generator_value)?;
    Ok(Classification::Refuted(Refutation {
        generator,
        generator_value,
        witness,
    }))
}

fn materialize(f: &LinearFunctional, generator: &Generator, value: &Rational) -> Result<Counterexample> {
    let n = f.n();
    match generator {
        Generator::Phi { index } => {
            // log-det of diag(.., 2^{-s}, ..) is s·φ_i, so f takes s·f(φ_i);
            // aim for at least two bits below zero.
            let per_unit = -to_f64(value);
            let s = (2.0 / per_unit).ceil().clamp(1.0, MAX_PHI_SHIFT);
            let mut diag = vec![1.0; n];
            diag[index - 1] = 2f64.powf(-s);
            let k = SpdMatrix::from_diagonal(&diag)?;
            Counterexample::from_matrix(f, k, 0, 0, format!("phi:{index}:shift={s}"))
        }
        Generator::Ray { index, .. } => {
            let config = &ray_representations_cached(n)?[*index];
            let mut best: Option<(Counterexample, i32)> = None;
            for e in 1..=MAX_LIMIT_EXPONENT {
                let c = 2f64.powi(-e);
                let k = representable_to_gaussian(config, c)?.covariance().clone();
                let Ok(cx) = Counterexample::from_matrix(f, k, 0, 0, format!("ray:{index}:c=2^-{e}"))
                else {
                    continue;
                };
                let done = cx.value_bits < -WITNESS_MARGIN;
                if best.as_ref().is_none_or(|(b, _)| cx.value_bits < b.value_bits) {
                    best = Some((cx, e));
                }
                if done {
                    break;
                }
            }
            let cfg = SearchConfig::new(0);
            if let Some((cx, e)) = best {
                if cx.value_bits < -WITNESS_MARGIN {
                    return Ok(cx);
                }
                let d = local_descent(f, &cx.matrix, &cfg)?;
                let polished = Counterexample::from_matrix(
                    f,
                    d.matrix,
                    0,
                    0,
                    format!("ray:{index}:c=2^-{e}+descent:{}", d.steps),
                )?;
                if polished.value_bits < -WITNESS_MARGIN {
                    return Ok(polished);
                }
            }
            match refute(f, &cfg.with_budget(10_000))? {
                SearchOutcome::Found(cx) => Ok(cx),
                SearchOutcome::NotFound { candidates } => Err(Error::InvalidArgument(format!(
                    "internal: generator value {} but no witness in {candidates} candidates",
                    format_rational(value)
                ))),
            }
        }
    }
}
