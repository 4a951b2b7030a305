use nalgebra::{Cholesky, DMatrix};

use super::config::SearchConfig;
use crate::gausslin::{logdet_rank_function, SpdMatrix};
use crate::rankfn::LinearFunctional;
use crate::{Error, Result};

/// Diagonal floor added to `L Lᵀ` so every iterate stays positive definite.
pub const DESCENT_JITTER: f64 = 1e-9;

const PROBES: [f64; 3] = [1e-1, 1e-2, 1e-3];
const MAX_HALVINGS: usize = 40;

/// Result of [`local_descent`].
#[derive(Debug, Clone)]
pub struct Descent {
    pub matrix: SpdMatrix,
    pub value: f64,
    /// Accepted steps.
    pub steps: usize,
    /// Objective after each accepted step, starting with the start value.
    pub trace: Vec<f64>,
}

struct Objective<'a> {
    f: &'a LinearFunctional,
    n: usize,
}

impl Objective<'_> {
    fn matrix(&self, theta: &[f64]) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n, self.n);
        let mut k = 0;
        for r in 0..self.n {
            for c in 0..=r {
                l[(r, c)] = theta[k];
                k += 1;
            }
        }
        let mut m = &l * l.transpose();
        for i in 0..self.n {
            m[(i, i)] += DESCENT_JITTER;
        }
        m
    }

    fn spd(&self, theta: &[f64]) -> Option<SpdMatrix> {
        SpdMatrix::new(self.matrix(theta)).ok()
    }

    fn value_of(&self, k: &SpdMatrix) -> Option<f64> {
        let g = logdet_rank_function(k).ok()?;
        self.f.evaluate(&g).ok().filter(|v| v.is_finite())
    }

    fn value(&self, theta: &[f64]) -> f64 {
        self.spd(theta)
            .and_then(|k| self.value_of(&k))
            .unwrap_or(f64::INFINITY)
    }
}

/// Coordinate finite-difference descent on `K = L Lᵀ + 1e−9·I` over the
/// lower-triangular entries of `L`, starting from the Cholesky factor of
/// `start`. Stops after `cfg.descent_steps` accepted steps or at the first
/// step that fails to improve. Returns `start` itself if nothing improves.
pub fn local_descent(f: &LinearFunctional, start: &SpdMatrix, cfg: &SearchConfig) -> Result<Descent> {
    cfg.validate()?;
    let n = start.n();
    if f.n() != n {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: n,
        });
    }
    let obj = Objective { f, n };
    let chol = Cholesky::new(start.matrix().clone()).ok_or(Error::NotPositiveDefinite)?;
    let l = chol.l();
    let mut theta: Vec<f64> = (0..n).flat_map(|r| (0..=r).map(move |c| (r, c))).map(|(r, c)| l[(r, c)]).collect();

    let start_value = obj.value_of(start).ok_or(Error::NotPositiveDefinite)?;
    let mut value = start_value;
    let mut best: Option<SpdMatrix> = None;
    let mut trace = vec![start_value];
    let h = cfg.step_size;
    let mut rate = 1.0;

    while trace.len() <= cfg.descent_steps {
        let grad: Vec<f64> = (0..theta.len())
            .map(|k| {
                let hk = h * theta[k].abs().max(1.0);
                let mut up = theta.clone();
                up[k] += hk;
                let mut down = theta.clone();
                down[k] -= hk;
                (obj.value(&up) - obj.value(&down)) / (2.0 * hk)
            })
            .collect();
        let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        let scale = theta.iter().map(|t| t * t).sum::<f64>().sqrt().max(1.0);

        let mut next: Option<(Vec<f64>, f64)> = None;
        if norm.is_finite() && norm > 1e-12 {
            let mut t = rate * scale / norm;
            for _ in 0..MAX_HALVINGS {
                let cand: Vec<f64> = theta.iter().zip(&grad).map(|(x, g)| x - t * g).collect();
                let v = obj.value(&cand);
                if v < value {
                    next = Some((cand, v));
                    rate = (t * norm / scale * 2.0).min(1.0);
                    break;
                }
                t *= 0.5;
            }
        } else {
            'probe: for delta in PROBES.iter().copied().chain([h]) {
                for k in 0..theta.len() {
                    for sign in [1.0, -1.0] {
                        let mut cand = theta.clone();
                        cand[k] += sign * delta * theta[k].abs().max(1.0);
                        let v = obj.value(&cand);
                        if v < value {
                            next = Some((cand, v));
                            break 'probe;
                        }
                    }
                }
            }
        }
        let Some((cand, _)) = next else { break };
        let Some(k) = obj.spd(&cand) else { break };
        let Some(v) = obj.value_of(&k) else { break };
        if v >= value {
            break;
        }
        theta = cand;
        value = v;
        best = Some(k);
        trace.push(v);
    }
    let steps = trace.len() - 1;
    Ok(Descent {
        matrix: best.unwrap_or_else(|| start.clone()),
        value,
        steps,
        trace,
    })
}
