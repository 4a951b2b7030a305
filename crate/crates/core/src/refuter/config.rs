use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Parameters shared by every search in this module.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    /// Number of sampled candidates.
    pub budget: usize,
    /// Wishart degrees of freedom; `None` means `n + 2`.
    pub dof: Option<usize>,
    /// Interval of per-coordinate log₂ shifts applied by diagonal scaling.
    pub scale_range: (f64, f64),
    pub descent_steps: usize,
    /// Finite-difference step on Cholesky parameters.
    pub step_size: f64,
    /// Thread count; 0 uses the rayon default. Results do not depend on it.
    pub workers: usize,
}

impl SearchConfig {
    pub fn new(seed: u64) -> Self {
        SearchConfig {
            seed,
            budget: 1000,
            dof: None,
            scale_range: (-20.0, 20.0),
            descent_steps: 200,
            step_size: 1e-4,
            workers: 0,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_descent_steps(mut self, steps: usize) -> Self {
        self.descent_steps = steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidArgument("budget must be at least 1".into()));
        }
        let (lo, hi) = self.scale_range;
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::InvalidArgument(format!(
                "scale range [{lo}, {hi}] must be finite and ordered"
            )));
        }
        if !(self.step_size > 0.0) || !self.step_size.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "step size {} must be positive",
                self.step_size
            )));
        }
        Ok(())
    }

    pub fn dof_for(&self, n: usize) -> usize {
        self.dof.unwrap_or(n + 2)
    }

    /// Runs `op` on a pool with `workers` threads.
    pub(crate) fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> Result<R> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        Ok(pool.install(op))
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig::new(0)
    }
}
