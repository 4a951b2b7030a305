use std::collections::HashMap;
use std::f64::consts::{E, PI};

use nalgebra::Cholesky;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::QuantGrid;
use crate::gausslin::{gaussian_entropy_function, BlockGaussian, SpdMatrix};
use crate::rankfn::GroundSet;
use crate::{derive_seed, Error, Result};

/// Standard-normal draws beyond this many standard deviations are redrawn.
pub const TRUNCATION_SIGMAS: f64 = 8.0;
const CHUNK: usize = 1 << 16;
const MIN_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Gaussian(SpdMatrix),
    /// Uniform on `[0, 1)^dim`.
    UniformCube { dim: usize },
}

impl Distribution {
    /// `"gaussian"` (identity covariance) or `"uniform"`.
    pub fn from_tag(tag: &str, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        match tag {
            "gaussian" => Ok(Distribution::Gaussian(SpdMatrix::identity(dim))),
            "uniform" => Ok(Distribution::UniformCube { dim }),
            other => Err(Error::InvalidArgument(format!(
                "unsupported distribution {other:?} (expected gaussian or uniform)"
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Distribution::Gaussian(k) => k.n(),
            Distribution::UniformCube { dim } => *dim,
        }
    }

    /// Differential entropy in bits.
    pub fn analytic_h(&self) -> f64 {
        match self {
            Distribution::Gaussian(k) => {
                0.5 * (k.n() as f64 * (2.0 * PI * E).log2() + k.log2_det())
            }
            Distribution::UniformCube { .. } => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub m: u64,
    pub samples: usize,
    pub dim: usize,
    #[serde(rename = "H_minus_nlogm")]
    pub h_minus_nlogm: f64,
    pub analytic_h: f64,
    pub deviation: f64,
    pub occupied_cells: usize,
    /// `"plug-in"` or `"exact-pmf"`.
    pub path: String,
}

/// Plug-in entropy `log₂ N − (1/N) Σ c log₂ c` of a histogram. Counts are
/// summed in sorted order so the result does not depend on hash order.
pub fn plugin_entropy(counts: impl IntoIterator<Item = u64>) -> f64 {
    let mut counts: Vec<u64> = counts.into_iter().filter(|&c| c > 0).collect();
    counts.sort_unstable();
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    let s: f64 = counts.iter().map(|&c| c as f64 * (c as f64).log2()).sum();
    n.log2() - s / n
}

/// `count` draws of `N(0, K)` as a row-major `count × n` buffer. Block `b`
/// of 65536 draws uses the stream `derive_seed(seed, b)`, so the output is
/// independent of thread count.
pub fn sample_gaussian(k: &SpdMatrix, count: usize, seed: u64) -> Vec<f64> {
    let n = k.n();
    let l = Cholesky::new(k.matrix().clone())
        .expect("SpdMatrix is positive definite")
        .l();
    let mut out = vec![0.0; count * n];
    out.par_chunks_mut(CHUNK * n).enumerate().for_each(|(b, chunk)| {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, b as u64));
        let mut z = vec![0.0; n];
        for row in chunk.chunks_mut(n) {
            loop {
                for v in z.iter_mut() {
                    *v = rng.sample(StandardNormal);
                }
                if z.iter().all(|v: &f64| v.abs() <= TRUNCATION_SIGMAS) {
                    break;
                }
            }
            for (r, slot) in row.iter_mut().enumerate() {
                *slot = (0..=r).map(|c| l[(r, c)] * z[c]).sum();
            }
        }
    });
    out
}

fn sample_uniform(dim: usize, count: usize, seed: u64) -> Vec<f64> {
    let mut out = vec![0.0; count * dim];
    out.par_chunks_mut(CHUNK * dim).enumerate().for_each(|(b, chunk)| {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, b as u64));
        for v in chunk.iter_mut() {
            *v = rng.random::<f64>();
        }
    });
    out
}

/// Histogram of the quantized projection onto `coords`.
fn cell_counts(samples: &[f64], dim: usize, coords: &[usize], grid: QuantGrid) -> HashMap<Vec<i64>, u64> {
    let mut counts: HashMap<Vec<i64>, u64> = HashMap::new();
    for row in samples.chunks(dim) {
        let key: Vec<i64> = coords.iter().map(|&c| grid.cell(row[c])).collect();
        *counts.entry(key).or_insert(0) += 1;
    }
    counts
}

fn check_experiment(m: u64, sample_count: usize) -> Result<QuantGrid> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("m = {m} must be at least 2")));
    }
    if sample_count < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "sample count {sample_count} below {MIN_SAMPLES}"
        )));
    }
    QuantGrid::new(m)
}

/// Samples, quantizes at density `m`, and compares the plug-in estimate of
/// `H([X]_m) − n log₂ m` with `h(X)`.
pub fn renyi_experiment(dist: &Distribution, m: u64, sample_count: usize, seed: u64) -> Result<EntropyEstimate> {
    let grid = check_experiment(m, sample_count)?;
    let dim = dist.dim();
    let samples = match dist {
        Distribution::Gaussian(k) => sample_gaussian(k, sample_count, seed),
        Distribution::UniformCube { dim } => sample_uniform(*dim, sample_count, seed),
    };
    let coords: Vec<usize> = (0..dim).collect();
    let counts = cell_counts(&samples, dim, &coords, grid);
    let occupied_cells = counts.len();
    let h_minus_nlogm = plugin_entropy(counts.into_values()) - dim as f64 * grid.log2_m();
    let analytic_h = dist.analytic_h();
    Ok(EntropyEstimate {
        m,
        samples: sample_count,
        dim,
        h_minus_nlogm,
        analytic_h,
        deviation: h_minus_nlogm - analytic_h,
        occupied_cells,
        path: "plug-in".into(),
    })
}

/// Uniform cube through its exact quantized pmf: `m` equiprobable cells per
/// coordinate, independent across coordinates, so `H = dim · H_1`.
pub fn renyi_uniform_exact(dim: usize, m: u64) -> Result<EntropyEstimate> {
    let grid = QuantGrid::new(m)?;
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let p = 1.0 / m as f64;
    let h1: f64 = (0..m).map(|_| -p * p.log2()).sum();
    let h_minus_nlogm = dim as f64 * h1 - dim as f64 * grid.log2_m();
    Ok(EntropyEstimate {
        m,
        samples: 0,
        dim,
        h_minus_nlogm,
        analytic_h: 0.0,
        deviation: h_minus_nlogm,
        occupied_cells: (m as usize).saturating_pow(dim as u32),
        path: "exact-pmf".into(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetDeviation {
    /// Ground-set indices, e.g. `"1,2"`.
    pub subset: String,
    pub coordinates: usize,
    /// Plug-in `H` of the jointly quantized blocks minus `(Σ k_i) log₂ m`.
    pub estimate: f64,
    pub analytic: f64,
    pub deviation: f64,
    pub occupied_cells: usize,
}

/// For every nonempty α, the plug-in estimate of
/// `H([Z_i]_m, i ∈ α) − (Σ_{i∈α} k_i) log₂ m` against the Gaussian entropy
/// `h(Z_α)`, from one shared sample.
pub fn vector_renyi_check(b: &BlockGaussian, m: u64, sample_count: usize, seed: u64) -> Result<Vec<SubsetDeviation>> {
    let grid = check_experiment(m, sample_count)?;
    let analytic = gaussian_entropy_function(b)?;
    let dim = b.covariance().n();
    let samples = sample_gaussian(b.covariance(), sample_count, seed);
    GroundSet::new(b.n())?
        .nonempty()
        .map(|s| {
            let coords = b.coordinates(s);
            let counts = cell_counts(&samples, dim, &coords, grid);
            let occupied_cells = counts.len();
            let estimate = plugin_entropy(counts.into_values()) - coords.len() as f64 * grid.log2_m();
            let a = *analytic.get(s);
            Ok(SubsetDeviation {
                subset: s.to_string(),
                coordinates: coords.len(),
                estimate,
                analytic: a,
                deviation: estimate - a,
                occupied_cells,
            })
        })
        .collect()
}
