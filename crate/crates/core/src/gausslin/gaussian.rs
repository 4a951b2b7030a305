use std::f64::consts::{E, PI};

use nalgebra::DMatrix;

use super::spd::SpdMatrix;
use crate::rankfn::{GroundSet, RankFunction, Subset};
use crate::{Error, Result};

/// Jointly Gaussian vectors `X_1, …, X_n`: one covariance over all
/// coordinates plus the ground-set index owning each coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockGaussian {
    covariance: SpdMatrix,
    /// `partition[c]` is the 1-based index of the block owning coordinate `c`.
    partition: Vec<usize>,
    n: usize,
}

impl BlockGaussian {
    pub fn new(covariance: SpdMatrix, partition: Vec<usize>, n: usize) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if partition.len() != covariance.n() {
            return Err(Error::DimensionMismatch {
                expected: covariance.n(),
                found: partition.len(),
            });
        }
        for &p in &partition {
            ground.check_index(p)?;
        }
        Ok(BlockGaussian {
            covariance,
            partition,
            n,
        })
    }

    /// Scalar blocks: coordinate `c` belongs to index `c + 1`.
    pub fn scalar(covariance: SpdMatrix) -> Result<Self> {
        let n = covariance.n();
        Self::new(covariance, (1..=n).collect(), n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn covariance(&self) -> &SpdMatrix {
        &self.covariance
    }

    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    /// Block sizes `k_1, …, k_n`.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.n];
        for &p in &self.partition {
            sizes[p - 1] += 1;
        }
        sizes
    }

    /// Coordinates (0-based) owned by indices in `s`.
    pub fn coordinates(&self, s: Subset) -> Vec<usize> {
        self.partition
            .iter()
            .enumerate()
            .filter(|(_, &p)| s.contains(p))
            .map(|(c, _)| c)
            .collect()
    }
}

/// `h(X_α) = ½ log₂((2πe)^{m_α} |Σ_α|)`, `m_α` the number of coordinates in α.
pub fn gaussian_entropy_function(b: &BlockGaussian) -> Result<RankFunction> {
    let log_2pie = (2.0 * PI * E).log2();
    RankFunction::try_from_fn(b.n, |s: Subset| {
        let coords = b.coordinates(s);
        if coords.is_empty() {
            return Ok(0.0);
        }
        let ld = b.covariance.log2_det_principal(&coords)?;
        Ok(0.5 * (coords.len() as f64 * log_2pie + ld))
    })
}

/// The vector Gaussian `Z_i = (X_i, X'_i)` with `X ~ N(0, K1)` independent of
/// `X' ~ N(0, K2)`. Its entropy function is the sum of the two scalar ones.
pub fn block_diag_sum(k1: &SpdMatrix, k2: &SpdMatrix) -> Result<BlockGaussian> {
    let n = k1.n();
    if k2.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: k2.n(),
        });
    }
    let mut cov = DMatrix::zeros(2 * n, 2 * n);
    cov.view_mut((0, 0), (n, n)).copy_from(k1.matrix());
    cov.view_mut((n, n), (n, n)).copy_from(k2.matrix());
    let partition = (1..=n).chain(1..=n).collect();
    BlockGaussian::new(SpdMatrix::new(cov)?, partition, n)
}
