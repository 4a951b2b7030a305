use nalgebra::{Cholesky, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rankfn::{GroundSet, RankFunction, Subset};
use crate::{Error, Result};

pub const WISHART_JITTER: f64 = 1e-9;

const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Symmetric positive definite matrix, validated by Cholesky factorization.
///
/// The stored matrix is the exact symmetrization `(A + Aᵀ)/2` of the input.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    matrix: DMatrix<f64>,
}

impl SpdMatrix {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::NotPositiveDefinite);
        }
        let scale = matrix.amax();
        let n = matrix.nrows();
        for r in 0..n {
            for c in r + 1..n {
                if (matrix[(r, c)] - matrix[(c, r)]).abs() > SYMMETRY_TOLERANCE * scale {
                    return Err(Error::InvalidArgument(format!(
                        "matrix not symmetric at ({}, {})",
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
        let sym = (&matrix + matrix.transpose()) * 0.5;
        if Cholesky::new(sym.clone()).is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(SpdMatrix { matrix: sym })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::new(DMatrix::from_row_slice(n, n, &flat))
    }

    pub fn identity(n: usize) -> Self {
        SpdMatrix {
            matrix: DMatrix::identity(n, n),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(diag)))
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.matrix
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }

    /// The principal submatrix on the (0-based) coordinates `idx`.
    pub fn principal(&self, idx: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.matrix[(idx[r], idx[c])])
    }

    /// `log₂|K_idx|` by Cholesky of the principal submatrix; 0 for no indices.
    pub fn log2_det_principal(&self, idx: &[usize]) -> Result<f64> {
        if idx.is_empty() {
            return Ok(0.0);
        }
        log2_det(self.principal(idx))
    }

    pub fn log2_det(&self) -> f64 {
        log2_det(self.matrix.clone()).expect("validated at construction")
    }
}

pub(crate) fn log2_det(m: DMatrix<f64>) -> Result<f64> {
    let chol = Cholesky::new(m).ok_or(Error::NotPositiveDefinite)?;
    let l = chol.l_dirty();
    Ok(2.0 * (0..l.nrows()).map(|i| l[(i, i)].log2()).sum::<f64>())
}

/// `g(α) = log₂|K_α|` with `g(∅) = 0`.
pub fn logdet_rank_function(k: &SpdMatrix) -> Result<RankFunction> {
    GroundSet::new(k.n())?;
    RankFunction::try_from_fn(k.n(), |s: Subset| {
        let idx: Vec<usize> = s.indices().map(|i| i - 1).collect();
        k.log2_det_principal(&idx)
    })
}

/// `D K D` with `D = diag(d)`; shifts the log-det function by `2 Σ_{i∈α} log₂ d_i`.
pub fn diagonal_scale(k: &SpdMatrix, d: &[f64]) -> Result<SpdMatrix> {
    if d.len() != k.n() {
        return Err(Error::DimensionMismatch {
            expected: k.n(),
            found: d.len(),
        });
    }
    if let Some(&bad) = d.iter().find(|&&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::NonPositiveScale(bad));
    }
    let n = k.n();
    let m = DMatrix::from_fn(n, n, |r, c| d[r] * k.matrix[(r, c)] * d[c]);
    SpdMatrix::new(m)
}

/// `G Gᵀ + εI` with `G` an `n × dof` matrix of standard normals drawn from a
/// ChaCha8 stream seeded by `seed`.
pub fn wishart_sample(n: usize, dof: usize, seed: u64) -> Result<SpdMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if dof < n {
        return Err(Error::InvalidArgument(format!(
            "degrees of freedom {dof} below dimension {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::from_fn(n, dof, |_, _| rng.sample::<f64, _>(StandardNormal));
    let mut k = &g * g.transpose();
    for i in 0..n {
        k[(i, i)] += WISHART_JITTER;
    }
    SpdMatrix::new(k)
}

/// Wishart sample with the default `n + 2` degrees of freedom.
pub fn wishart_sample_default(n: usize, seed: u64) -> Result<SpdMatrix> {
    wishart_sample(n, n + 2, seed)
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl Serialize for SpdMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire {
            n: self.n(),
            rows: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpdMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(d)?;
        if wire.rows.len() != wire.n {
            return Err(serde::de::Error::custom(format!(
                "declared n = {} but {} rows",
                wire.n,
                wire.rows.len()
            )));
        }
        SpdMatrix::from_rows(&wire.rows).map_err(serde::de::Error::custom)
    }
}
