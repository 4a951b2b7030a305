use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gaussian::{gaussian_entropy_function, BlockGaussian};
use super::spd::SpdMatrix;
use crate::rankfn::{GroundSet, RankFunction, Subset};
use crate::rational::{exact_rank, int, to_f64, Rational, RationalText};
use crate::{Error, Result};

/// Singular values below this fraction of the largest count as zero.
pub const FLOAT_RANK_TOLERANCE: f64 = 1e-9;

/// Entry types a vector configuration can be built from.
pub trait ConfigScalar: Clone + PartialEq + std::fmt::Debug {
    type Repr: Serialize;

    /// Dimension of the span of `rows` (all of length `dim`).
    fn rank(rows: &[&[Self]], dim: usize) -> usize;
    fn to_f64(&self) -> f64;
    fn to_repr(&self) -> Self::Repr;
}

impl ConfigScalar for Rational {
    type Repr = serde_json::Value;

    /// Exact rank by fraction-free (Bareiss) elimination after clearing
    /// denominators row by row.
    fn rank(rows: &[&[Self]], dim: usize) -> usize {
        exact_rank(rows, dim)
    }

    fn to_f64(&self) -> f64 {
        to_f64(self)
    }

    fn to_repr(&self) -> serde_json::Value {
        if self.is_integer() {
            if let Ok(v) = i64::try_from(self.numer()) {
                return serde_json::Value::from(v);
            }
        }
        serde_json::to_value(RationalText(self.clone())).expect("string")
    }
}

impl ConfigScalar for f64 {
    type Repr = f64;

    fn rank(rows: &[&[Self]], dim: usize) -> usize {
        if rows.is_empty() || dim == 0 {
            return 0;
        }
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        let m = DMatrix::from_row_slice(rows.len(), dim, &flat);
        let sv = m.singular_values();
        let top = sv.max();
        if !(top > 0.0) {
            return 0;
        }
        sv.iter().filter(|&&s| s > FLOAT_RANK_TOLERANCE * top).count()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_repr(&self) -> f64 {
        *self
    }
}

/// `n` groups of row vectors in a common ambient space of dimension `dim`;
/// group `i` holds the `A_{i,1}, …, A_{i,k_i}` attached to index `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorConfig<T = Rational> {
    dim: usize,
    groups: Vec<Vec<Vec<T>>>,
}

impl<T: ConfigScalar> VectorConfig<T> {
    /// Ambient dimension inferred from the first row found.
    pub fn new(groups: Vec<Vec<Vec<T>>>) -> Result<Self> {
        let dim = groups
            .iter()
            .flatten()
            .next()
            .map(Vec::len)
            .unwrap_or(0);
        Self::with_dim(dim, groups)
    }

    pub fn with_dim(dim: usize, groups: Vec<Vec<Vec<T>>>) -> Result<Self> {
        GroundSet::new(groups.len())?;
        for row in groups.iter().flatten() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
        }
        Ok(VectorConfig { dim, groups })
    }

    /// One vector per index.
    pub fn scalar(vectors: Vec<Vec<T>>) -> Result<Self> {
        Self::new(vectors.into_iter().map(|v| vec![v]).collect())
    }

    pub fn n(&self) -> usize {
        self.groups.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn groups(&self) -> &[Vec<Vec<T>>] {
        &self.groups
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    pub fn is_scalar(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }

    fn rows_in(&self, s: Subset) -> Vec<&[T]> {
        s.indices()
            .flat_map(|i| self.groups[i - 1].iter().map(Vec::as_slice))
            .collect()
    }

    /// Rows stacked in group order, with the owning 1-based index of each.
    fn stacked(&self) -> (Vec<&[T]>, Vec<usize>) {
        let mut rows = Vec::new();
        let mut owner = Vec::new();
        for (i, g) in self.groups.iter().enumerate() {
            for r in g {
                rows.push(r.as_slice());
                owner.push(i + 1);
            }
        }
        (rows, owner)
    }
}

/// `g(α) = dim ⟨A_{i,j} : i ∈ α⟩`.
pub fn representable_rank_function<T: ConfigScalar>(v: &VectorConfig<T>) -> RankFunction {
    RankFunction::from_fn(v.n(), |s| T::rank(&v.rows_in(s), v.dim) as f64)
        .expect("validated ground set")
}

/// Exact counterpart of [`representable_rank_function`].
pub fn representable_rank_exact<T: ConfigScalar>(v: &VectorConfig<T>) -> RankFunction<Rational> {
    RankFunction::from_fn(v.n(), |s| int(T::rank(&v.rows_in(s), v.dim) as i64))
        .expect("validated ground set")
}

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::NonPositiveScale(c));
    }
    Ok(())
}

/// `X_i = (1/√c) A_i W + V_i` with independent standard `W`, `V`: a Gaussian
/// with covariance `(1/c) A Aᵀ + I`, one coordinate per row of the
/// configuration.
pub fn representable_to_block_gaussian<T: ConfigScalar>(
    v: &VectorConfig<T>,
    c: f64,
) -> Result<BlockGaussian> {
    check_c(c)?;
    let (rows, owner) = v.stacked();
    if rows.is_empty() {
        return Err(Error::InvalidArgument("configuration has no vectors".into()));
    }
    let flat: Vec<f64> = rows.iter().flat_map(|r| r.iter().map(T::to_f64)).collect();
    let a = DMatrix::from_row_slice(rows.len(), v.dim, &flat);
    let mut cov = (&a * a.transpose()) / c;
    for i in 0..rows.len() {
        cov[(i, i)] += 1.0;
    }
    BlockGaussian::new(SpdMatrix::new(cov)?, owner, v.n())
}

/// Scalar-group version: covariance `(1/c) A Aᵀ + I` with `A` stacking the
/// `A_i` as rows.
pub fn representable_to_gaussian<T: ConfigScalar>(
    v: &VectorConfig<T>,
    c: f64,
) -> Result<BlockGaussian> {
    if !v.is_scalar() {
        return Err(Error::InvalidArgument(
            "scalar Gaussian realization needs exactly one vector per index".into(),
        ));
    }
    representable_to_block_gaussian(v, c)
}

/// Finite-difference slope `[h_{c/4}(X_α) − h_c(X_α)] / (½ log₂ 4)` of the
/// Gaussian realization. The additive `½ log₂(2πe)` terms cancel, leaving
/// `½ Σ log₂((4d_j/c + 1)/(d_j/c + 1))`, which tends to the rank as `c → 0`.
pub fn limit_slope_check<T: ConfigScalar>(v: &VectorConfig<T>, c: f64) -> Result<RankFunction> {
    check_c(c)?;
    if c >= 1.0 {
        return Err(Error::InvalidArgument(format!("c = {c} must be below 1")));
    }
    let coarse = gaussian_entropy_function(&representable_to_block_gaussian(v, c)?)?;
    let fine = gaussian_entropy_function(&representable_to_block_gaussian(v, c / 4.0)?)?;
    let denom = 0.5 * 4f64.log2();
    RankFunction::from_values(
        v.n(),
        fine.values()
            .iter()
            .zip(coarse.values())
            .map(|(f, c)| (f - c) / denom)
            .collect(),
    )
}

#[derive(Serialize, Deserialize)]
struct ConfigWire<R> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    groups: Vec<Vec<Vec<R>>>,
}

impl<T: ConfigScalar> Serialize for VectorConfig<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let has_rows = self.groups.iter().any(|g| !g.is_empty());
        ConfigWire {
            dim: (!has_rows).then_some(self.dim),
            groups: self
                .groups
                .iter()
                .map(|g| g.iter().map(|r| r.iter().map(T::to_repr).collect()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VectorConfig<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ConfigWire::<RationalText>::deserialize(d)?;
        let groups = wire
            .groups
            .into_iter()
            .map(|g| g.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect())
            .collect();
        build(wire.dim, groups).map_err(serde::de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for VectorConfig<f64> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ConfigWire::<f64>::deserialize(d)?;
        build(wire.dim, wire.groups).map_err(serde::de::Error::custom)
    }
}

fn build<T: ConfigScalar>(dim: Option<usize>, groups: Vec<Vec<Vec<T>>>) -> Result<VectorConfig<T>> {
    match dim {
        Some(d) => VectorConfig::with_dim(d, groups),
        None => VectorConfig::new(groups),
    }
}

impl VectorConfig<Rational> {
    pub fn from_integers(groups: &[&[&[i64]]]) -> Result<Self> {
        Self::new(
            groups
                .iter()
                .map(|g| g.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
                .collect(),
        )
    }

    pub fn to_float(&self) -> VectorConfig<f64> {
        VectorConfig {
            dim: self.dim,
            groups: self
                .groups
                .iter()
                .map(|g| g.iter().map(|r| r.iter().map(to_f64).collect()).collect())
                .collect(),
        }
    }
}
