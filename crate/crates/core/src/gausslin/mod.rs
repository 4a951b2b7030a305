//! Positive definite matrices, principal-minor log-determinants, Gaussian
//! entropy functions and linearly representable rank functions.
//!
//! A log-determinant function `g(α) = log₂|K_α|` is exactly twice the entropy
//! function of a scalar Gaussian vector with covariance `K/(2πe)`, which is
//! what lets determinant inequalities be handled as information inequalities.

mod gaussian;
mod representable;
mod spd;

pub use gaussian::{block_diag_sum, gaussian_entropy_function, BlockGaussian};
pub use representable::{
    limit_slope_check, representable_rank_exact, representable_rank_function,
    representable_to_block_gaussian,
    representable_to_gaussian, ConfigScalar, VectorConfig, FLOAT_RANK_TOLERANCE,
};
pub use spd::{
    diagonal_scale, logdet_rank_function, wishart_sample, wishart_sample_default, SpdMatrix,
    WISHART_JITTER,
};
