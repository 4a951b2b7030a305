//! Determinant inequalities over positive definite matrices, studied through
//! the cone of scalar-Gaussian entropy functions.
//!
//! A candidate inequality `∏_α |K_α|^{c_α} ≥ 1` is represented as a
//! [`LinearFunctional`] over the subset lattice. The [`cone`] module proves it
//! with an exact Shannon-type certificate, the [`refuter`] module looks for
//! positive definite counterexamples, and [`cone::classify`] combines both into
//! a total decision procedure for `n ≤ 3`.
//!
//! All logarithms are base 2; entropies are in bits.

pub mod cone;
pub mod dsl;
mod error;
pub mod gausslin;
pub mod quantizer;
pub mod rankfn;
pub mod rational;
pub mod refuter;
mod seed;

pub use crate::error::{Error, Result};
pub use crate::rankfn::{GroundSet, IngletonForm, LinearFunctional, RankFunction, Subset};
pub use crate::rational::Rational;
pub use crate::seed::derive_seed;
