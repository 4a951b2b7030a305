//! Subset-lattice data model: rank functions, linear functionals over them,
//! the scaling directions `φ_i`, and the classical inequality families.

mod families;
mod functional;
mod json;
mod rank;
mod subset;

pub use families::{hadamard, han, ingleton, szasz, IngletonForm};
pub use functional::LinearFunctional;
pub use rank::{phi, phi_exact, scale_shift, sum, RankFunction};
pub use subset::{GroundSet, Subset};
