//! Exact cone computations over the subset lattice: elemental Shannon
//! inequalities, dual-cone certificates, extreme rays for `n ≤ 3`, and the
//! total classifier built on top of them.

pub mod classify;
mod dd;
mod elemental;
mod inner;
mod lp;
mod prove;
mod rays;

pub use classify::{classify, Classification, Generator, Refutation};
pub use elemental::{elemental_system, ElementalId, ElementalRow, ElementalSystem};
pub use inner::{inner_membership, inner_membership_f64, Membership};
pub use prove::{
    prove_determinant_inequality, shannon_prove, Certificate, ProofOutcome, Refusal,
    ShannonProver, SHANNON_COMPLETE_UP_TO,
};
pub use rays::{
    extreme_rays, extreme_rays_cached, extreme_rays_in_order, find_representation,
    ray_representations_cached,
    is_positive_multiple, ExtremeRaySet, MAX_RAY_N,
};
