//! Numerical counterexample search over positive definite matrices.
//!
//! Nothing here proves anything: a failed search is not evidence of validity.
//! Every reported violation carries its matrix and re-verifies from it alone.

mod config;
mod descent;
mod ingleton;
mod search;

pub use config::SearchConfig;
pub use descent::{local_descent, Descent, DESCENT_JITTER};
pub use ingleton::{ingleton_violation_search, BestValueReport, IngletonOutcome};
pub use search::{
    candidate, random_search, refute, violation_threshold, CandidateKind, Counterexample,
    SearchOutcome, REVERIFY_TOLERANCE,
};
