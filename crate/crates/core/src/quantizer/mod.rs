//! Discrete versus differential entropy: m-quantization, plug-in entropy
//! estimates of quantized samples, and the exact pmf-to-pdf construction.

mod grid;
mod mixture;
mod pmf;
mod renyi;

pub use grid::{m_quantize, m_quantize_cells, QuantGrid};
pub use mixture::{binary_entropy, mixture_bounds, MixtureBounds};
pub use pmf::{exact_entropy, pmf_to_pdf, DiscretePmf, PiecewisePdf, PMF_SUM_TOLERANCE};
pub use renyi::{
    plugin_entropy, renyi_experiment, renyi_uniform_exact, sample_gaussian, vector_renyi_check,
    Distribution, EntropyEstimate, SubsetDeviation, TRUNCATION_SIGMAS,
};
