//! Structural decompositions and statistics: the 2-core of complex
//! components with its pendant trees, the conjugate parameter λ′ and the
//! contiguous model, ξ statistics, induced paths and combs, and a spectral
//! estimate for regular graphs.

mod comb;
mod core;
mod lambda;
mod spectral;
mod xi;

pub use self::core::{core_decompose, type_tuple, CoreDecomposition};
pub use comb::{extract_comb, find_comb, find_induced_path, is_induced_path, CombExtraction, PathRule};
pub use lambda::{build_contiguous_model, conjugate_lambda, ContiguousModel};
pub use spectral::{second_eigenvalue, SpectralEstimate};
pub use xi::{xi_stats, XiStats, MAX_RECORDED_MAXIMIZERS};
