//! Tools for measuring `μ(G)`, the number of pairwise non-isomorphic induced
//! subgraphs of a graph, together with the structural pieces used to bound it
//! on random graphs: canonical forms, random graph models, rooted-tree
//! counting, giant-component anatomy and a reproducible experiment harness.
//!
//! Numeric routines that work with real numbers are generic over [`Real`]
//! (`f32` or `f64`); the crate root exports `f64` aliases for the common
//! cases. Exact counts are always [`num_bigint::BigUint`].

pub mod anatomy;
pub mod error;
pub mod experiments;
pub mod formulas;
pub mod graph;
pub mod mu;
pub mod random;
pub mod scalar;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Adjacency, CanonicalForm, Graph, SparseGraph, VertexSet};
pub use scalar::Real;

pub use random::Seed;
pub use tree::RootedTree;
pub use mu::{MuConfig, MuReport};

pub type SpectralEstimate = anatomy::SpectralEstimate<f64>;
pub type XiStats = anatomy::XiStats<f64>;
pub type EdgeConcentrationReport = mu::EdgeConcentrationReport<f64>;
