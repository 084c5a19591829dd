//! Monte Carlo estimation of chromatic polynomial coefficients.
//!
//! Two unbiased estimators built on Knuth's backtrack-tree sampling:
//!
//! * [`nbc`]: grows random spanning trees free of broken circuits and
//!   estimates the Whitney coefficients `b_i` of
//!   `P(G, x) = Σ (-1)^i b_i x^{n-i}`.
//! * [`ff`]: merges random pairs of independent blocks and estimates the
//!   falling-factorial coefficients `p_t` of `P(G, x) = Σ p_t <x>_t`.
//!
//! [`exact`] provides ground truth for small graphs and named families,
//! [`stats`] the log-space numerics and error metrics, and [`estimate`] the
//! multi-worker driver that ties them together.

pub mod error;
pub mod estimate;
pub mod exact;
pub mod ff;
pub mod graph;
pub mod nbc;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use estimate::{
    bc_estimate, ff_estimate, resolve_ordering, Algorithm, CoefficientEstimate, EstimateOptions,
    EstimateReport, OrderingKind,
};
pub use exact::ExactPolynomial;
pub use graph::{EdgeOrdering, Family, Graph, VertexOrdering};
pub use nbc::{BcSample, Variant};
pub use ff::FfSample;
pub use stats::LogNumber;
