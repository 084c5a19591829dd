//! Signed log-space numerics, streaming sample statistics, convergence
//! detection and error metrics.

mod accumulator;
mod log_number;
mod metrics;

pub use accumulator::{SampleAccumulator, Snapshot};
pub use log_number::{log_add, LnFactorials, LogNumber};
pub use metrics::{
    arc_error, convergence_check, horner, rel_eval_error, snapshots_converged, ArcError,
    DEFAULT_TOLERANCE, DEFAULT_WINDOW_FRACTION,
};
