use num_rational::BigRational;
use num_traits::Zero;

use super::{LogNumber, Snapshot};
use crate::error::{Error, Result};
use crate::exact::ExactPolynomial;

/// Default trailing-window fraction for [`convergence_check`].
pub const DEFAULT_WINDOW_FRACTION: f64 = 0.1;
/// Default relative tolerance for [`convergence_check`].
pub const DEFAULT_TOLERANCE: f64 = 0.01;

/// True iff every running-mean snapshot in the trailing window lies within
/// `tolerance · |current|` of the current (last) snapshot.
///
/// The window covers the last `ceil(window_fraction · len)` snapshots. Fewer
/// than two snapshots never count as converged.
pub fn convergence_check(history: &[LogNumber], window_fraction: f64, tolerance: f64) -> bool {
    if history.len() < 2 {
        return false;
    }
    let current = *history.last().unwrap();
    let window = ((window_fraction * history.len() as f64).ceil() as usize).clamp(1, history.len());
    let bound = current.abs() * LogNumber::from_f64(tolerance);
    history[history.len() - window..]
        .iter()
        .all(|&s| (s - current).abs() <= bound)
}

/// [`convergence_check`] on accumulator snapshots.
pub fn snapshots_converged(history: &[Snapshot], window_fraction: f64, tolerance: f64) -> bool {
    let means: Vec<LogNumber> = history.iter().map(|s| s.mean).collect();
    convergence_check(&means, window_fraction, tolerance)
}

/// Evaluates `Σ coeffs[j] x^j` (ascending powers) by Horner's rule in signed
/// log space.
pub fn horner(coeffs: &[LogNumber], x: LogNumber) -> LogNumber {
    coeffs.iter().rev().fold(LogNumber::ZERO, |acc, &c| acc * x + c)
}

/// `|P_true(x) - P_approx(x)| / |P_true(x)|`, with `approx` given as signed
/// coefficients in ascending powers.
pub fn rel_eval_error(truth: &ExactPolynomial, approx: &[LogNumber], x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::InvalidArgument(format!("evaluation point must be positive, got {x}")));
    }
    let exact_x = BigRational::from_float(x).expect("finite");
    let exact_t = truth
        .coeffs()
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * &exact_x + BigRational::from_integer(c.clone()));
    if exact_t.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let t = LogNumber::from_bigint(exact_t.numer()) / LogNumber::from_bigint(exact_t.denom());
    let a = horner(approx, LogNumber::from_f64(x));
    Ok(a.rel_diff(t))
}

/// Average relative coefficient error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcError {
    pub mean: f64,
    /// Coefficients that entered the average.
    pub compared: usize,
    /// True coefficients that were exactly zero and therefore skipped.
    pub skipped: usize,
}

/// Mean over coefficients of `|true - approx| / |true|`, skipping positions
/// where the true coefficient is exactly zero.
pub fn arc_error(truth: &[LogNumber], approx: &[LogNumber]) -> Result<ArcError> {
    if truth.len() != approx.len() {
        return Err(Error::LengthMismatch { expected: truth.len(), found: approx.len() });
    }
    let mut total = 0.0;
    let mut compared = 0;
    let mut skipped = 0;
    for (&t, &a) in truth.iter().zip(approx) {
        if t.is_zero() {
            skipped += 1;
        } else {
            total += a.rel_diff(t);
            compared += 1;
        }
    }
    let mean = if compared == 0 { 0.0 } else { total / compared as f64 };
    Ok(ArcError { mean, compared, skipped })
}
