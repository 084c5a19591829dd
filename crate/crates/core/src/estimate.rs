//! Multi-worker estimation runs and their reports.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::ff::{falling_to_power_log, FfSampler, PowerConversion};
use crate::graph::{edge_order_from_vertex_order, peo_vertex_order, EdgeOrdering, Graph};
use crate::nbc::{BcSampler, Variant};
use crate::rng::{substream, SampleRng};
use crate::stats::{
    snapshots_converged, LogNumber, SampleAccumulator, Snapshot, DEFAULT_TOLERANCE,
    DEFAULT_WINDOW_FRACTION,
};

/// Substream index reserved for drawing a random edge ordering.
const ORDERING_STREAM: u64 = u64::MAX;

/// Edge ordering used by the broken-circuit sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    /// Induced by the greedy perfect-elimination vertex order.
    Peo,
    /// Edge `i` has rank `i`.
    Input,
    /// Uniformly random, drawn from the run seed.
    Random,
}

impl OrderingKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderingKind::Peo => "peo",
            OrderingKind::Input => "input",
            OrderingKind::Random => "random",
        }
    }
}

/// Builds the edge ordering of kind `kind` for `g`.
pub fn resolve_ordering(g: &Graph, kind: OrderingKind, seed: u64) -> EdgeOrdering {
    match kind {
        OrderingKind::Peo => edge_order_from_vertex_order(g, &peo_vertex_order(g)),
        OrderingKind::Input => EdgeOrdering::identity(g.size()),
        OrderingKind::Random => EdgeOrdering::random(g.size(), &mut substream(seed, ORDERING_STREAM)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Bc,
    Ff,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bc => "bc",
            Algorithm::Ff => "ff",
        }
    }
}

/// Settings shared by both estimators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateOptions {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    /// Trailing fraction of snapshots inspected by the convergence check.
    pub window_fraction: f64,
    /// Relative tolerance of the convergence check.
    pub tolerance: f64,
}

impl EstimateOptions {
    pub fn new(samples: u64, seed: u64) -> Self {
        EstimateOptions {
            samples,
            seed,
            workers: 1,
            window_fraction: DEFAULT_WINDOW_FRACTION,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("at least one sample is required".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("at least one worker is required".into()));
        }
        Ok(())
    }
}

/// Mean and spread of one estimated coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientEstimate {
    pub mean: LogNumber,
    pub variance: LogNumber,
    pub converged: bool,
    /// Running-mean snapshots of the pooled sample stream.
    pub history: Vec<Snapshot>,
}

/// Result of an estimation run.
///
/// For the broken-circuit sampler `coefficients[i]` estimates `|b_i|`, the
/// magnitude of the coefficient of `x^{n-i}` (whose sign is `(-1)^i`). For
/// the falling-factorial sampler it estimates `p_{n-i}`, and `power_basis`
/// holds the converted chromatic coefficients.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    pub algorithm: Algorithm,
    pub variant: Option<Variant>,
    pub ordering: Option<OrderingKind>,
    pub options: EstimateOptions,
    /// Vertex count of the input graph.
    pub order: usize,
    pub samples: u64,
    pub coefficients: Vec<CoefficientEstimate>,
    pub power_basis: Option<PowerConversion>,
    pub wall: Duration,
}

impl EstimateReport {
    pub fn means(&self) -> Vec<LogNumber> {
        self.coefficients.iter().map(|c| c.mean).collect()
    }

    pub fn variances(&self) -> Vec<LogNumber> {
        self.coefficients.iter().map(|c| c.variance).collect()
    }

    /// Estimated chromatic coefficients in ascending powers of `x`
    /// (length `n + 1`).
    pub fn power_coefficients(&self) -> Vec<LogNumber> {
        match self.algorithm {
            Algorithm::Bc => {
                let n = self.order;
                let mut out = vec![LogNumber::ZERO; n + 1];
                for (i, c) in self.coefficients.iter().enumerate() {
                    out[n - i] = if i % 2 == 0 { c.mean } else { -c.mean };
                }
                out
            }
            Algorithm::Ff => self.power_basis.as_ref().expect("ff reports carry a conversion").coeffs.clone(),
        }
    }

    pub fn all_converged(&self) -> bool {
        self.coefficients.iter().all(|c| c.converged)
    }
}

/// Draws `opts.samples` samples split evenly over `opts.workers` threads.
///
/// Worker `w` draws from substream `w` of the seed and accumulates into its
/// own accumulators; the results are merged in worker order, so a fixed
/// `(seed, workers)` pair reproduces the run exactly.
fn run_workers<S, F>(width: usize, opts: &EstimateOptions, make: F) -> Result<Vec<SampleAccumulator>>
where
    F: Fn() -> Result<S> + Sync,
    S: FnMut(&mut SampleRng) -> Vec<LogNumber>,
{
    let workers = opts.workers as u64;
    let share = |w: u64| opts.samples / workers + u64::from(w < opts.samples % workers);
    let results: Vec<Result<Vec<SampleAccumulator>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let make = &make;
                scope.spawn(move || {
                    let count = share(w);
                    let cadence = (count / 1000).max(1);
                    let mut accs = vec![SampleAccumulator::with_cadence(cadence); width];
                    let mut draw = make()?;
                    let mut rng = substream(opts.seed, w);
                    for _ in 0..count {
                        let values = draw(&mut rng);
                        for (acc, x) in accs.iter_mut().zip(values) {
                            acc.push(x);
                        }
                    }
                    Ok(accs)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampling worker panicked")).collect()
    });
    let mut merged = vec![SampleAccumulator::new(); width];
    for accs in results {
        let accs = accs?;
        for (m, a) in merged.iter_mut().zip(&accs) {
            *m = m.merge(a);
        }
    }
    Ok(merged)
}

fn summarize(accs: Vec<SampleAccumulator>, opts: &EstimateOptions) -> Vec<CoefficientEstimate> {
    accs.into_iter()
        .map(|acc| CoefficientEstimate {
            mean: acc.mean(),
            variance: acc.variance(),
            converged: snapshots_converged(acc.history(), opts.window_fraction, opts.tolerance),
            history: acc.history().to_vec(),
        })
        .collect()
}

/// Estimates `|b_0| .. |b_{n-1}|` with the broken-circuit sampler.
pub fn bc_estimate(
    g: &Graph,
    variant: Variant,
    ordering: OrderingKind,
    opts: &EstimateOptions,
) -> Result<EstimateReport> {
    opts.validate()?;
    let start = Instant::now();
    let eo = resolve_ordering(g, ordering, opts.seed);
    // Validate once up front so errors surface before threads start.
    BcSampler::new(g, &eo, variant)?;
    let accs = run_workers(g.order(), opts, || {
        let mut sampler = BcSampler::new(g, &eo, variant)?;
        Ok(move |rng: &mut SampleRng| sampler.sample(rng).b_est)
    })?;
    Ok(EstimateReport {
        algorithm: Algorithm::Bc,
        variant: Some(variant),
        ordering: Some(ordering),
        options: *opts,
        order: g.order(),
        samples: opts.samples,
        coefficients: summarize(accs, opts),
        power_basis: None,
        wall: start.elapsed(),
    })
}

/// Estimates `p_n .. p_1` with the falling-factorial sampler and converts
/// the means to the power basis.
pub fn ff_estimate(g: &Graph, opts: &EstimateOptions) -> Result<EstimateReport> {
    opts.validate()?;
    let start = Instant::now();
    FfSampler::new(g)?;
    let accs = run_workers(g.order(), opts, || {
        let mut sampler = FfSampler::new(g)?;
        Ok(move |rng: &mut SampleRng| sampler.sample(rng).p_est)
    })?;
    let coefficients = summarize(accs, opts);
    // Conversion expects p_1 first.
    let ascending: Vec<LogNumber> = coefficients.iter().rev().map(|c| c.mean).collect();
    Ok(EstimateReport {
        algorithm: Algorithm::Ff,
        variant: None,
        ordering: None,
        options: *opts,
        order: g.order(),
        samples: opts.samples,
        coefficients,
        power_basis: Some(falling_to_power_log(&ascending)),
        wall: start.elapsed(),
    })
}
