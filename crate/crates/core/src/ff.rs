//! Falling-factorial sampler.
//!
//! Partitions of the vertex set into independent sets, ordered by
//! refinement, form a search tree whose root is the all-singletons partition.
//! A sample walks down the tree by merging a uniformly chosen pair of
//! mergeable blocks until no pair remains. A partition with `k` blocks is
//! reached along [`duplicate_count`] distinct paths, so Knuth's product of
//! child counts divided by that count estimates `p_k`, the number of
//! partitions into `k` independent sets. The chromatic polynomial is
//! `Σ_k p_k <x>_k`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::ExactPolynomial;
use crate::graph::Graph;
use crate::rng::SampleRng;
use crate::stats::{LnFactorials, LogNumber};

/// Blocks of the current partition and their pairwise conflicts.
#[derive(Debug, Clone)]
pub struct BlockMatrix {
    conflict: Vec<Vec<bool>>,
    sizes: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl BlockMatrix {
    /// All-singletons partition of `g`; the conflict matrix starts as the
    /// adjacency matrix.
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut conflict = vec![vec![false; n]; n];
        for &(u, v) in g.edges() {
            conflict[u][v] = true;
            conflict[v][u] = true;
        }
        BlockMatrix { conflict, sizes: vec![1; n], members: (0..n).map(|v| vec![v]).collect() }
    }

    /// Current number of blocks.
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn conflicts(&self, r: usize, s: usize) -> bool {
        self.conflict[r][s]
    }

    /// Number of block pairs `r < s` with no edge between them.
    pub fn mergeable_pairs(&self) -> usize {
        let k = self.len();
        (0..k).map(|r| self.conflict[r][r + 1..k].iter().filter(|&&c| !c).count()).sum()
    }

    /// The `index`-th mergeable pair in `(r, s)` lexicographic order.
    pub fn nth_mergeable(&self, mut index: usize) -> Option<(usize, usize)> {
        let k = self.len();
        for r in 0..k {
            for s in r + 1..k {
                if !self.conflict[r][s] {
                    if index == 0 {
                        return Some((r, s));
                    }
                    index -= 1;
                }
            }
        }
        None
    }

    /// Merges block `s` into block `r < s`: OR of rows and columns into `r`,
    /// then `s` is removed by moving the last block into its slot.
    pub fn merge(&mut self, r: usize, s: usize) {
        assert!(r < s && s < self.len(), "merge({r}, {s}) with {} blocks", self.len());
        assert!(!self.conflict[r][s], "blocks {r} and {s} are joined by an edge");
        let k = self.len();
        for t in 0..k {
            let c = self.conflict[s][t];
            self.conflict[r][t] |= c;
            self.conflict[t][r] |= c;
        }
        self.conflict.swap_remove(s);
        for row in &mut self.conflict {
            row.swap_remove(s);
        }
        self.sizes[r] += self.sizes[s];
        self.sizes.swap_remove(s);
        let moved = self.members.swap_remove(s);
        self.members[r].extend(moved);
    }
}

fn check_sizes(sizes: &[usize], n: usize) -> Result<()> {
    if sizes.contains(&0) {
        return Err(Error::InvalidArgument("block sizes must be positive".into()));
    }
    let total: usize = sizes.iter().sum();
    if total != n {
        return Err(Error::InvalidArgument(format!("block sizes sum to {total}, expected {n}")));
    }
    Ok(())
}

fn ln_duplicate_count(sizes: &[usize], n: usize, table: &LnFactorials) -> f64 {
    let k = sizes.len();
    let blocks: f64 = sizes
        .iter()
        .map(|&b| table.get(b) - (b - 1) as f64 * std::f64::consts::LN_2)
        .sum();
    table.get(n - k) + blocks
}

/// Number of distinct merge sequences from `n` singletons to a partition
/// with block sizes `sizes`: `(n-k)! · Π β_i! / 2^(β_i - 1)`, in log space.
pub fn duplicate_count(sizes: &[usize], n: usize) -> Result<LogNumber> {
    check_sizes(sizes, n)?;
    Ok(LogNumber::from_ln(ln_duplicate_count(sizes, n, &LnFactorials::new(n))))
}

/// [`duplicate_count`] in exact integer arithmetic.
pub fn duplicate_count_exact(sizes: &[usize], n: usize) -> Result<BigUint> {
    check_sizes(sizes, n)?;
    let fact = |k: usize| (1..=k).fold(BigUint::one(), |acc, j| acc * j);
    let k = sizes.len();
    let numerator = sizes.iter().fold(fact(n - k), |acc, &b| acc * fact(b));
    let halvings: usize = sizes.iter().map(|&b| b - 1).sum();
    let (q, r) = numerator.div_rem(&(BigUint::one() << halvings));
    debug_assert!(r.is_zero());
    Ok(q)
}

/// One root-to-leaf path of the sampler.
#[derive(Debug, Clone, PartialEq)]
pub struct FfSample {
    /// Estimates of `p_n, p_{n-1}, .., p_1`; levels the path never reached
    /// hold zero.
    pub p_est: Vec<LogNumber>,
    /// Mergeable-pair counts `c_1, c_2, ..` at each visited partition; the
    /// last entry is zero unless the path ended at a single block.
    pub levels: Vec<u64>,
    /// Vertex sets of the final partition.
    pub blocks: Vec<Vec<usize>>,
}

/// Reusable per-worker sampler state.
pub struct FfSampler<'g> {
    g: &'g Graph,
    table: LnFactorials,
    ln_int: Vec<f64>,
}

impl<'g> FfSampler<'g> {
    pub fn new(g: &'g Graph) -> Result<Self> {
        let n = g.order();
        if n == 0 {
            return Err(Error::InvalidArgument("graph has no vertices".into()));
        }
        let pairs = n * (n - 1) / 2;
        Ok(FfSampler {
            g,
            table: LnFactorials::new(n),
            ln_int: (0..=pairs).map(|k| (k as f64).ln()).collect(),
        })
    }

    pub fn sample(&mut self, rng: &mut SampleRng) -> FfSample {
        self.sample_with(&mut |k| rng.random_range(0..k))
    }

    /// Runs one sample, asking `choose(k)` for an index in `0..k` whenever a
    /// mergeable pair must be picked (pairs in `(r, s)` lexicographic order).
    pub fn sample_with(&mut self, choose: &mut dyn FnMut(usize) -> usize) -> FfSample {
        let n = self.g.order();
        let mut blocks = BlockMatrix::new(self.g);
        let mut p_est = vec![LogNumber::ZERO; n];
        p_est[0] = LogNumber::ONE;
        let mut levels = Vec::new();
        let mut ln_product = 0.0;
        let mut i = 0;
        loop {
            let c = blocks.mergeable_pairs();
            levels.push(c as u64);
            if c == 0 {
                break;
            }
            ln_product += self.ln_int[c];
            let pick = choose(c);
            assert!(pick < c, "chooser returned {pick} for {c} pairs");
            let (r, s) = blocks.nth_mergeable(pick).expect("pick < c");
            blocks.merge(r, s);
            i += 1;
            let ln_f = ln_duplicate_count(blocks.sizes(), n, &self.table);
            p_est[i] = LogNumber::from_ln(ln_product - ln_f);
            if blocks.len() == 1 {
                break;
            }
        }
        FfSample { p_est, levels, blocks: blocks.members().to_vec() }
    }
}

/// One sample of the falling-factorial estimator.
pub fn ff_sample(g: &Graph, rng: &mut SampleRng) -> Result<FfSample> {
    Ok(FfSampler::new(g)?.sample(rng))
}

/// Signed Stirling numbers of the first kind `s(t, 0..=t)`, the power-basis
/// coefficients of `<x>_t = x(x-1)..(x-t+1)`.
pub fn stirling_first_row(t: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for j in 0..t {
        // Multiply by (x - j).
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, c) in row.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * BigInt::from(j);
        }
        row = next;
    }
    row
}

/// Rows `s(t, ·)` for `t = 0..=max` as log numbers. The recurrence
/// `|s(t+1, j)| = |s(t, j-1)| + t |s(t, j)|` only adds magnitudes, so the
/// rows carry no cancellation error.
fn stirling_log_rows(max: usize) -> Vec<Vec<LogNumber>> {
    let mut rows = vec![vec![LogNumber::ONE]];
    for t in 0..max {
        let prev = &rows[t];
        let tt = LogNumber::from_u64(t as u64);
        let next: Vec<LogNumber> = (0..=t + 1)
            .map(|j| {
                let left = if j > 0 { prev[j - 1].abs() } else { LogNumber::ZERO };
                let right = prev.get(j).map_or(LogNumber::ZERO, |x| x.abs() * tt);
                let mag = left + right;
                if (t + 1 - j) % 2 == 1 { -mag } else { mag }
            })
            .collect();
        rows.push(next);
    }
    rows
}

/// `Σ_t p_t <x>_t` in the power basis, with `p[t-1] = p_t` for `t = 1..=n`.
pub fn falling_to_power(p: &[BigInt]) -> ExactPolynomial {
    let n = p.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (t, pt) in (1..=n).zip(p) {
        if pt.is_zero() {
            continue;
        }
        for (j, s) in stirling_first_row(t).into_iter().enumerate() {
            coeffs[j] += pt * s;
        }
    }
    ExactPolynomial::new(coeffs)
}

/// Largest tolerated ratio of intermediate to final magnitude in
/// [`falling_to_power_log`] before a coefficient is flagged.
pub const CANCELLATION_FACTOR: f64 = 1e6;

/// Power-basis coefficients converted from estimated falling-factorial
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerConversion {
    /// Ascending coefficients, `coeffs[j]` multiplying `x^j`.
    pub coeffs: Vec<LogNumber>,
    /// Per coefficient: some term or partial sum exceeded the final magnitude
    /// by more than [`CANCELLATION_FACTOR`].
    pub cancellation: Vec<bool>,
}

/// Signed log-space version of [`falling_to_power`] for estimated inputs,
/// with `p[t-1] = p_t`.
#[allow(clippy::needless_range_loop)]
pub fn falling_to_power_log(p: &[LogNumber]) -> PowerConversion {
    let n = p.len();
    let rows = stirling_log_rows(n);
    let factor = LogNumber::from_f64(CANCELLATION_FACTOR);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut cancellation = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = LogNumber::ZERO;
        let mut peak = LogNumber::ZERO;
        for t in j.max(1)..=n {
            let term = p[t - 1] * rows[t][j];
            acc += term;
            peak = max_abs(max_abs(peak, term), acc);
        }
        cancellation.push(!peak.is_zero() && peak > acc.abs() * factor);
        coeffs.push(acc);
    }
    PowerConversion { coeffs, cancellation }
}

fn max_abs(a: LogNumber, b: LogNumber) -> LogNumber {
    let (a, b) = (a.abs(), b.abs());
    if b > a { b } else { a }
}
