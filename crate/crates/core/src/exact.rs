//! Exact chromatic polynomials used as ground truth: deletion–contraction,
//! interpolation through brute-force coloring counts, explicit enumeration of
//! broken-circuit-free edge sets, and closed forms for named families.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ff::stirling_first_row;
use crate::graph::{EdgeOrdering, Family, Graph};
use crate::stats::LogNumber;

pub const DEFAULT_DC_CAP: usize = 14;
pub const DEFAULT_INTERP_CAP: usize = 10;
pub const DEFAULT_NBC_CAP: usize = 12;

/// Integer polynomial, coefficient `i` multiplying `x^i`. Trailing zero
/// coefficients are trimmed so equal polynomials compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactPolynomial {
    coeffs: Vec<BigInt>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ExactPolynomial { coeffs: Vec::new() }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        ExactPolynomial { coeffs }
    }

    /// Builds `Σ (-1)^i b_i x^{n-i}` with `n = b.len()`.
    pub fn from_whitney(b: &[BigUint]) -> Self {
        let n = b.len();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (i, bi) in b.iter().enumerate() {
            let v = BigInt::from(bi.clone());
            coeffs[n - i] = if i % 2 == 0 { v } else { -v };
        }
        Self::new(coeffs)
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients from the leading term down to the constant.
    pub fn descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// `|coeff of x^{n-i}|` for `i = 0..n`, where `n` is the degree.
    pub fn whitney_magnitudes(&self) -> Vec<BigUint> {
        let n = self.degree().unwrap_or(0);
        (0..n).map(|i| self.coeffs[n - i].magnitude().clone()).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Ascending coefficients as signed log numbers.
    pub fn to_log(&self) -> Vec<LogNumber> {
        self.coeffs.iter().map(LogNumber::from_bigint).collect()
    }

    pub fn mul(&self, other: &ExactPolynomial) -> ExactPolynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &ExactPolynomial) -> ExactPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn add(&self, other: &ExactPolynomial) -> ExactPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    /// `(x - c)^k`.
    pub fn shifted_power(c: i64, k: usize) -> ExactPolynomial {
        let linear = ExactPolynomial::from_i64(&[-c, 1]);
        (0..k).fold(ExactPolynomial::monomial(0), |acc, _| acc.mul(&linear))
    }

    fn scale(&self, s: &BigInt) -> ExactPolynomial {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

fn check_cap(oracle: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { oracle, n, cap })
    } else {
        Ok(())
    }
}

/// Chromatic polynomial by deletion–contraction, `P(G) = P(G - e) - P(G / e)`.
///
/// Each step splits on the edge whose endpoints share the most neighbors,
/// which leaves the fewest edges after contraction. Refuses graphs with more
/// than `cap` vertices.
pub fn exact_deletion_contraction(g: &Graph, cap: usize) -> Result<ExactPolynomial> {
    check_cap("deletion-contraction", g.order(), cap)?;
    let adj: Vec<Vec<usize>> = (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect();
    Ok(ExactPolynomial::new(deletion_contraction(&adj)))
}

fn deletion_contraction(adj: &[Vec<usize>]) -> Vec<BigInt> {
    let n = adj.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for u in 0..n {
        for &v in adj[u].iter().filter(|&&v| v > u) {
            let common = adj[u].iter().filter(|w| adj[v].binary_search(w).is_ok()).count();
            if best.is_none_or(|(_, _, c)| common > c) {
                best = Some((u, v, common));
            }
        }
    }
    let Some((u, v, _)) = best else {
        let mut out = vec![BigInt::zero(); n + 1];
        out[n] = BigInt::one();
        return out;
    };

    let mut deleted = adj.to_vec();
    deleted[u].retain(|&w| w != v);
    deleted[v].retain(|&w| w != u);

    // Merge v into u, drop v, shift ids above v down by one.
    let relabel = |w: usize| if w > v { w - 1 } else { w };
    let mut contracted: Vec<Vec<usize>> = Vec::with_capacity(n - 1);
    for (w, list) in adj.iter().enumerate() {
        if w == v {
            continue;
        }
        let mut merged: Vec<usize> = if w == u {
            list.iter().chain(&adj[v]).copied().filter(|&x| x != u && x != v).collect()
        } else {
            list.iter().map(|&x| if x == v { u } else { x }).collect()
        };
        merged.sort_unstable();
        merged.dedup();
        contracted.push(merged.into_iter().map(relabel).collect());
    }

    let mut out = deletion_contraction(&deleted);
    for (k, c) in deletion_contraction(&contracted).into_iter().enumerate() {
        out[k] -= c;
    }
    out
}

/// Number of proper colorings of `g` with `k` colors, by exhaustive
/// backtracking over color assignments.
pub fn count_proper_colorings(g: &Graph, k: usize) -> u128 {
    let n = g.order();
    if n == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    let mut colors = vec![usize::MAX; n];
    // The first vertex's color is fixed by symmetry and the count scaled by k.
    colors[0] = 0;
    fn go(g: &Graph, k: usize, v: usize, colors: &mut [usize]) -> u128 {
        if v == colors.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..k {
            if g.neighbors(v).iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                total += go(g, k, v + 1, colors);
            }
        }
        colors[v] = usize::MAX;
        total
    }
    k as u128 * go(g, k, 1, &mut colors)
}

/// Chromatic polynomial by counting proper colorings at `x = 0..=n` and
/// interpolating through the forward differences of those counts. Refuses
/// graphs with more than `cap` vertices.
pub fn exact_by_interpolation(g: &Graph, cap: usize) -> Result<ExactPolynomial> {
    let n = g.order();
    check_cap("interpolation", n, cap)?;
    let mut diffs: Vec<BigInt> =
        (0..=n).map(|k| BigInt::from(count_proper_colorings(g, k))).collect();
    // Newton form: P(x) = Σ_j Δ^j P(0) / j! · <x>_j.
    let mut leading = Vec::with_capacity(n + 1);
    for j in 0..=n {
        leading.push(diffs[0].clone());
        for i in 0..n - j {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.truncate(n - j);
    }
    let mut power = vec![BigRational::zero(); n + 1];
    let mut factorial = BigInt::one();
    for (j, delta) in leading.into_iter().enumerate() {
        if j > 0 {
            factorial *= BigInt::from(j);
        }
        let a = BigRational::new(delta, factorial.clone());
        for (i, s) in stirling_first_row(j).into_iter().enumerate() {
            power[i] += &a * BigRational::from_integer(s);
        }
    }
    let coeffs = power
        .into_iter()
        .enumerate()
        .map(|(k, c)| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::NonIntegral { power: k }) })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactPolynomial::new(coeffs))
}

/// Counts broken-circuit-free edge subsets of `g` by size under `eo`:
/// entry `i` is the number of `i`-edge subsets containing no broken circuit.
/// Refuses graphs with more than `cap` vertices.
pub fn exact_nbc_counts(g: &Graph, eo: &EdgeOrdering, cap: usize) -> Result<Vec<BigUint>> {
    let n = g.order();
    check_cap("nbc-enumeration", n, cap)?;
    if eo.len() != g.size() {
        return Err(Error::LengthMismatch { expected: g.size(), found: eo.len() });
    }
    let mut counts = vec![BigUint::zero(); n.max(1)];
    let mut subset = Vec::new();
    extend_nbc(g, eo, 0, &mut subset, &mut counts);
    Ok(counts)
}

fn extend_nbc(g: &Graph, eo: &EdgeOrdering, next: usize, subset: &mut Vec<usize>, counts: &mut [BigUint]) {
    counts[subset.len()] += 1u32;
    for e in next..g.size() {
        subset.push(e);
        if is_nbc_set(g, eo, subset) {
            extend_nbc(g, eo, e + 1, subset, counts);
        }
        subset.pop();
    }
}

/// True iff `set` is acyclic and contains no broken circuit: no edge `f`
/// outside the set has its endpoints joined inside the set by a path made of
/// edges all larger than `f`.
fn is_nbc_set(g: &Graph, eo: &EdgeOrdering, set: &[usize]) -> bool {
    let n = g.order();
    let mut forest: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    for &e in set {
        let (u, v) = g.edge(e);
        let (ru, rv) = (find(&mut root, u), find(&mut root, v));
        if ru == rv {
            return false;
        }
        root[ru] = rv;
        forest[u].push((v, e));
        forest[v].push((u, e));
    }
    let in_set: Vec<bool> = {
        let mut mark = vec![false; g.size()];
        set.iter().for_each(|&e| mark[e] = true);
        mark
    };
    for f in (0..g.size()).filter(|&f| !in_set[f]) {
        let (a, b) = g.edge(f);
        if find(&mut root, a) != find(&mut root, b) {
            continue;
        }
        // Minimum edge rank on the forest path a -> b.
        let mut stack = vec![(a, usize::MAX, usize::MAX)];
        let mut path_min = None;
        while let Some((x, from, low)) = stack.pop() {
            if x == b {
                path_min = Some(low);
                break;
            }
            for &(y, e) in &forest[x] {
                if y != from {
                    stack.push((y, x, low.min(eo.rank(e))));
                }
            }
        }
        if path_min.expect("endpoints share a component") > eo.rank(f) {
            return false;
        }
    }
    true
}

/// Closed-form chromatic polynomials: wheels (hub included in the order),
/// cycles, complete graphs and trees (paths and stars).
pub fn formula_family(family: &Family) -> Result<ExactPolynomial> {
    let x = ExactPolynomial::monomial(1);
    let sign = |k: usize| BigInt::from(if k.is_multiple_of(2) { 1 } else { -1 });
    match *family {
        Family::Wheel(n) if n >= 4 => {
            // x[(x-2)^{n-1} + (-1)^{n+1}(x-2)]
            let inner = ExactPolynomial::shifted_power(2, n - 1)
                .add(&ExactPolynomial::shifted_power(2, 1).scale(&sign(n + 1)));
            Ok(x.mul(&inner))
        }
        Family::Cycle(n) if n >= 3 => Ok(ExactPolynomial::shifted_power(1, n)
            .add(&ExactPolynomial::shifted_power(1, 1).scale(&sign(n)))),
        Family::Complete(n) if n >= 1 => Ok((0..n)
            .fold(ExactPolynomial::monomial(0), |acc, j| acc.mul(&ExactPolynomial::from_i64(&[-(j as i64), 1])))),
        Family::Path(n) | Family::TreeStar(n) if n >= 1 => {
            Ok(x.mul(&ExactPolynomial::shifted_power(1, n - 1)))
        }
        Family::Kite | Family::Grid3d(..) => Err(Error::InvalidArgument(format!(
            "no closed form for the {} family",
            family.name()
        ))),
        _ => Err(Error::InvalidArgument(format!("{family:?} is below the family minimum"))),
    }
}
