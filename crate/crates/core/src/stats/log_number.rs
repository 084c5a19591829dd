use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::ToPrimitive;

/// A signed real stored as `sign · exp(ln)`.
///
/// `sign` is -1, 0 or +1; zero ignores `ln`. Chromatic coefficients of
/// large graphs overflow `f64` long before their logarithms lose precision,
/// so every estimator works in this representation.
#[derive(Clone, Copy)]
pub struct LogNumber {
    sign: i8,
    ln: f64,
}

impl LogNumber {
    pub const ZERO: LogNumber = LogNumber { sign: 0, ln: f64::NEG_INFINITY };
    pub const ONE: LogNumber = LogNumber { sign: 1, ln: 0.0 };

    /// `sign · exp(ln)`. Panics if `sign` is nonzero and `ln` is not finite.
    pub fn from_parts(sign: i8, ln: f64) -> Self {
        match sign.signum() {
            0 => Self::ZERO,
            s => {
                assert!(ln.is_finite(), "log magnitude must be finite, got {ln}");
                LogNumber { sign: s, ln }
            }
        }
    }

    /// The positive number `exp(ln)`.
    pub fn from_ln(ln: f64) -> Self {
        Self::from_parts(1, ln)
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "cannot represent {x}");
        if x == 0.0 {
            Self::ZERO
        } else {
            LogNumber { sign: if x > 0.0 { 1 } else { -1 }, ln: x.abs().ln() }
        }
    }

    pub fn from_u64(x: u64) -> Self {
        if x == 0 {
            Self::ZERO
        } else {
            LogNumber { sign: 1, ln: (x as f64).ln() }
        }
    }

    pub fn from_biguint(x: &BigUint) -> Self {
        let bits = x.bits();
        if bits == 0 {
            return Self::ZERO;
        }
        let ln = if bits <= 1000 {
            x.to_f64().expect("fits in f64").ln()
        } else {
            let shift = bits - 64;
            let top = (x >> shift).to_u64().expect("64 leading bits");
            (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
        };
        LogNumber { sign: 1, ln }
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        let magnitude = Self::from_biguint(x.magnitude());
        match x.sign() {
            Sign::Minus => -magnitude,
            _ => magnitude,
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn ln_magnitude(self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.ln
        }
    }

    pub fn log10_magnitude(self) -> f64 {
        self.ln_magnitude() / std::f64::consts::LN_10
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// Nearest `f64`; saturates to ±inf when out of range.
    pub fn to_f64(self) -> f64 {
        f64::from(self.sign) * self.ln.exp()
    }

    pub fn abs(self) -> Self {
        LogNumber { sign: self.sign.abs(), ln: self.ln }
    }

    pub fn powi(self, k: i32) -> Self {
        if k == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if self.sign < 0 && k % 2 != 0 { -1 } else { 1 };
        LogNumber { sign, ln: self.ln * f64::from(k) }
    }

    /// Relative difference `|self - other| / |other|` (infinite when `other`
    /// is zero and `self` is not).
    pub fn rel_diff(self, other: LogNumber) -> f64 {
        let diff = (self - other).abs();
        if diff.is_zero() {
            0.0
        } else if other.is_zero() {
            f64::INFINITY
        } else {
            (diff.ln - other.ln).exp()
        }
    }
}

/// Sign-aware log-sum-exp.
pub fn log_add(a: LogNumber, b: LogNumber) -> LogNumber {
    if a.sign == 0 {
        return b;
    }
    if b.sign == 0 {
        return a;
    }
    let (hi, lo) = if a.ln >= b.ln { (a, b) } else { (b, a) };
    let d = lo.ln - hi.ln;
    if hi.sign == lo.sign {
        LogNumber { sign: hi.sign, ln: hi.ln + d.exp().ln_1p() }
    } else if d == 0.0 {
        LogNumber::ZERO
    } else {
        // ln(1 - e^d) for d < 0.
        LogNumber { sign: hi.sign, ln: hi.ln + (-d.exp_m1()).ln() }
    }
}

impl Default for LogNumber {
    fn default() -> Self {
        Self::ZERO
    }
}

impl PartialEq for LogNumber {
    fn eq(&self, other: &Self) -> bool {
        self.sign == other.sign && (self.sign == 0 || self.ln == other.ln)
    }
}

impl PartialOrd for LogNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.ln.partial_cmp(&other.ln),
                _ => other.ln.partial_cmp(&self.ln),
            },
            ord => Some(ord),
        }
    }
}

impl fmt::Debug for LogNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(f, "{}exp({})", if s < 0 { "-" } else { "" }, self.ln),
        }
    }
}

impl fmt::Display for LogNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l10 = self.log10_magnitude();
        if self.sign == 0 {
            write!(f, "0")
        } else if l10.abs() < 15.0 {
            write!(f, "{}", self.to_f64())
        } else {
            let exp = l10.floor();
            let mantissa = 10f64.powf(l10 - exp) * f64::from(self.sign);
            write!(f, "{mantissa:.6}e{exp}")
        }
    }
}

impl Neg for LogNumber {
    type Output = LogNumber;
    fn neg(self) -> LogNumber {
        LogNumber { sign: -self.sign, ln: self.ln }
    }
}

impl Add for LogNumber {
    type Output = LogNumber;
    fn add(self, rhs: LogNumber) -> LogNumber {
        log_add(self, rhs)
    }
}

impl AddAssign for LogNumber {
    fn add_assign(&mut self, rhs: LogNumber) {
        *self = log_add(*self, rhs);
    }
}

impl Sub for LogNumber {
    type Output = LogNumber;
    fn sub(self, rhs: LogNumber) -> LogNumber {
        log_add(self, -rhs)
    }
}

impl Mul for LogNumber {
    type Output = LogNumber;
    fn mul(self, rhs: LogNumber) -> LogNumber {
        if self.sign == 0 || rhs.sign == 0 {
            LogNumber::ZERO
        } else {
            LogNumber { sign: self.sign * rhs.sign, ln: self.ln + rhs.ln }
        }
    }
}

impl Div for LogNumber {
    type Output = LogNumber;
    /// Panics on division by zero.
    fn div(self, rhs: LogNumber) -> LogNumber {
        assert!(rhs.sign != 0, "LogNumber division by zero");
        if self.sign == 0 {
            LogNumber::ZERO
        } else {
            LogNumber { sign: self.sign * rhs.sign, ln: self.ln - rhs.ln }
        }
    }
}

impl std::iter::Sum for LogNumber {
    fn sum<I: Iterator<Item = LogNumber>>(iter: I) -> LogNumber {
        iter.fold(LogNumber::ZERO, log_add)
    }
}

/// Table of `ln k!` for `k = 0..=max`.
#[derive(Debug, Clone)]
pub struct LnFactorials {
    table: Vec<f64>,
}

impl LnFactorials {
    pub fn new(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        table.push(0.0);
        let mut acc = 0.0f64;
        for k in 1..=max {
            acc += (k as f64).ln();
            table.push(acc);
        }
        LnFactorials { table }
    }

    /// `ln k!`. Panics past the table end.
    pub fn get(&self, k: usize) -> f64 {
        self.table[k]
    }

    pub fn max(&self) -> usize {
        self.table.len() - 1
    }

    /// `ln C(n, k)`.
    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        self.get(n) - self.get(k) - self.get(n - k)
    }
}
