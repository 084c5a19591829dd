//! Report types and number formatting.

use chromest_core::stats::Snapshot;
use chromest_core::{Algorithm, EstimateReport, LogNumber};
use serde::Serialize;

use crate::args::{AlgorithmArg, CapArgs, FamilyName, Format, OracleArg, OrderingArg, VariantArg};

/// Magnitude below which coefficients also carry a plain decimal string.
const DECIMAL_LIMIT_LOG10: f64 = 15.0;

/// Shortest round-trip scientific form; falls back to a log-derived
/// mantissa when the value does not fit in an `f64`.
pub fn scientific(x: LogNumber) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let v = x.to_f64();
    if v.is_finite() && v != 0.0 && v.abs() >= f64::MIN_POSITIVE {
        return format!("{v:e}");
    }
    let l = x.log10_magnitude();
    let exponent = l.floor();
    let mantissa = 10f64.powf(l - exponent);
    let sign = if x.sign() < 0 { "-" } else { "" };
    format!("{sign}{mantissa}e{exponent}")
}

/// Plain decimal for magnitudes below 10^15; values within 1e-9 relative
/// of an integer print as that integer.
pub fn decimal(x: LogNumber) -> Option<String> {
    if x.is_zero() {
        return Some("0".into());
    }
    if x.log10_magnitude() >= DECIMAL_LIMIT_LOG10 {
        return None;
    }
    let v = x.to_f64();
    let r = v.round();
    if (v - r).abs() <= 1e-9 * v.abs().max(1.0) {
        Some(format!("{}", r as i64))
    } else {
        Some(format!("{v}"))
    }
}

/// Compact round-trip form of a float for CSV cells.
pub fn csv_float(v: f64) -> String {
    serde_json::to_string(&v).expect("finite floats serialize")
}

fn finite_log10(x: LogNumber) -> Option<f64> {
    (!x.is_zero()).then(|| x.log10_magnitude())
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSpec {
    pub family: FamilyName,
    pub n: Option<usize>,
    pub p: Option<f64>,
    pub dims: Option<Vec<usize>>,
    pub seed: u64,
}

/// Every setting that influences a report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub input: Option<String>,
    pub generator: Option<GeneratorSpec>,
    pub algorithm: Option<AlgorithmArg>,
    pub variant: Option<VariantArg>,
    pub ordering: Option<OrderingArg>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub window_fraction: Option<f64>,
    pub tolerance: Option<f64>,
    pub oracle: Option<OracleArg>,
    pub caps: Option<CapArgs>,
    pub x_grid: Option<Vec<f64>>,
    pub format: Format,
    pub trace: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphInfo {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientJson {
    pub label: String,
    /// Power of `x` for Whitney coefficients, degree of the falling
    /// factorial for partition counts.
    pub degree: usize,
    pub sign: i8,
    pub log10_magnitude: Option<f64>,
    pub decimal: Option<String>,
    pub scientific: String,
    pub variance: Option<f64>,
    pub variance_log10: Option<f64>,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateJson {
    pub algorithm: AlgorithmArg,
    pub variant: Option<VariantArg>,
    pub ordering: Option<OrderingArg>,
    pub seed: u64,
    pub samples: u64,
    pub workers: usize,
    pub wall_ms: f64,
    pub all_converged: bool,
    pub coefficients: Vec<CoefficientJson>,
    /// Estimated chromatic coefficients, highest power first.
    pub polynomial: Vec<String>,
    /// Per power (highest first): the basis conversion lost precision to
    /// cancellation. Present for the falling-factorial sampler only.
    pub cancellation: Option<Vec<bool>>,
}

impl EstimateJson {
    pub fn new(report: &EstimateReport) -> Self {
        let n = report.order;
        let coefficients = report
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (label, degree, value) = match report.algorithm {
                    Algorithm::Bc => (format!("b_{i}"), n - i, if i % 2 == 0 { c.mean } else { -c.mean }),
                    Algorithm::Ff => (format!("p_{}", n - i), n - i, c.mean),
                };
                CoefficientJson {
                    label,
                    degree,
                    sign: value.sign(),
                    log10_magnitude: finite_log10(value),
                    decimal: decimal(value),
                    scientific: scientific(value),
                    variance: Some(c.variance.to_f64()).filter(|v| v.is_finite()),
                    variance_log10: finite_log10(c.variance),
                    converged: c.converged,
                }
            })
            .collect();
        let polynomial = report.power_coefficients().iter().rev().map(|&c| scientific(c)).collect();
        EstimateJson {
            algorithm: match report.algorithm {
                Algorithm::Bc => AlgorithmArg::Bc,
                Algorithm::Ff => AlgorithmArg::Ff,
            },
            variant: report.variant.map(|v| match v {
                chromest_core::Variant::Plain => VariantArg::Plain,
                chromest_core::Variant::Improved => VariantArg::Improved,
            }),
            ordering: report.ordering.map(|o| match o {
                chromest_core::OrderingKind::Peo => OrderingArg::Peo,
                chromest_core::OrderingKind::Input => OrderingArg::Input,
                chromest_core::OrderingKind::Random => OrderingArg::Random,
            }),
            seed: report.options.seed,
            samples: report.samples,
            workers: report.options.workers,
            wall_ms: report.wall.as_secs_f64() * 1e3,
            all_converged: report.all_converged(),
            coefficients,
            polynomial,
            cancellation: report.power_basis.as_ref().map(|b| b.cancellation.iter().rev().copied().collect()),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,degree,sign,log10_magnitude,decimal,variance,converged\n");
        for c in &self.coefficients {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                c.label,
                c.degree,
                c.sign,
                c.log10_magnitude.map(csv_float).unwrap_or_default(),
                c.decimal.clone().unwrap_or_default(),
                c.variance.map(csv_float).unwrap_or_default(),
                c.converged
            ));
        }
        out
    }
}

/// Running means as CSV: one row per snapshot, one column per coefficient.
pub fn trace_csv(report: &EstimateReport) -> String {
    let n = report.order;
    let labels: Vec<String> = (0..report.coefficients.len())
        .map(|i| match report.algorithm {
            Algorithm::Bc => format!("b_{i}"),
            Algorithm::Ff => format!("p_{}", n - i),
        })
        .collect();
    let mut out = format!("samples,{}\n", labels.join(","));
    let histories: Vec<&[Snapshot]> = report.coefficients.iter().map(|c| c.history.as_slice()).collect();
    let rows = histories.iter().map(|h| h.len()).min().unwrap_or(0);
    for r in 0..rows {
        let values: Vec<String> = histories.iter().map(|h| scientific(h[r].mean)).collect();
        out.push_str(&format!("{},{}\n", histories[0][r].count, values.join(",")));
    }
    out
}
