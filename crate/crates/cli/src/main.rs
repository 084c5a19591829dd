mod args;
mod report;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use chromest_core::exact::{exact_by_interpolation, exact_deletion_contraction, exact_nbc_counts, formula_family};
use chromest_core::graph::{gen_er, gen_named, read_graph_file, write_edge_list, Family};
use chromest_core::stats::{arc_error, rel_eval_error};
use chromest_core::{
    bc_estimate, ff_estimate, resolve_ordering, EstimateOptions, EstimateReport, ExactPolynomial, Graph,
};
use clap::Parser;
use serde::Serialize;

use args::*;
use report::*;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Cap(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Cap(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Cap(m) => m,
        }
    }
}

impl From<chromest_core::Error> for CliError {
    fn from(e: chromest_core::Error) -> Self {
        match e {
            chromest_core::Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            chromest_core::Error::InvalidArgument(_) => CliError::Usage(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Estimate(a) => cmd_estimate(&a),
        Command::Exact(a) => cmd_exact(&a),
        Command::Compare(a) => cmd_compare(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("chromest: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn family_of(spec: &FamilyArgs) -> CliResult<Option<Family>> {
    let Some(name) = spec.family else { return Ok(None) };
    let n = || spec.n.ok_or_else(|| CliError::Usage(format!("--family {name:?} needs --n").to_lowercase()));
    Ok(Some(match name {
        FamilyName::Kite => Family::Kite,
        FamilyName::Cycle => Family::Cycle(n()?),
        FamilyName::Path => Family::Path(n()?),
        FamilyName::Wheel => Family::Wheel(n()?),
        FamilyName::Complete => Family::Complete(n()?),
        FamilyName::Star => Family::TreeStar(n()?),
        FamilyName::Grid3d => match spec.dims.as_deref() {
            Some(&[a, b, c]) => Family::Grid3d(a, b, c),
            _ => return Err(CliError::Usage("--family grid3d needs --dims A,B,C".into())),
        },
        FamilyName::Er => return Ok(None),
    }))
}

fn generate(spec: &FamilyArgs, seed: u64) -> CliResult<Graph> {
    if spec.family == Some(FamilyName::Er) {
        let n = spec.n.ok_or_else(|| CliError::Usage("--family er needs --n".into()))?;
        let p = spec.p.ok_or_else(|| CliError::Usage("--family er needs --p".into()))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(CliError::Usage(format!("--p must lie in [0, 1], got {p}")));
        }
        return Ok(gen_er(n, p, seed)?);
    }
    let family = family_of(spec)?.ok_or_else(|| CliError::Usage("--family is required".into()))?;
    Ok(gen_named(&family)?)
}

fn load_graph(source: &SourceArgs) -> CliResult<Graph> {
    match &source.input {
        Some(path) => {
            let parsed = read_graph_file(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            if parsed.duplicates > 0 {
                eprintln!("chromest: collapsed {} duplicate edge(s)", parsed.duplicates);
            }
            Ok(parsed.graph)
        }
        None if source.family.family.is_some() => generate(&source.family, source.graph_seed),
        None => Err(CliError::Usage("give an input file or --family".into())),
    }
}

fn base_config(command: &'static str, source: &SourceArgs, format: Format) -> RunConfig {
    RunConfig {
        command,
        input: source.input.as_ref().map(|p| p.display().to_string()),
        generator: source.family.family.map(|family| GeneratorSpec {
            family,
            n: source.family.n,
            p: source.family.p,
            dims: source.family.dims.clone(),
            seed: source.graph_seed,
        }),
        algorithm: None,
        variant: None,
        ordering: None,
        samples: None,
        seed: None,
        workers: None,
        window_fraction: None,
        tolerance: None,
        oracle: None,
        caps: None,
        x_grid: None,
        format,
        trace: None,
    }
}

fn with_estimator(mut config: RunConfig, e: &EstimatorArgs) -> RunConfig {
    config.algorithm = Some(e.alg);
    if e.alg == AlgorithmArg::Bc {
        config.variant = Some(e.variant);
        config.ordering = Some(e.ordering);
    }
    config.samples = Some(e.samples);
    config.seed = Some(e.seed);
    config.workers = Some(e.workers);
    config.window_fraction = Some(e.window);
    config.tolerance = Some(e.tolerance);
    config.trace = e.trace.as_ref().map(|p| p.display().to_string());
    config
}

fn graph_info(g: &Graph) -> GraphInfo {
    GraphInfo { n: g.order(), m: g.size(), connected: g.is_connected() }
}

fn emit(output: &OutputArgs, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn cmd_gen(a: &GenArgs) -> CliResult<()> {
    let g = generate(&a.family, a.seed)?;
    let text = write_edge_list(&g);
    let summary = format!("n={} m={} connected={}", g.order(), g.size(), g.is_connected());
    match &a.out {
        Some(path) => {
            fs::write(path, text)?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn run_estimator(g: &Graph, e: &EstimatorArgs) -> CliResult<EstimateReport> {
    if !(0.0..=1.0).contains(&e.window) || e.window == 0.0 {
        return Err(CliError::Usage(format!("--window must lie in (0, 1], got {}", e.window)));
    }
    if e.tolerance.is_nan() || e.tolerance < 0.0 {
        return Err(CliError::Usage(format!("--tolerance must be non-negative, got {}", e.tolerance)));
    }
    let mut opts = EstimateOptions::new(e.samples, e.seed).with_workers(e.workers);
    opts.window_fraction = e.window;
    opts.tolerance = e.tolerance;
    let report = match e.alg {
        AlgorithmArg::Bc => bc_estimate(g, e.variant.into(), e.ordering.into(), &opts)?,
        AlgorithmArg::Ff => ff_estimate(g, &opts)?,
    };
    if let Some(path) = &e.trace {
        fs::write(path, trace_csv(&report))?;
    }
    Ok(report)
}

#[derive(Serialize)]
struct EstimateOutput {
    config: RunConfig,
    graph: GraphInfo,
    estimate: EstimateJson,
}

fn cmd_estimate(a: &EstimateArgs) -> CliResult<()> {
    let g = load_graph(&a.source)?;
    let report = run_estimator(&g, &a.estimator)?;
    let estimate = EstimateJson::new(&report);
    let text = match a.output.format {
        Format::Json => to_json(&EstimateOutput {
            config: with_estimator(base_config("estimate", &a.source, a.output.format), &a.estimator),
            graph: graph_info(&g),
            estimate,
        }),
        Format::Csv => estimate.to_csv(),
    };
    emit(&a.output, &text)
}

fn exact_polynomial(
    g: &Graph,
    source: &SourceArgs,
    oracle: OracleArg,
    caps: &CapArgs,
    ordering: OrderingArg,
    seed: u64,
) -> CliResult<ExactPolynomial> {
    Ok(match oracle {
        OracleArg::Dc => exact_deletion_contraction(g, caps.dc_cap)?,
        OracleArg::Interp => exact_by_interpolation(g, caps.interp_cap)?,
        OracleArg::Nbc => {
            let eo = resolve_ordering(g, ordering.into(), seed);
            ExactPolynomial::from_whitney(&exact_nbc_counts(g, &eo, caps.nbc_cap)?)
        }
        OracleArg::Formula => {
            let family = family_of(&source.family)?
                .ok_or_else(|| CliError::Usage("--oracle formula needs a named --family".into()))?;
            formula_family(&family)?
        }
    })
}

#[derive(Serialize)]
struct ExactOutput {
    config: RunConfig,
    graph: GraphInfo,
    oracle: OracleArg,
    /// Signed coefficients, highest power first.
    coefficients: Vec<String>,
    polynomial: String,
}

fn cmd_exact(a: &ExactArgs) -> CliResult<()> {
    let g = load_graph(&a.source)?;
    let poly = exact_polynomial(&g, &a.source, a.oracle, &a.caps, a.ordering, a.seed)?;
    let coefficients = descending_strings(&poly, g.order());
    let text = match a.output.format {
        Format::Json => {
            let mut config = base_config("exact", &a.source, a.output.format);
            config.oracle = Some(a.oracle);
            config.caps = Some(a.caps);
            if a.oracle == OracleArg::Nbc {
                config.ordering = Some(a.ordering);
                config.seed = Some(a.seed);
            }
            to_json(&ExactOutput { config, graph: graph_info(&g), oracle: a.oracle, coefficients, polynomial: poly.to_string() })
        }
        Format::Csv => {
            let n = g.order();
            let mut out = String::from("power,coefficient\n");
            for (i, c) in coefficients.iter().enumerate() {
                out.push_str(&format!("{},{c}\n", n - i));
            }
            out
        }
    };
    emit(&a.output, &text)
}

/// Coefficients of `x^n .. x^0` as decimal strings.
fn descending_strings(poly: &ExactPolynomial, n: usize) -> Vec<String> {
    (0..=n).rev().map(|k| poly.coeff(k).to_string()).collect()
}

#[derive(Serialize)]
struct ArcJson {
    mean: f64,
    compared: usize,
    skipped_zero: usize,
}

#[derive(Serialize)]
struct EvalErrorJson {
    x: f64,
    /// Absent when the exact polynomial vanishes at `x`.
    rel_error: Option<f64>,
}

#[derive(Serialize)]
struct CoefficientErrorJson {
    power: usize,
    exact: String,
    estimate: String,
    /// Absent when the exact coefficient is zero.
    rel_error: Option<f64>,
}

#[derive(Serialize)]
struct CompareOutput {
    config: RunConfig,
    graph: GraphInfo,
    oracle: OracleArg,
    exact: Vec<String>,
    estimate: EstimateJson,
    arc_error: ArcJson,
    eval_errors: Vec<EvalErrorJson>,
    coefficient_errors: Vec<CoefficientErrorJson>,
}

fn default_oracle(source: &SourceArgs, g: &Graph, caps: &CapArgs) -> CliResult<OracleArg> {
    if let Ok(Some(family)) = family_of(&source.family) {
        if formula_family(&family).is_ok() {
            return Ok(OracleArg::Formula);
        }
    }
    if g.order() <= caps.dc_cap {
        return Ok(OracleArg::Dc);
    }
    Err(CliError::Cap(format!(
        "no exact reference: {} vertices exceed the deletion-contraction cap {} and the graph has no closed form",
        g.order(),
        caps.dc_cap
    )))
}

fn cmd_compare(a: &CompareArgs) -> CliResult<()> {
    let g = load_graph(&a.source)?;
    if a.x_grid.iter().any(|&x| x.is_nan() || x <= 0.0) {
        return Err(CliError::Usage("--x-grid values must be positive".into()));
    }
    let oracle = match a.oracle {
        Some(o) => o,
        None => default_oracle(&a.source, &g, &a.caps)?,
    };
    // Exact reference first so an unavailable oracle fails before sampling.
    let exact = exact_polynomial(&g, &a.source, oracle, &a.caps, a.estimator.ordering, a.estimator.seed)?;
    let report = run_estimator(&g, &a.estimator)?;
    let approx = report.power_coefficients();
    let truth = exact.to_log();
    let mut truth_padded = truth.clone();
    truth_padded.resize(approx.len(), chromest_core::LogNumber::ZERO);
    let arc = arc_error(&truth_padded, &approx)?;
    let eval_errors = a
        .x_grid
        .iter()
        .map(|&x| match rel_eval_error(&exact, &approx, x) {
            Ok(err) => Ok(EvalErrorJson { x, rel_error: Some(err) }),
            Err(chromest_core::Error::ZeroDenominator) => Ok(EvalErrorJson { x, rel_error: None }),
            Err(e) => Err(CliError::from(e)),
        })
        .collect::<CliResult<Vec<_>>>()?;
    let n = g.order();
    let coefficient_errors = (0..=n)
        .rev()
        .map(|k| {
            let t = truth_padded[k];
            CoefficientErrorJson {
                power: k,
                exact: exact.coeff(k).to_string(),
                estimate: scientific(approx[k]),
                rel_error: (!t.is_zero()).then(|| approx[k].rel_diff(t)),
            }
        })
        .collect::<Vec<_>>();
    let text = match a.output.format {
        Format::Json => {
            let mut config = with_estimator(base_config("compare", &a.source, a.output.format), &a.estimator);
            config.oracle = Some(oracle);
            config.caps = Some(a.caps);
            config.x_grid = Some(a.x_grid.clone());
            to_json(&CompareOutput {
                config,
                graph: graph_info(&g),
                oracle,
                exact: descending_strings(&exact, n),
                estimate: EstimateJson::new(&report),
                arc_error: ArcJson { mean: arc.mean, compared: arc.compared, skipped_zero: arc.skipped },
                eval_errors,
                coefficient_errors,
            })
        }
        Format::Csv => {
            let opt = |v: Option<f64>| v.map(csv_float).unwrap_or_default();
            let mut out = String::from("metric,key,value\n");
            out.push_str(&format!("arc_error,,{}\n", csv_float(arc.mean)));
            for e in &eval_errors {
                out.push_str(&format!("eval_error,{},{}\n", e.x, opt(e.rel_error)));
            }
            for c in &coefficient_errors {
                out.push_str(&format!("coefficient_error,{},{}\n", c.power, opt(c.rel_error)));
            }
            out
        }
    };
    emit(&a.output, &text)
}
