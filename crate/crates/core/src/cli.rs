//! Command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | verification failure (methods disagree, round trip fails) |
//! | 2 | usage or expression syntax error |
//! | 3 | expansion failure (pole at the center, irrational expansion, numeric error) |
//! | 4 | `f'(z0) = 0` |
//! | 5 | insufficient order, or too little data for a radius estimate |

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::expr::Expression;
use crate::inversion::{
    compare_methods, estimate_radius, ComparisonReport, InversionError, InversionResult,
    MethodKind, DEFAULT_RADIUS_WINDOW, MIN_RADIUS_WINDOW,
};
use crate::numeric::{Coefficient, NumericError, Rational};
use crate::parser::{parse, ParseError};
use crate::series::{SeriesError, TruncatedSeries};
use crate::taylor::{taylor_series, Mode, TaylorError};

#[derive(Debug, Parser)]
#[command(
    name = "revseries",
    version,
    about = "Invert analytic functions as truncated power series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the inverse series with each requested method
    Invert(RunArgs),
    /// Check that the requested methods produce identical coefficients
    Compare(RunArgs),
    /// Estimate the radius of convergence of the inverse series
    Radius(RunArgs),
    /// Verify g(f(z)) = z for each requested method
    Roundtrip(RunArgs),
    /// Time each method over a sweep of orders
    Bench(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Expression in z, e.g. "exp(z)-1"
    #[arg(long)]
    expr: String,
    /// Expansion point z0 (integer, p/q or finite decimal)
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    center: String,
    /// Number of inverse coefficients
    #[arg(long)]
    order: usize,
    /// Comma-separated list of new, lb, newton, or all
    #[arg(long)]
    method: Option<String>,
    /// Use 64-bit float coefficients instead of exact rationals
    #[arg(long)]
    float: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Number of trailing coefficients used by the radius estimate
    #[arg(long)]
    radius_window: Option<usize>,
    /// Emit the payload only
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub expr_text: String,
    pub center: Rational,
    pub order: usize,
    /// Requested order, duplicates removed.
    pub methods: Vec<MethodKind>,
    pub mode: Mode,
    pub output_format: OutputFormat,
    pub radius_window: Option<usize>,
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Subcmd {
    Invert,
    Compare,
    Radius,
    Roundtrip,
    Bench,
}

impl Subcmd {
    fn default_methods(self) -> Vec<MethodKind> {
        match self {
            Subcmd::Invert | Subcmd::Radius => vec![MethodKind::NewFormula],
            Subcmd::Compare | Subcmd::Roundtrip | Subcmd::Bench => MethodKind::ALL.to_vec(),
        }
    }
}

/// A failure with its exit code and a stable machine-readable name.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub exit_code: i32,
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            exit_code: 2,
            code: "UsageError",
            message: message.into(),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        let code = match e {
            ParseError::SyntaxError { .. } => "SyntaxError",
            ParseError::UnknownFunction { .. } => "UnknownFunction",
            ParseError::NonIntegerExponent { .. } => "NonIntegerExponent",
        };
        CliError {
            exit_code: 2,
            code,
            message: e.to_string(),
        }
    }
}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        CliError {
            exit_code: 3,
            code: "NumericError",
            message: e.to_string(),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError {
            exit_code: 3,
            code: "SeriesError",
            message: e.to_string(),
        }
    }
}

impl From<TaylorError> for CliError {
    fn from(e: TaylorError) -> Self {
        let code = match &e {
            TaylorError::PoleAtCenter { .. } => "PoleAtCenter",
            TaylorError::NonRationalExpansion { .. } => "NonRationalExpansion",
            TaylorError::OutsideRealDomain { .. } => "OutsideRealDomain",
            TaylorError::Series(_) => "SeriesError",
            TaylorError::Numeric(_) => "NumericError",
        };
        CliError {
            exit_code: 3,
            code,
            message: e.to_string(),
        }
    }
}

impl From<InversionError> for CliError {
    fn from(e: InversionError) -> Self {
        let (exit_code, code) = match e.root() {
            InversionError::DerivativeVanishesAtCenter { .. } => (4, "DerivativeVanishesAtCenter"),
            InversionError::InsufficientOrder { .. } => (5, "InsufficientOrder"),
            InversionError::InsufficientData => (5, "InsufficientData"),
            InversionError::ZeroOrder
            | InversionError::TooFewMethods
            | InversionError::InvalidWindow { .. } => (2, "UsageError"),
            InversionError::Series(_) => (3, "SeriesError"),
            InversionError::Numeric(_) => (3, "NumericError"),
            InversionError::Internal(_) | InversionError::MethodFailed { .. } => {
                (1, "InternalError")
            }
        };
        CliError {
            exit_code,
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `new,lb`, `all`, and so on.
pub fn parse_methods(text: &str) -> Result<Vec<MethodKind>, String> {
    let mut methods = Vec::new();
    for item in text.split(',').map(str::trim) {
        let expanded: Vec<MethodKind> = if item == "all" {
            MethodKind::ALL.to_vec()
        } else {
            vec![item.parse()?]
        };
        for m in expanded {
            if !methods.contains(&m) {
                methods.push(m);
            }
        }
    }
    Ok(methods)
}

impl RunConfig {
    fn from_args(args: RunArgs, subcmd: Subcmd) -> Result<Self, CliError> {
        let center = args.center.parse::<Rational>().map_err(|_| {
            CliError::usage(format!(
                "--center {:?} is not a rational number",
                args.center
            ))
        })?;
        let methods = match &args.method {
            Some(text) => parse_methods(text).map_err(CliError::usage)?,
            None => subcmd.default_methods(),
        };
        let config = RunConfig {
            expr_text: args.expr,
            center,
            order: args.order,
            methods,
            mode: if args.float { Mode::Float } else { Mode::Exact },
            output_format: args.format,
            radius_window: args.radius_window,
            quiet: args.quiet,
        };
        config.validate(subcmd)?;
        Ok(config)
    }

    fn validate(&self, subcmd: Subcmd) -> Result<(), CliError> {
        if self.order < 1 {
            return Err(CliError::usage("--order must be at least 1"));
        }
        if self.methods.is_empty() {
            return Err(CliError::usage("at least one method is required"));
        }
        if subcmd == Subcmd::Compare && self.methods.len() < 2 {
            return Err(CliError::usage("compare needs at least two methods"));
        }
        if let Some(w) = self.radius_window {
            if w < MIN_RADIUS_WINDOW {
                return Err(CliError::usage(format!(
                    "--radius-window must be at least {MIN_RADIUS_WINDOW}"
                )));
            }
        }
        Ok(())
    }

    fn expand(&self) -> Result<(Expression, TruncatedSeries), CliError> {
        let expr = parse(&self.expr_text)?;
        let f_series = taylor_series(&expr, &self.center, self.order, self.mode)?;
        Ok((expr, f_series))
    }

    fn header(&self, expr: &Expression, f_series: &TruncatedSeries) -> String {
        let f_prime = f_series
            .coeff(1)
            .map_or_else(|| "?".to_string(), ToString::to_string);
        format!(
            "# f(z) = {expr}, z0 = {}, u0 = {}, f'(z0) = {f_prime}, order {}\n",
            f_series.center(),
            f_series.constant_term(),
            self.order
        )
    }
}

fn coefficient_list(coeffs: &[Coefficient]) -> String {
    let items: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn coefficient_csv<'a>(
    rows: impl Iterator<Item = (MethodKind, &'a [Coefficient])>,
    exact: bool,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::usage(e.to_string());
    if exact {
        w.write_record(["method", "index", "numerator", "denominator"])
            .map_err(csv_err)?;
    } else {
        w.write_record(["method", "index", "value"])
            .map_err(csv_err)?;
    }
    for (method, coeffs) in rows {
        for (k, c) in coeffs.iter().enumerate() {
            let mut record = vec![method.name().to_string(), k.to_string()];
            match c {
                Coefficient::Rational(r) => {
                    record.push(r.numer().to_string());
                    record.push(r.denom().to_string());
                }
                Coefficient::Float(x) => record.push(x.to_string()),
            }
            w.write_record(&record).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Output of a successful (or verification-failed) command.
struct Rendered {
    exit_code: i32,
    stdout: String,
}

fn cmd_invert(config: &RunConfig) -> Result<Rendered, CliError> {
    let (expr, f_series) = config.expand()?;
    let mut results: Vec<InversionResult> = Vec::new();
    for &m in &config.methods {
        let mut result = m.invert(&f_series, config.order)?;
        if let Some(w) = config.radius_window {
            result.attach_radius_estimate(w)?;
        }
        results.push(result);
    }
    let stdout = match config.output_format {
        OutputFormat::Json => to_json(&results),
        OutputFormat::Csv => coefficient_csv(
            results.iter().map(|r| (r.method, r.coeffs())),
            f_series.is_exact(),
        )?,
        OutputFormat::Text => {
            let mut out = String::new();
            if !config.quiet {
                out.push_str(&config.header(&expr, &f_series));
            }
            for r in &results {
                writeln!(out, "{}: {}", r.method, coefficient_list(r.coeffs())).unwrap();
                if let (Some(w), false) = (config.radius_window, config.quiet) {
                    match r.radius_estimate {
                        Some(est) => {
                            writeln!(out, "# radius estimate (window {w}): {est}").unwrap()
                        }
                        None => writeln!(out, "# radius estimate (window {w}): insufficient data")
                            .unwrap(),
                    }
                }
            }
            out
        }
    };
    Ok(Rendered {
        exit_code: 0,
        stdout,
    })
}

fn render_report(
    config: &RunConfig,
    report: &ComparisonReport,
    header: &str,
    exact: bool,
) -> Result<String, CliError> {
    Ok(match config.output_format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => coefficient_csv(
            report.coefficients.iter().map(|(m, c)| (*m, c.as_slice())),
            exact,
        )?,
        OutputFormat::Text => {
            let mut out = String::new();
            if !config.quiet {
                out.push_str(header);
            }
            for (m, coeffs) in &report.coefficients {
                writeln!(out, "{m}: {}", coefficient_list(coeffs)).unwrap();
            }
            writeln!(out, "agreement: {}", report.agreement).unwrap();
            match report.first_divergence {
                Some(k) => writeln!(out, "first_divergence: {k}").unwrap(),
                None => writeln!(out, "first_divergence: none").unwrap(),
            }
            if let Some(d) = report.max_abs_diff {
                writeln!(out, "max_abs_diff: {d:e}").unwrap();
            }
            out
        }
    })
}

fn cmd_compare(config: &RunConfig) -> Result<Rendered, CliError> {
    let (expr, f_series) = config.expand()?;
    let methods: BTreeSet<MethodKind> = config.methods.iter().copied().collect();
    let report = compare_methods(&f_series, config.order, &methods)?;
    let header = config.header(&expr, &f_series);
    let stdout = render_report(config, &report, &header, f_series.is_exact())?;
    Ok(Rendered {
        exit_code: if report.agreement { 0 } else { 1 },
        stdout,
    })
}

#[derive(Serialize)]
struct RadiusOutput {
    method: &'static str,
    order: usize,
    window: usize,
    radius_estimate: f64,
}

fn cmd_radius(config: &RunConfig) -> Result<Rendered, CliError> {
    let (expr, f_series) = config.expand()?;
    let method = config.methods[0];
    let window = config.radius_window.unwrap_or(DEFAULT_RADIUS_WINDOW);
    let result = method.invert(&f_series, config.order)?;
    let estimate = estimate_radius(&result.series, window)?;
    let payload = RadiusOutput {
        method: method.name(),
        order: config.order,
        window,
        radius_estimate: estimate,
    };
    let stdout = match config.output_format {
        OutputFormat::Json => to_json(&payload),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(&payload)
                .map_err(|e| CliError::usage(e.to_string()))?;
            String::from_utf8(w.into_inner().map_err(|e| CliError::usage(e.to_string()))?)
                .expect("utf-8")
        }
        OutputFormat::Text if config.quiet => format!("{estimate}\n"),
        OutputFormat::Text => format!(
            "{}radius estimate ({}, window {window}): {estimate}\n",
            config.header(&expr, &f_series),
            method
        ),
    };
    Ok(Rendered {
        exit_code: 0,
        stdout,
    })
}

#[derive(Serialize)]
struct RoundTripRow {
    method: &'static str,
    passed: bool,
    first_failure: Option<usize>,
}

#[derive(Serialize)]
struct RoundTripOutput {
    order: usize,
    results: Vec<RoundTripRow>,
}

fn cmd_roundtrip(config: &RunConfig) -> Result<Rendered, CliError> {
    let (expr, f_series) = config.expand()?;
    let mut rows = Vec::new();
    for &m in &config.methods {
        let g = m.invert(&f_series, config.order)?;
        let defect = g.round_trip_defect(&f_series)?;
        rows.push(RoundTripRow {
            method: m.name(),
            passed: defect.is_none(),
            first_failure: defect,
        });
    }
    let all_passed = rows.iter().all(|r| r.passed);
    let payload = RoundTripOutput {
        order: config.order,
        results: rows,
    };
    let stdout = match config.output_format {
        OutputFormat::Json => to_json(&payload),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &payload.results {
                w.serialize(row)
                    .map_err(|e| CliError::usage(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::usage(e.to_string()))?)
                .expect("utf-8")
        }
        OutputFormat::Text => {
            let mut out = String::new();
            if !config.quiet {
                out.push_str(&config.header(&expr, &f_series));
            }
            for row in &payload.results {
                match row.first_failure {
                    None => writeln!(out, "{}: ok", row.method).unwrap(),
                    Some(k) => writeln!(out, "{}: FAILED at order {k}", row.method).unwrap(),
                }
            }
            out
        }
    };
    Ok(Rendered {
        exit_code: if all_passed { 0 } else { 1 },
        stdout,
    })
}

#[derive(Serialize)]
struct BenchRow {
    order: usize,
    method: &'static str,
    micros: u128,
}

/// Orders 1, 2, 4, ... below `max`, then `max` itself.
fn bench_orders(max: usize) -> Vec<usize> {
    let mut orders: Vec<usize> = std::iter::successors(Some(1usize), |n| n.checked_mul(2))
        .take_while(|&n| n < max)
        .collect();
    orders.push(max);
    orders
}

fn cmd_bench(config: &RunConfig) -> Result<Rendered, CliError> {
    let (_, f_series) = config.expand()?;
    let mut rows = Vec::new();
    for order in bench_orders(config.order) {
        let truncated = f_series.truncate(order);
        for &m in &config.methods {
            let start = Instant::now();
            m.invert(&truncated, order)?;
            rows.push(BenchRow {
                order,
                method: m.name(),
                micros: start.elapsed().as_micros(),
            });
        }
    }
    let stdout = match config.output_format {
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row)
                    .map_err(|e| CliError::usage(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::usage(e.to_string()))?)
                .expect("utf-8")
        }
        OutputFormat::Text => {
            let mut out = String::new();
            if !config.quiet {
                out.push_str("# order method micros\n");
            }
            for row in &rows {
                writeln!(out, "{} {} {}", row.order, row.method, row.micros).unwrap();
            }
            out
        }
    };
    Ok(Rendered {
        exit_code: 0,
        stdout,
    })
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    exit_code: i32,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorEnvelope<'a> {
    error: ErrorBody<'a>,
}

fn report_error(err: &CliError, format: OutputFormat, stderr: &mut impl Write) {
    let text = if format == OutputFormat::Json {
        let envelope = ErrorEnvelope {
            error: ErrorBody {
                code: err.code,
                exit_code: err.exit_code,
                message: &err.message,
            },
        };
        serde_json::to_string(&envelope).expect("serializable") + "\n"
    } else {
        format!("error [{}]: {}\n", err.code, err.message)
    };
    let _ = stderr.write_all(text.as_bytes());
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let (subcmd, args) = match cli.command {
        Command::Invert(a) => (Subcmd::Invert, a),
        Command::Compare(a) => (Subcmd::Compare, a),
        Command::Radius(a) => (Subcmd::Radius, a),
        Command::Roundtrip(a) => (Subcmd::Roundtrip, a),
        Command::Bench(a) => (Subcmd::Bench, a),
    };
    let format = args.format;
    let outcome = RunConfig::from_args(args, subcmd).and_then(|config| match subcmd {
        Subcmd::Invert => cmd_invert(&config),
        Subcmd::Compare => cmd_compare(&config),
        Subcmd::Radius => cmd_radius(&config),
        Subcmd::Roundtrip => cmd_roundtrip(&config),
        Subcmd::Bench => cmd_bench(&config),
    });
    match outcome {
        Ok(rendered) => {
            let _ = stdout.write_all(rendered.stdout.as_bytes());
            rendered.exit_code
        }
        Err(err) => {
            report_error(&err, format, stderr);
            err.exit_code
        }
    }
}
