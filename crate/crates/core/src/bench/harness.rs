//! Error metrics and the table runner.
//!
//! A run takes a (theta, N, method) grid for one test function, builds
//! each interpolant, measures it on a `lambda`-fold refinement of the
//! node grid, and emits rows compatible with the published error tables,
//! including the accuracy-gain column against the not-a-knot cubic and
//! the published cell for any configuration that has one.

use rayon::prelude::*;

use crate::boundary::{
    exact_boundary, method1_boundary, method2_boundary, zero_boundary,
};
use crate::cubic::{build_cubic, CubicKind, CubicSpline};
use crate::numerics::{PrecisionContext, Real};
use crate::spline::{build_spline, SplineError, SplineFunction};

use super::functions::TestFunctionId;
use super::reference::published_cell;
use super::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodTag {
    Method1,
    Method2,
    Zero,
    Exact,
    CubicNs,
    CubicNak,
}

impl MethodTag {
    pub const ALL: [MethodTag; 6] = [
        MethodTag::Method1,
        MethodTag::Method2,
        MethodTag::Zero,
        MethodTag::Exact,
        MethodTag::CubicNs,
        MethodTag::CubicNak,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            MethodTag::Method1 => "method1",
            MethodTag::Method2 => "method2",
            MethodTag::Zero => "zero",
            MethodTag::Exact => "exact",
            MethodTag::CubicNs => "cubic-ns",
            MethodTag::CubicNak => "cubic-nak",
        }
    }

    pub fn parse(s: &str) -> Result<Self, BenchError> {
        Self::ALL
            .iter()
            .copied()
            .find(|m| m.label() == s)
            .ok_or_else(|| {
                BenchError::InvalidConfig(format!(
                    "unknown method {s:?} (expected one of method1, method2, zero, exact, cubic-ns, cubic-nak)"
                ))
            })
    }

    /// Reference cubics ignore `theta` and have no gain column of their own.
    pub fn is_reference(&self) -> bool {
        matches!(self, MethodTag::CubicNs | MethodTag::CubicNak)
    }
}

/// Anything evaluable piece by piece: degree `theta` splines, reference
/// cubics, and test doubles. Offsets avoid the floor-based piece lookup,
/// so refinement points never straddle a knot through rounding.
pub trait PiecewiseEval<T: Real> {
    fn pieces(&self) -> usize;
    fn piece_width(&self) -> T;
    fn domain_start(&self) -> T;
    fn value_at(&self, piece: usize, offset: &T) -> Result<T, SplineError>;
}

impl<T: Real> PiecewiseEval<T> for SplineFunction<T> {
    fn pieces(&self) -> usize {
        self.n()
    }

    fn piece_width(&self) -> T {
        self.delta_t()
    }

    fn domain_start(&self) -> T {
        self.t_start().clone()
    }

    fn value_at(&self, piece: usize, offset: &T) -> Result<T, SplineError> {
        self.eval_offset(piece, offset, 0)
    }
}

impl<T: Real> PiecewiseEval<T> for CubicSpline<T> {
    fn pieces(&self) -> usize {
        self.n()
    }

    fn piece_width(&self) -> T {
        self.delta_t()
    }

    fn domain_start(&self) -> T {
        self.t_start().clone()
    }

    fn value_at(&self, piece: usize, offset: &T) -> Result<T, SplineError> {
        self.eval_offset(piece, offset, 0)
    }
}

/// Interpolation error of one interpolant against its analytic source.
#[derive(Debug, Clone)]
pub struct ErrorReport<T> {
    pub e_max: T,
    pub e_avg: T,
    pub lambda: usize,
    pub theta: usize,
    pub n: usize,
    pub method: MethodTag,
}

/// Measure an interpolant on the `lambda`-fold refined grid.
///
/// `E_max` scans the `lambda - 1` interior points of every piece (node
/// values are exact by construction and would only dilute the max).
/// `E_avg` follows the published convention verbatim: the sum runs over
/// all `lambda * N` refinement points from `t = 0` on, node points
/// included, but the divisor is `(lambda - 1) N`, counting only the
/// points that can contribute. For honest interpolants `e_avg <= e_max`;
/// a mock with nonzero node error can legitimately exceed it.
pub fn error_report<T: Real, S: PiecewiseEval<T>>(
    function: TestFunctionId,
    s: &S,
    lambda: usize,
    theta: usize,
    method: MethodTag,
    ctx: &PrecisionContext,
) -> Result<ErrorReport<T>, BenchError> {
    if lambda < 2 {
        return Err(BenchError::InvalidConfig(format!(
            "lambda must be at least 2, got {lambda}"
        )));
    }
    let n = s.pieces();
    let width = s.piece_width();
    let start = s.domain_start();
    let end: T = function.domain_end(ctx);
    let tol = ctx.tolerance::<T>() * end.abs();
    let span_diff = (width.clone() * T::from_i64(n as i64, ctx)
        + start.clone()
        - end.clone())
    .abs();
    if start.abs() > tol || span_diff > tol {
        return Err(BenchError::DomainMismatch(format!(
            "interpolant covers [{start}, {}] but {} lives on [0, {end}]",
            start.clone() + width.clone() * T::from_i64(n as i64, ctx),
            function.name()
        )));
    }

    let mut e_max = T::zero(ctx);
    let mut sum = T::zero(ctx);
    for j in 0..n {
        let t_piece = start.clone() + width.clone() * T::from_i64(j as i64, ctx);
        for m in 0..lambda {
            let offset = width.clone() * T::from_i64(m as i64, ctx)
                / T::from_i64(lambda as i64, ctx);
            let t = t_piece.clone() + offset.clone();
            let err = (function.value(&t, ctx) - s.value_at(j, &offset)?).abs();
            if m > 0 && err > e_max {
                e_max = err.clone();
            }
            sum += err;
        }
    }
    let divisor = T::from_i64(((lambda - 1) * n) as i64, ctx);
    Ok(ErrorReport {
        e_max,
        e_avg: sum / divisor,
        lambda,
        theta,
        n,
        method,
    })
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub function: TestFunctionId,
    pub thetas: Vec<usize>,
    pub ns: Vec<usize>,
    pub methods: Vec<MethodTag>,
    pub lambda: usize,
    pub digits: u32,
}

impl BenchConfig {
    /// Paper-table defaults: every method over the published grid.
    pub fn table_defaults(function: TestFunctionId, thetas: Vec<usize>) -> Self {
        Self {
            function,
            thetas,
            ns: vec![31, 101, 501],
            methods: vec![
                MethodTag::Method1,
                MethodTag::Method2,
                MethodTag::CubicNs,
                MethodTag::CubicNak,
            ],
            lambda: 10,
            digits: PrecisionContext::MIN_DIGITS,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.thetas.is_empty() {
            return Err(BenchError::InvalidConfig("empty theta list".into()));
        }
        if self.ns.is_empty() {
            return Err(BenchError::InvalidConfig("empty N list".into()));
        }
        if self.methods.is_empty() {
            return Err(BenchError::InvalidConfig("empty method list".into()));
        }
        if self.lambda < 2 {
            return Err(BenchError::InvalidConfig(format!(
                "lambda must be at least 2, got {}",
                self.lambda
            )));
        }
        if self.thetas.iter().any(|&t| t == 0) {
            return Err(BenchError::InvalidConfig("theta must be at least 1".into()));
        }
        if self.ns.iter().any(|&n| n < 2) {
            return Err(BenchError::InvalidConfig(
                "N must be at least 2 intervals".into(),
            ));
        }
        PrecisionContext::new(self.digits)?;
        Ok(())
    }
}

/// Working precision a configuration needs before the harness will run
/// it. Binary64 suffices through degree 5; the high-degree tables reach
/// error levels around 1e-23, far below binary64 resolution, and the
/// largest grids lose several more digits to conditioning.
pub fn required_digits(theta: usize, n: usize) -> u32 {
    if theta <= 5 {
        PrecisionContext::MIN_DIGITS
    } else if n >= 501 {
        60
    } else {
        50
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    Skipped(String),
    Failed(String),
}

impl RowStatus {
    pub fn is_ok(&self) -> bool {
        matches!(self, RowStatus::Ok)
    }

    fn render(&self) -> String {
        match self {
            RowStatus::Ok => "ok".into(),
            RowStatus::Skipped(reason) => format!("skipped: {}", reason.replace(',', ";")),
            RowStatus::Failed(reason) => format!("failed: {}", reason.replace(',', ";")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub function: TestFunctionId,
    pub theta: usize,
    pub n: usize,
    pub method: MethodTag,
    pub lambda: usize,
    pub digits: u32,
    pub e_max: Option<f64>,
    pub e_avg: Option<f64>,
    pub gain_vs_nak: Option<f64>,
    pub paper_e_max: Option<f64>,
    pub paper_e_avg: Option<f64>,
    pub status: RowStatus,
}

#[derive(Debug, Clone)]
pub struct BenchTable {
    pub rows: Vec<BenchRow>,
    config: BenchConfig,
}

pub const CSV_HEADER: &str =
    "function,theta,n,method,lambda,digits,e_max,e_avg,gain_vs_nak,paper_e_max,paper_e_avg,status";

fn sci(v: f64, digits: u32) -> String {
    let mantissa = (digits.saturating_sub(1)).min(16) as usize;
    format!("{v:.mantissa$e}")
}

impl BenchTable {
    pub fn config(&self) -> &BenchConfig {
        &self.config
    }

    pub fn to_csv_string(&self) -> String {
        let digits = self.config.digits;
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let opt = |v: Option<f64>| v.map(|x| sci(x, digits)).unwrap_or_default();
            let gain = match (&r.status, r.gain_vs_nak) {
                (RowStatus::Ok, Some(g)) => sci(g, digits),
                (RowStatus::Ok, None) if !r.method.is_reference() => "-".into(),
                _ => String::new(),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.function.name(),
                r.theta,
                r.n,
                r.method.label(),
                r.lambda,
                r.digits,
                opt(r.e_max),
                opt(r.e_avg),
                gain,
                opt(r.paper_e_max),
                opt(r.paper_e_avg),
                r.status.render(),
            ));
        }
        out
    }

    /// Field-for-field mirror of the CSV, one JSON object per row.
    pub fn to_json_string(&self) -> String {
        let digits = self.config.digits;
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                let opt = |v: Option<f64>| {
                    v.map(|x| serde_json::Value::String(sci(x, digits)))
                        .unwrap_or(serde_json::Value::Null)
                };
                serde_json::json!({
                    "function": r.function.name(),
                    "theta": r.theta,
                    "n": r.n,
                    "method": r.method.label(),
                    "lambda": r.lambda,
                    "digits": r.digits,
                    "e_max": opt(r.e_max),
                    "e_avg": opt(r.e_avg),
                    "gain_vs_nak": r.gain_vs_nak.map(|g| serde_json::Value::String(sci(g, digits))).unwrap_or(serde_json::Value::Null),
                    "paper_e_max": opt(r.paper_e_max),
                    "paper_e_avg": opt(r.paper_e_avg),
                    "status": r.status.render(),
                })
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::Value::Array(rows)).expect("static shape")
    }

    /// Run configuration echo for the sidecar file (no timestamps: data
    /// files stay byte-identical across reruns).
    pub fn metadata_json(&self) -> String {
        let c = &self.config;
        serde_json::to_string_pretty(&serde_json::json!({
            "function": c.function.name(),
            "thetas": c.thetas,
            "ns": c.ns,
            "methods": c.methods.iter().map(|m| m.label()).collect::<Vec<_>>(),
            "lambda": c.lambda,
            "digits": c.digits,
        }))
        .expect("static shape")
    }
}

/// Build and measure one spline row at a fixed scalar type.
fn measure_spline<T: Real>(
    function: TestFunctionId,
    theta: usize,
    n: usize,
    method: MethodTag,
    lambda: usize,
    ctx: &PrecisionContext,
) -> Result<(f64, f64), BenchError> {
    let samples = function.sample::<T>(n, ctx)?;
    let report = match method {
        MethodTag::CubicNs | MethodTag::CubicNak => {
            let kind = if method == MethodTag::CubicNs {
                CubicKind::Natural
            } else {
                CubicKind::NotAKnot
            };
            let s = build_cubic(&samples, kind, ctx)?;
            error_report(function, &s, lambda, theta, method, ctx)?
        }
        _ => {
            let b = match method {
                MethodTag::Method1 => method1_boundary(&samples, theta, ctx)?,
                MethodTag::Method2 => method2_boundary(&samples, theta, ctx)?,
                MethodTag::Zero => zero_boundary(&samples, theta, ctx),
                MethodTag::Exact => {
                    exact_boundary(&samples, theta, &function.exact_diffs(theta, ctx))?
                }
                _ => unreachable!("cubic handled above"),
            };
            let s: SplineFunction<T> = build_spline(&samples, theta, b.values(), ctx)?;
            error_report(function, &s, lambda, theta, method, ctx)?
        }
    };
    Ok((report.e_max.to_f64(), report.e_avg.to_f64()))
}

fn measure_dispatch(
    function: TestFunctionId,
    theta: usize,
    n: usize,
    method: MethodTag,
    lambda: usize,
    digits: u32,
) -> Result<(f64, f64), BenchError> {
    if digits == PrecisionContext::MIN_DIGITS {
        let ctx = PrecisionContext::binary64();
        measure_spline::<f64>(function, theta, n, method, lambda, &ctx)
    } else {
        let ctx = PrecisionContext::new(digits)?;
        measure_spline::<crate::numerics::MpFloat>(function, theta, n, method, lambda, &ctx)
    }
}

/// Pre-run checks that turn a row into a skip instead of a failure.
fn skip_reason(cfg: &BenchConfig, theta: usize, n: usize, method: MethodTag) -> Option<String> {
    if !method.is_reference() {
        if theta % 2 == 0 && n % 2 == 0 {
            return Some(format!("parity: theta = {theta} and N = {n} are both even"));
        }
        if method == MethodTag::Method2 && n % 2 == 0 {
            return Some(format!("method 2 requires odd N, got {n}"));
        }
        let required = required_digits(theta, n);
        if cfg.digits < required {
            return Some(format!(
                "degree {theta} at N = {n} needs at least {required} digits, run configured with {}",
                cfg.digits
            ));
        }
    }
    None
}

/// Execute the whole grid. Row order is the deterministic config order
/// (theta-major, then N, then method) regardless of which worker finishes
/// first; per-row failures land in the status column, never abort the run.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchTable, BenchError> {
    cfg.validate()?;

    // Not-a-knot baseline per N (binary64), shared by the gain column.
    let baselines: Vec<(usize, Option<f64>)> = cfg
        .ns
        .par_iter()
        .map(|&n| {
            let ctx = PrecisionContext::binary64();
            let base = measure_spline::<f64>(
                cfg.function,
                3,
                n,
                MethodTag::CubicNak,
                cfg.lambda,
                &ctx,
            )
            .ok()
            .map(|(e_max, _)| e_max);
            (n, base)
        })
        .collect();
    let nak_e_max = |n: usize| -> Option<f64> {
        baselines.iter().find(|(bn, _)| *bn == n).and_then(|(_, v)| *v)
    };

    let jobs: Vec<(usize, usize, MethodTag)> = cfg
        .thetas
        .iter()
        .flat_map(|&theta| {
            cfg.ns.iter().flat_map(move |&n| {
                cfg.methods.iter().map(move |&m| (theta, n, m))
            })
        })
        .collect();

    let rows: Vec<BenchRow> = jobs
        .par_iter()
        .map(|&(theta, n, method)| {
            let (paper_e_max, paper_e_avg) = match published_cell(cfg.function, theta, n, method)
            {
                Some((m, a)) => (Some(m), Some(a)),
                None => (None, None),
            };
            let mut row = BenchRow {
                function: cfg.function,
                theta,
                n,
                method,
                lambda: cfg.lambda,
                digits: cfg.digits,
                e_max: None,
                e_avg: None,
                gain_vs_nak: None,
                paper_e_max,
                paper_e_avg,
                status: RowStatus::Ok,
            };
            if let Some(reason) = skip_reason(cfg, theta, n, method) {
                row.status = RowStatus::Skipped(reason);
                return row;
            }
            match measure_dispatch(cfg.function, theta, n, method, cfg.lambda, cfg.digits) {
                Ok((e_max, e_avg)) => {
                    row.e_max = Some(e_max);
                    row.e_avg = Some(e_avg);
                    if !method.is_reference() {
                        if let Some(base) = nak_e_max(n) {
                            let gain = base / e_max;
                            row.gain_vs_nak = if gain >= 1.0 { Some(gain) } else { None };
                        }
                    }
                }
                Err(err) => {
                    row.status = RowStatus::Failed(err.to_string());
                }
            }
            row
        })
        .collect();

    Ok(BenchTable {
        rows,
        config: cfg.clone(),
    })
}
