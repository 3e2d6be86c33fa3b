//! `splinedft interpolate`: build (or load) one spline, evaluate it,
//! optionally serialize it.

use std::io::Write;
use std::path::PathBuf;

use splinedft::boundary::{
    exact_boundary, method1_boundary, method2_boundary, zero_boundary, BoundaryVector,
};
use splinedft::numerics::{MpFloat, PrecisionContext, Real};
use splinedft::spline::{build_spline, SampleGrid, SplineFunction};

use crate::errors::{read_err, write_err, CliError};
use crate::io::{
    effective_digits, parse_eval_grid, parse_exact_file, parse_samples_csv, parse_values_list,
    EvalGrid,
};

#[derive(clap::Args, Debug)]
pub struct InterpolateArgs {
    /// CSV sample file with `t,value` rows, equispaced ascending t.
    /// N is the row count minus one: a file with N+1 equally spaced nodes
    /// describes N subintervals.
    #[arg(long, conflicts_with_all = ["values", "load_spline"])]
    input: Option<PathBuf>,

    /// Comma-separated sample values f(t_0)..f(t_N); requires --T.
    #[arg(long, allow_hyphen_values = true, requires = "period")]
    values: Option<String>,

    /// Total sampled period T for --values (t runs from --t-start to
    /// --t-start + T).
    #[arg(long = "T", id = "period")]
    period: Option<String>,

    /// Left endpoint for --values (default 0).
    #[arg(long, requires = "values")]
    t_start: Option<String>,

    /// Evaluate a spline document produced by --emit-spline instead of
    /// building one; --theta/--bc do not apply.
    #[arg(long, conflicts_with_all = ["theta", "bc", "values"])]
    load_spline: Option<PathBuf>,

    /// Spline degree.
    #[arg(long)]
    theta: Option<usize>,

    /// Boundary treatment: method1 | method2 | zero | exact-file=PATH
    /// (PATH holds b_1..b_(theta-1), one real per line).
    #[arg(long)]
    bc: Option<String>,

    /// Where to evaluate: `nodes`, a comma list, or start:stop:step.
    #[arg(long)]
    eval_at: Option<String>,

    /// Append derivative columns d1..dBETA to each evaluation row.
    #[arg(long, default_value_t = 0, value_name = "BETA")]
    derivatives: usize,

    /// Serialize the spline as JSON to this path.
    #[arg(long)]
    emit_spline: Option<PathBuf>,

    /// Evaluation CSV destination (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Working precision in decimal digits; 15 selects binary64.
    /// The SPLINEDFT_DIGITS environment variable overrides this flag.
    #[arg(long, default_value_t = PrecisionContext::MIN_DIGITS)]
    digits: u32,

    /// Print the boundary vector B to stderr.
    #[arg(long)]
    verbose: bool,
}

enum BcChoice {
    Method1,
    Method2,
    Zero,
    ExactFile(PathBuf),
}

fn parse_bc(s: &str) -> Result<BcChoice, CliError> {
    match s {
        "method1" => Ok(BcChoice::Method1),
        "method2" => Ok(BcChoice::Method2),
        "zero" => Ok(BcChoice::Zero),
        other => match other.strip_prefix("exact-file=") {
            Some(path) if !path.is_empty() => Ok(BcChoice::ExactFile(PathBuf::from(path))),
            _ => Err(CliError::Usage(format!(
                "--bc must be method1, method2, zero or exact-file=PATH, got {other:?}"
            ))),
        },
    }
}

pub fn run(args: &InterpolateArgs) -> Result<(), CliError> {
    if args.eval_at.is_none() && args.emit_spline.is_none() {
        return Err(CliError::Usage(
            "nothing to do: pass --eval-at and/or --emit-spline".into(),
        ));
    }
    if let Some(path) = &args.load_spline {
        // Evaluate at the precision the document was computed with.
        let text = std::fs::read_to_string(path).map_err(|e| read_err(path, e))?;
        let digits = peek_digits(&text)?;
        return if digits == PrecisionContext::MIN_DIGITS {
            let ctx = PrecisionContext::binary64();
            let s = SplineFunction::<f64>::from_json(&text, &ctx)?;
            emit(args, &s, &ctx)
        } else {
            let ctx = PrecisionContext::new(digits).map_err(CliError::from)?;
            let s = SplineFunction::<MpFloat>::from_json(&text, &ctx)?;
            emit(args, &s, &ctx)
        };
    }

    let digits = effective_digits(args.digits)?;
    if digits == PrecisionContext::MIN_DIGITS {
        let ctx = PrecisionContext::binary64();
        build_and_emit::<f64>(args, &ctx)
    } else {
        let ctx = PrecisionContext::new(digits).map_err(CliError::from)?;
        build_and_emit::<MpFloat>(args, &ctx)
    }
}

fn peek_digits(text: &str) -> Result<u32, CliError> {
    let doc: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("spline document is not JSON: {e}")))?;
    doc.get("digits")
        .and_then(|v| v.as_u64())
        .map(|d| d as u32)
        .ok_or_else(|| CliError::Usage("spline document lacks a digits field".into()))
}

fn build_and_emit<T: Real>(args: &InterpolateArgs, ctx: &PrecisionContext) -> Result<(), CliError> {
    let samples: SampleGrid<T> = match (&args.input, &args.values) {
        (Some(path), None) => parse_samples_csv(path, ctx)?,
        (None, Some(list)) => parse_values_list(
            list,
            args.period.as_deref().expect("clap requires --T"),
            args.t_start.as_deref(),
            ctx,
        )?,
        _ => {
            return Err(CliError::Usage(
                "exactly one input is required: --input FILE or --values LIST --T PERIOD".into(),
            ))
        }
    };
    let theta = args
        .theta
        .ok_or_else(|| CliError::Usage("--theta is required when building a spline".into()))?;
    if theta == 0 {
        return Err(CliError::Usage("--theta must be at least 1".into()));
    }
    let bc = parse_bc(args.bc.as_deref().unwrap_or("method1"))?;
    let b: BoundaryVector<T> = match bc {
        BcChoice::Method1 => method1_boundary(&samples, theta, ctx)?,
        BcChoice::Method2 => method2_boundary(&samples, theta, ctx)?,
        BcChoice::Zero => zero_boundary(&samples, theta, ctx),
        BcChoice::ExactFile(path) => {
            let diffs = parse_exact_file::<T>(&path, theta, ctx)?;
            exact_boundary(&samples, theta, &diffs)?
        }
    };
    if args.verbose {
        let rendered: Vec<String> = b.values().iter().map(|v| v.to_repr_string()).collect();
        eprintln!("B = [{}]", rendered.join(", "));
    }
    let s = build_spline(&samples, theta, b.values(), ctx)?;
    emit(args, &s, ctx)
}

fn emit<T: Real>(
    args: &InterpolateArgs,
    s: &SplineFunction<T>,
    ctx: &PrecisionContext,
) -> Result<(), CliError> {
    if let Some(path) = &args.emit_spline {
        std::fs::write(path, s.to_json()).map_err(|e| write_err(path, e))?;
    }
    let Some(spec) = &args.eval_at else {
        return Ok(());
    };
    if args.derivatives > s.theta() {
        return Err(CliError::Usage(format!(
            "--derivatives {} exceeds the spline degree {}",
            args.derivatives,
            s.theta()
        )));
    }
    let points: Vec<T> = match parse_eval_grid::<T>(spec, ctx)? {
        EvalGrid::Nodes => {
            let dt = s.delta_t();
            (0..=s.n())
                .map(|j| s.t_start().clone() + dt.clone() * T::from_i64(j as i64, ctx))
                .collect()
        }
        EvalGrid::Points(pts) => pts,
    };

    let mut rows = String::new();
    rows.push_str("t,value");
    for beta in 1..=args.derivatives {
        rows.push_str(&format!(",d{beta}"));
    }
    rows.push('\n');
    for t in &points {
        rows.push_str(&t.to_repr_string());
        for beta in 0..=args.derivatives {
            rows.push(',');
            rows.push_str(&s.eval(t, beta)?.to_repr_string());
        }
        rows.push('\n');
    }
    match &args.out {
        Some(path) => std::fs::write(path, rows).map_err(|e| write_err(path, e))?,
        None => std::io::stdout()
            .write_all(rows.as_bytes())
            .map_err(|e| CliError::Internal(format!("stdout: {e}")))?,
    }
    Ok(())
}
