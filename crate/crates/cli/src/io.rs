//! Input parsing: sample files, raw value lists, grid specs.

use std::path::Path;

use splinedft::numerics::{PrecisionContext, Real};
use splinedft::spline::{SampleGrid, SplineError};

use crate::errors::{read_err, CliError};

/// Relative equispacing slack: the method presumes a uniform grid, so a
/// node may deviate from its ideal position by at most this fraction of
/// the spacing.
const EQUISPACING_REL: f64 = 1e-9;

pub fn parse_scalar<T: Real>(s: &str, what: &str, ctx: &PrecisionContext) -> Result<T, CliError> {
    T::from_repr_string(s.trim(), ctx)
        .ok_or_else(|| CliError::Usage(format!("bad {what}: {s:?} is not a finite number")))
}

/// Parse a `t,value` CSV into a sample grid, verifying equispacing.
///
/// Blank lines are skipped; a single leading header line is tolerated.
pub fn parse_samples_csv<T: Real>(
    path: &Path,
    ctx: &PrecisionContext,
) -> Result<SampleGrid<T>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| read_err(path, e))?;
    let mut ts: Vec<T> = Vec::new();
    let mut vs: Vec<T> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (a, b) = (fields.next().unwrap_or(""), fields.next().unwrap_or(""));
        if fields.next().is_some() {
            return Err(CliError::Usage(format!(
                "{}:{}: expected two fields `t,value`, got more",
                path.display(),
                idx + 1
            )));
        }
        let t = T::from_repr_string(a.trim(), ctx);
        let v = T::from_repr_string(b.trim(), ctx);
        match (t, v) {
            (Some(t), Some(v)) => {
                ts.push(t);
                vs.push(v);
            }
            _ if ts.is_empty() && idx == 0 => {} // header line
            _ => {
                return Err(CliError::Usage(format!(
                    "{}:{}: cannot parse `{line}` as `t,value`",
                    path.display(),
                    idx + 1
                )));
            }
        }
    }
    if ts.len() < 3 {
        return Err(CliError::Usage(format!(
            "{}: need at least 3 samples, got {}",
            path.display(),
            ts.len()
        )));
    }
    let n = ts.len() - 1;
    let t0 = ts[0].clone();
    let period = ts[n].clone() - t0.clone();
    if !(period > T::zero(ctx)) {
        return Err(CliError::Usage(format!(
            "{}: t column must be strictly increasing overall",
            path.display()
        )));
    }
    let dt = period.clone() / T::from_i64(n as i64, ctx);
    let slack = dt.clone() * T::from_f64(EQUISPACING_REL, ctx);
    for (i, t) in ts.iter().enumerate() {
        let ideal = t0.clone() + dt.clone() * T::from_i64(i as i64, ctx);
        if (t.clone() - ideal.clone()).abs() > slack {
            return Err(CliError::Usage(format!(
                "{}: sample {} at t = {} deviates from the equispaced position {} by more than {EQUISPACING_REL} relative",
                path.display(),
                i,
                t.to_repr_string(),
                ideal.to_repr_string()
            )));
        }
    }
    SampleGrid::new(t0, period, vs, ctx).map_err(|e: SplineError| CliError::from(e))
}

/// Build a grid from `--values` plus `--T` (and optional `--t-start`).
pub fn parse_values_list<T: Real>(
    values: &str,
    period: &str,
    t_start: Option<&str>,
    ctx: &PrecisionContext,
) -> Result<SampleGrid<T>, CliError> {
    let vs = values
        .split(',')
        .map(|s| parse_scalar::<T>(s, "value", ctx))
        .collect::<Result<Vec<_>, _>>()?;
    let period = parse_scalar::<T>(period, "--T", ctx)?;
    let start = match t_start {
        Some(s) => parse_scalar::<T>(s, "--t-start", ctx)?,
        None => T::zero(ctx),
    };
    SampleGrid::new(start, period, vs, ctx).map_err(CliError::from)
}

/// Evaluation grid: the literal word `nodes`, a `start:stop:step` range
/// (endpoints inclusive within rounding), or a comma-separated list.
pub enum EvalGrid<T> {
    Nodes,
    Points(Vec<T>),
}

pub fn parse_eval_grid<T: Real>(
    spec: &str,
    ctx: &PrecisionContext,
) -> Result<EvalGrid<T>, CliError> {
    if spec.trim() == "nodes" {
        return Ok(EvalGrid::Nodes);
    }
    if spec.contains(':') {
        return Ok(EvalGrid::Points(parse_range_spec(spec, ctx)?));
    }
    let pts = spec
        .split(',')
        .map(|s| parse_scalar::<T>(s, "--eval-at entry", ctx))
        .collect::<Result<Vec<_>, _>>()?;
    if pts.is_empty() {
        return Err(CliError::Usage("empty --eval-at grid".into()));
    }
    Ok(EvalGrid::Points(pts))
}

/// `start:stop:step`, endpoints inclusive.
pub fn parse_range_spec<T: Real>(spec: &str, ctx: &PrecisionContext) -> Result<Vec<T>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "range spec must be start:stop:step, got {spec:?}"
        )));
    }
    let start = parse_scalar::<T>(parts[0], "range start", ctx)?;
    let stop = parse_scalar::<T>(parts[1], "range stop", ctx)?;
    let step = parse_scalar::<T>(parts[2], "range step", ctx)?;
    if !(step > T::zero(ctx)) || !(stop.clone() - start.clone() >= T::zero(ctx)) {
        return Err(CliError::Usage(format!(
            "range spec {spec:?} needs stop >= start and step > 0"
        )));
    }
    let count = ((stop.clone() - start.clone()) / step.clone()).to_f64() + 1e-9;
    let count = count.floor() as usize + 1;
    Ok((0..count)
        .map(|k| start.clone() + step.clone() * T::from_i64(k as i64, ctx))
        .collect())
}

/// `b_1..b_(theta-1)`, one real per line; `b_0` always comes from the data.
pub fn parse_exact_file<T: Real>(
    path: &Path,
    theta: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<T>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| read_err(path, e))?;
    let vals = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| parse_scalar::<T>(l, "boundary value", ctx))
        .collect::<Result<Vec<_>, _>>()?;
    if vals.len() != theta.saturating_sub(1) {
        return Err(CliError::Usage(format!(
            "{}: exact boundary file must hold b_1..b_{} ({} lines) for degree {theta}, got {}",
            path.display(),
            theta.saturating_sub(1),
            theta.saturating_sub(1),
            vals.len()
        )));
    }
    Ok(vals)
}

/// `SPLINEDFT_DIGITS` takes precedence over `--digits`.
pub fn effective_digits(flag: u32) -> Result<u32, CliError> {
    match std::env::var("SPLINEDFT_DIGITS") {
        Ok(s) => s.trim().parse::<u32>().map_err(|_| {
            CliError::Usage(format!("SPLINEDFT_DIGITS={s:?} is not a whole number"))
        }),
        Err(_) => Ok(flag),
    }
}
