//! Fourier-transform demonstration on the damped 60 rad/s oscillator.
//!
//! The signal `e^(-2t) cos(60t)` is sampled on 8192 intervals of width
//! 0.01, interpolated at configurable degree and boundary treatment, and
//! the spline transform is compared against the closed-form transform of
//! the truncated signal over a frequency grid. Everything here runs in
//! binary64: the curves bottom out around 1e-10, well inside double
//! resolution, and 8192 is a power of two so the radix-2 transform path
//! applies.

use crate::boundary::{exact_boundary, method1_boundary, zero_boundary};
use crate::numerics::PrecisionContext;
use crate::spline::build_spline;

use super::fourier::{ft_demo_reference, spline_fourier_transform};
use super::functions::TestFunctionId;
use super::BenchError;

/// Node count of the demonstration grid (t from 0 to 81.92 step 0.01).
pub const DEMO_N: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemoBc {
    Zero,
    Method1,
    Exact,
}

impl DemoBc {
    pub const ALL: [DemoBc; 3] = [DemoBc::Zero, DemoBc::Method1, DemoBc::Exact];

    pub fn label(&self) -> &'static str {
        match self {
            DemoBc::Zero => "zero",
            DemoBc::Method1 => "method1",
            DemoBc::Exact => "exact",
        }
    }

    pub fn parse(s: &str) -> Result<Self, BenchError> {
        Self::ALL
            .iter()
            .copied()
            .find(|b| b.label() == s)
            .ok_or_else(|| {
                BenchError::InvalidConfig(format!(
                    "unknown boundary treatment {s:?} (expected zero, method1 or exact)"
                ))
            })
    }
}

/// Default frequency grid: 0 to 100 rad/s in steps of 1/2, bracketing
/// the signal line at 60 and staying far below the sampling frequency.
pub fn default_omega_grid() -> Vec<f64> {
    (0..=200).map(|k| k as f64 * 0.5).collect()
}

/// One demonstration run: transform error over the frequency grid plus
/// the time-domain interpolation error on an 8-fold refined grid.
#[derive(Debug, Clone)]
pub struct DemoCurves {
    pub theta: usize,
    pub bc: DemoBc,
    /// `(omega, |F_spline(omega) - F(omega)|)` per grid frequency.
    pub ft_error: Vec<(f64, f64)>,
    /// `(t, |f(t) - s(t)|)` on the refined time grid.
    pub time_error: Vec<(f64, f64)>,
}

impl DemoCurves {
    pub fn max_ft_error(&self) -> f64 {
        self.ft_error.iter().fold(0.0, |m, &(_, e)| m.max(e))
    }

    pub fn max_time_error(&self) -> f64 {
        self.time_error.iter().fold(0.0, |m, &(_, e)| m.max(e))
    }

    pub fn ft_csv(&self) -> String {
        let mut out = String::from("omega,abs_error\n");
        for &(w, e) in &self.ft_error {
            out.push_str(&format!("{w:.6e},{e:.16e}\n"));
        }
        out
    }

    pub fn time_csv(&self) -> String {
        let mut out = String::from("t,abs_error\n");
        for &(t, e) in &self.time_error {
            out.push_str(&format!("{t:.6e},{e:.16e}\n"));
        }
        out
    }
}

pub fn ft_demo_curves(
    theta: usize,
    bc: DemoBc,
    omegas: &[f64],
) -> Result<DemoCurves, BenchError> {
    if theta == 0 {
        return Err(BenchError::InvalidConfig("theta must be at least 1".into()));
    }
    if theta % 2 == 0 {
        // The demo grid is fixed at even N, so even degrees can never run.
        return Err(BenchError::Parity { theta, n: DEMO_N });
    }
    let ctx = PrecisionContext::binary64();
    let function = TestFunctionId::FtDemo;
    let samples = function.sample::<f64>(DEMO_N, &ctx)?;
    let b = match bc {
        DemoBc::Zero => zero_boundary(&samples, theta, &ctx),
        DemoBc::Method1 => method1_boundary(&samples, theta, &ctx)?,
        DemoBc::Exact => exact_boundary(&samples, theta, &function.exact_diffs(theta, &ctx))?,
    };
    let s = build_spline(&samples, theta, b.values(), &ctx)?;

    let transforms = spline_fourier_transform(&s, omegas, &ctx)?;
    let ft_error = omegas
        .iter()
        .zip(&transforms)
        .map(|(&w, f)| {
            let reference = ft_demo_reference(&w, &ctx);
            (w, (f.clone() - reference).abs())
        })
        .collect();

    let lambda = 8usize;
    let dt = s.delta_t();
    let mut time_error = Vec::with_capacity(lambda * DEMO_N);
    for j in 0..DEMO_N {
        for m in 0..lambda {
            let offset = dt * m as f64 / lambda as f64;
            let t = dt * j as f64 + offset;
            let err = (function.value(&t, &ctx) - s.eval_offset(j, &offset, 0)?).abs();
            time_error.push((t, err));
        }
    }

    Ok(DemoCurves {
        theta,
        bc,
        ft_error,
        time_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_degree_is_a_parity_error() {
        match ft_demo_curves(4, DemoBc::Zero, &[0.0]) {
            Err(BenchError::Parity { theta: 4, n }) => assert_eq!(n, DEMO_N),
            other => panic!("expected parity error, got {other:?}"),
        }
    }

    #[test]
    fn boundary_quality_orders_transform_error() {
        // On a sparse grid to keep this quick; the acceptance suite runs
        // the full comparison. Frequencies bracket the 60 rad/s line.
        let omegas = [0.0, 20.0, 59.5, 60.0, 60.5, 80.0];
        let zero = ft_demo_curves(3, DemoBc::Zero, &omegas).unwrap();
        let m1 = ft_demo_curves(3, DemoBc::Method1, &omegas).unwrap();
        let exact = ft_demo_curves(3, DemoBc::Exact, &omegas).unwrap();
        let (ez, em, ee) = (zero.max_ft_error(), m1.max_ft_error(), exact.max_ft_error());
        assert!(
            ez >= em && em >= ee,
            "expected zero >= method1 >= exact, got {ez:.3e} {em:.3e} {ee:.3e}"
        );
        assert!(ee > 0.0);
    }

    #[test]
    fn exact_boundaries_track_the_signal_closely() {
        let curves = ft_demo_curves(5, DemoBc::Exact, &[60.0]).unwrap();
        let worst = curves.max_time_error();
        // Delta t = 0.01 at degree 5 with exact end conditions: the
        // interpolation error is dominated by (Delta t)^6 |f^(6)| / 6!.
        assert!(worst > 0.0 && worst < 1e-3, "time error {worst:.3e}");
        assert_eq!(curves.time_error.len(), 8 * DEMO_N);
    }

    #[test]
    fn csv_emitters_are_stable() {
        let omegas = [0.0, 60.0];
        let a = ft_demo_curves(3, DemoBc::Zero, &omegas).unwrap();
        let b = ft_demo_curves(3, DemoBc::Zero, &omegas).unwrap();
        assert_eq!(a.ft_csv(), b.ft_csv());
        assert!(a.ft_csv().starts_with("omega,abs_error\n"));
        assert_eq!(a.ft_csv().lines().count(), 3);
        assert!(a.time_csv().starts_with("t,abs_error\n"));
    }

    #[test]
    fn bc_labels_round_trip() {
        for b in DemoBc::ALL {
            assert_eq!(DemoBc::parse(b.label()).unwrap(), b);
        }
        assert!(DemoBc::parse("natural").is_err());
    }
}
