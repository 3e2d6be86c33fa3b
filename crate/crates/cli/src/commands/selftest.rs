//! `splinedft selftest`: quick end-to-end sanity checks.

use splinedft::bench::{error_report, MethodTag, TestFunctionId};
use splinedft::boundary::method2_boundary;
use splinedft::cubic::{build_cubic, CubicKind};
use splinedft::numerics::PrecisionContext;
use splinedft::spline::{build_spline, SampleGrid, SplineFunction};

use crate::errors::CliError;

#[derive(clap::Args, Debug)]
pub struct SelftestArgs {}

fn check(name: &str, body: impl FnOnce() -> Result<(), String>) -> Result<(), CliError> {
    match body() {
        Ok(()) => {
            println!("ok   {name}");
            Ok(())
        }
        Err(why) => {
            println!("FAIL {name}: {why}");
            Err(CliError::Internal(format!("selftest failed at {name}")))
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn run(_args: &SelftestArgs) -> Result<(), CliError> {
    let ctx = PrecisionContext::binary64();

    check("published cell, degree 3 oscillator", || {
        let samples = TestFunctionId::G1.sample::<f64>(31, &ctx).map_err(err)?;
        let b = method2_boundary(&samples, 3, &ctx).map_err(err)?;
        let s = build_spline(&samples, 3, b.values(), &ctx).map_err(err)?;
        let r = error_report(TestFunctionId::G1, &s, 10, 3, MethodTag::Method2, &ctx)
            .map_err(err)?;
        let reference = 1.44e-3;
        if r.e_max < reference / 2.0 || r.e_max > reference * 2.0 {
            return Err(format!(
                "e_max {:.3e} outside [{:.1e}, {:.1e}]",
                r.e_max,
                reference / 2.0,
                reference * 2.0
            ));
        }
        Ok(())
    })?;

    check("not-a-knot cubic reproduces a cubic", || {
        let samples = SampleGrid::from_fn(0.0, 2.0, 8, &ctx, |t| {
            t * t * t - 2.0 * t * t + t - 5.0
        })
        .map_err(err)?;
        let s = build_cubic(&samples, CubicKind::NotAKnot, &ctx).map_err(err)?;
        let t = 0.73;
        let want = t * t * t - 2.0 * t * t + t - 5.0;
        let got = s.eval(&t, 0).map_err(err)?;
        if (got - want).abs() > 1e-11 {
            return Err(format!("|{got} - {want}| too large"));
        }
        Ok(())
    })?;

    check("parity rejection, even degree on even grid", || {
        let samples = TestFunctionId::G1.sample::<f64>(30, &ctx).map_err(err)?;
        match build_spline(&samples, 4, &[samples.b0(), 0.0, 0.0, 0.0], &ctx) {
            Err(_) => Ok(()),
            Ok(_) => Err("expected a parity error".into()),
        }
    })?;

    check("serialized spline round-trips bit for bit", || {
        let samples = TestFunctionId::G4.sample::<f64>(9, &ctx).map_err(err)?;
        let b = method2_boundary(&samples, 3, &ctx).map_err(err)?;
        let s = build_spline(&samples, 3, b.values(), &ctx).map_err(err)?;
        let restored = SplineFunction::<f64>::from_json(&s.to_json(), &ctx).map_err(err)?;
        let t = 1.37;
        let a = s.eval(&t, 0).map_err(err)?;
        let b2 = restored.eval(&t, 0).map_err(err)?;
        if a.to_bits() != b2.to_bits() {
            return Err(format!("{a} != {b2}"));
        }
        Ok(())
    })?;

    println!("selftest passed");
    Ok(())
}
