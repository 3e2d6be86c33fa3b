//! Classical cubic splines on the same equispaced grids, used as the
//! baseline the boundary estimators are measured against.
//!
//! Both variants interpolate the samples with a C^2 piecewise cubic and
//! differ only in the two closure conditions:
//!
//! * natural: `s''(t_0) = s''(t_N) = 0`;
//! * not-a-knot: `s'''` continuous across `t_1` and `t_(N-1)`, i.e. the
//!   first two and last two pieces are each a single cubic.
//!
//! The construction solves the standard tridiagonal system for the second
//! derivatives `M_j = s''(t_j)`. For not-a-knot the endpoint conditions
//! `M_0 = 2 M_1 - M_2` and `M_N = 2 M_(N-1) - M_(N-2)` are eliminated
//! first; on an equispaced grid the eliminated first and last equations
//! decouple to `h M_1 = d_1` and `h M_(N-1) = d_(N-1)` where `d_j` is the
//! divided-difference load, leaving a strictly diagonally dominant interior
//! system. Pieces are evaluated from the usual cubic Hermite-style form in
//! `(M_j, M_(j+1), f_j, f_(j+1))`.

use crate::numerics::{tridiag_solve, NumericsError, PrecisionContext, Real};
use crate::spline::{SampleGrid, SplineError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicKind {
    Natural,
    NotAKnot,
}

impl CubicKind {
    pub fn label(&self) -> &'static str {
        match self {
            CubicKind::Natural => "natural",
            CubicKind::NotAKnot => "not-a-knot",
        }
    }
}

/// C^2 piecewise cubic through the samples; stores node second derivatives.
#[derive(Debug, Clone)]
pub struct CubicSpline<T> {
    kind: CubicKind,
    t_start: T,
    period: T,
    values: Vec<T>,
    second: Vec<T>,
    ctx: PrecisionContext,
}

/// Build a cubic spline of the requested kind. Natural needs `N >= 2`
/// intervals, not-a-knot `N >= 3` (the closure references four nodes).
pub fn build_cubic<T: Real>(
    samples: &SampleGrid<T>,
    kind: CubicKind,
    ctx: &PrecisionContext,
) -> Result<CubicSpline<T>, SplineError> {
    let n = samples.n();
    let min_intervals = match kind {
        CubicKind::Natural => 2,
        CubicKind::NotAKnot => 3,
    };
    if n < min_intervals {
        return Err(SplineError::InvalidSamples(format!(
            "{} cubic needs at least {min_intervals} intervals, got {n}",
            kind.label()
        )));
    }
    let f = samples.values();
    let h = samples.delta_t(ctx);
    let six = T::from_i64(6, ctx);
    let two = T::from_i64(2, ctx);
    let four = T::from_i64(4, ctx);

    // d_j = 6 (f_(j-1) - 2 f_j + f_(j+1)) / h^2 for interior nodes.
    let load = |j: usize| -> T {
        (f[j - 1].clone() - two.clone() * f[j].clone() + f[j + 1].clone()) * six.clone()
            / (h.clone() * h.clone())
    };

    let second = match kind {
        CubicKind::Natural => {
            // Unknowns M_1..M_(N-1); M_0 = M_N = 0.
            let dim = n - 1;
            let diag = vec![four.clone(); dim];
            let off = vec![T::one(ctx); dim.saturating_sub(1)];
            let rhs: Vec<T> = (1..n).map(load).collect();
            let interior = tridiag_solve(&off, &diag, &off, &rhs, ctx)
                .map_err(|e: NumericsError| SplineError::Numerics(e))?;
            let mut m = Vec::with_capacity(n + 1);
            m.push(T::zero(ctx));
            m.extend(interior);
            m.push(T::zero(ctx));
            m
        }
        CubicKind::NotAKnot => {
            // Eliminating M_0 = 2 M_1 - M_2 from the j = 1 equation
            // M_0 + 4 M_1 + M_2 = d_1 leaves 6 M_1 = d_1 (the M_2 terms
            // cancel), and symmetrically 6 M_(N-1) = d_(N-1) at the other
            // end; interior rows stay (1, 4, 1).
            let mut m = vec![T::zero(ctx); n + 1];
            if n == 3 {
                m[1] = load(1) / six.clone();
                m[2] = load(2) / six.clone();
            } else {
                let dim = n - 1;
                let mut diag = vec![four.clone(); dim];
                diag[0] = six.clone();
                diag[dim - 1] = six.clone();
                let mut lower = vec![T::one(ctx); dim - 1];
                let mut upper = vec![T::one(ctx); dim - 1];
                upper[0] = T::zero(ctx);
                lower[dim - 2] = T::zero(ctx);
                let rhs: Vec<T> = (1..n).map(load).collect();
                let interior = tridiag_solve(&lower, &diag, &upper, &rhs, ctx)
                    .map_err(|e: NumericsError| SplineError::Numerics(e))?;
                m[1..n].clone_from_slice(&interior);
            }
            m[0] = two.clone() * m[1].clone() - m[2].clone();
            m[n] = two.clone() * m[n - 1].clone() - m[n - 2].clone();
            m
        }
    };

    Ok(CubicSpline {
        kind,
        t_start: samples.t_start().clone(),
        period: samples.period().clone(),
        values: f.to_vec(),
        second,
        ctx: *ctx,
    })
}

impl<T: Real> CubicSpline<T> {
    pub fn kind(&self) -> CubicKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn t_start(&self) -> &T {
        &self.t_start
    }

    /// Knot spacing.
    pub fn delta_t(&self) -> T {
        self.h()
    }

    fn h(&self) -> T {
        self.period.clone() / T::from_i64(self.n() as i64, &self.ctx)
    }

    /// Evaluate derivative `beta` (0..=3) at offset `u` into piece `j`.
    pub fn eval_offset(&self, j: usize, u: &T, beta: usize) -> Result<T, SplineError> {
        if j >= self.n() {
            return Err(SplineError::OutOfDomain {
                t: j as f64,
                start: 0.0,
                end: (self.n() - 1) as f64,
            });
        }
        if beta > 3 {
            return Err(SplineError::DerivativeOrder { got: beta, max: 3 });
        }
        let ctx = &self.ctx;
        let h = self.h();
        let six = T::from_i64(6, ctx);
        let two = T::from_i64(2, ctx);
        let ma = self.second[j].clone();
        let mb = self.second[j + 1].clone();
        let fa = self.values[j].clone();
        let fb = self.values[j + 1].clone();
        let a = u.clone();
        let b = h.clone() - u.clone();
        // s(u) = M_j b^3/(6h) + M_(j+1) a^3/(6h)
        //      + (f_j/h - M_j h/6) b + (f_(j+1)/h - M_(j+1) h/6) a
        let lin_a = fb / h.clone() - mb.clone() * h.clone() / six.clone();
        let lin_b = fa / h.clone() - ma.clone() * h.clone() / six.clone();
        Ok(match beta {
            0 => {
                ma.clone() * b.clone() * b.clone() * b.clone() / (six.clone() * h.clone())
                    + mb.clone() * a.clone() * a.clone() * a.clone() / (six.clone() * h.clone())
                    + lin_b * b
                    + lin_a * a
            }
            1 => {
                -ma.clone() * b.clone() * b.clone() / (two.clone() * h.clone())
                    + mb.clone() * a.clone() * a.clone() / (two.clone() * h.clone())
                    - lin_b
                    + lin_a
            }
            2 => (ma.clone() * b + mb.clone() * a) / h,
            _ => (mb - ma) / h,
        })
    }

    /// Evaluate derivative `beta` at an absolute coordinate.
    pub fn eval(&self, t: &T, beta: usize) -> Result<T, SplineError> {
        let ctx = &self.ctx;
        let tau = t.clone() - self.t_start.clone();
        let tol = ctx.tolerance::<T>() * self.period.abs();
        if tau < -tol.clone() || tau > self.period.clone() + tol {
            return Err(SplineError::OutOfDomain {
                t: t.to_f64(),
                start: self.t_start.to_f64(),
                end: (self.t_start.clone() + self.period.clone()).to_f64(),
            });
        }
        let h = self.h();
        let j = ((tau.clone() / h.clone()).to_f64().floor() as i64)
            .clamp(0, self.n() as i64 - 1) as usize;
        let u = tau - h * T::from_i64(j as i64, ctx);
        self.eval_offset(j, &u, beta)
    }

    pub fn second_derivatives(&self) -> &[T] {
        &self.second
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::binary64()
    }

    fn grid(f: impl Fn(f64) -> f64, t0: f64, t1: f64, n: usize) -> SampleGrid<f64> {
        SampleGrid::from_fn(t0, t1 - t0, n, &ctx(), |t| f(*t)).unwrap()
    }

    #[test]
    fn interpolates_samples_exactly() {
        let c = ctx();
        let samples = grid(|t| (2.0 * t).sin() + 0.3 * t, 0.0, 2.0, 9);
        for kind in [CubicKind::Natural, CubicKind::NotAKnot] {
            let s = build_cubic(&samples, kind, &c).unwrap();
            for j in 0..=9 {
                let t = samples.node(j, &c);
                let v = s.eval(&t, 0).unwrap();
                assert!(
                    (v - samples.values()[j]).abs() <= 1e-12,
                    "{kind:?} node {j}"
                );
            }
        }
    }

    #[test]
    fn natural_endpoints_have_zero_curvature() {
        let c = ctx();
        let samples = grid(|t| (3.0 * t).cos() * (-0.5 * t).exp(), 0.0, 1.5, 11);
        let s = build_cubic(&samples, CubicKind::Natural, &c).unwrap();
        assert_eq!(s.second_derivatives()[0], 0.0);
        assert_eq!(s.second_derivatives()[11], 0.0);
        let end = s.eval(&1.5, 2).unwrap();
        assert!(end.abs() <= 1e-10, "s'' at right end: {end}");
    }

    /// Both kinds reproduce straight lines; not-a-knot reproduces any
    /// single cubic exactly because every closure then holds trivially.
    #[test]
    fn polynomial_reproduction() {
        let c = ctx();
        let line = grid(|t| 3.0 * t - 1.0, 0.0, 2.0, 7);
        for kind in [CubicKind::Natural, CubicKind::NotAKnot] {
            let s = build_cubic(&line, kind, &c).unwrap();
            for i in 0..50 {
                let t = 2.0 * i as f64 / 49.0;
                assert!((s.eval(&t, 0).unwrap() - (3.0 * t - 1.0)).abs() <= 1e-12);
            }
        }
        let cubic = |t: f64| t * t * t - 2.0 * t * t + 0.5 * t - 3.0;
        let samples = grid(cubic, 0.0, 2.0, 8);
        let s = build_cubic(&samples, CubicKind::NotAKnot, &c).unwrap();
        for i in 0..50 {
            let t = 2.0 * i as f64 / 49.0;
            let err = (s.eval(&t, 0).unwrap() - cubic(t)).abs();
            assert!(err <= 1e-11, "t={t}: err {err}");
        }
        // s''' = 6 everywhere for this data.
        assert!((s.eval(&0.1, 3).unwrap() - 6.0).abs() <= 1e-9);
        assert!((s.eval(&1.9, 3).unwrap() - 6.0).abs() <= 1e-9);
    }

    /// C^2 continuity at every interior node and the extra C^3 matching of
    /// not-a-knot at the second and second-to-last nodes.
    #[test]
    fn continuity_orders() {
        let c = ctx();
        let samples = grid(|t| 1.0 / (1.0 + t * t), -1.0, 1.0, 10);
        for kind in [CubicKind::Natural, CubicKind::NotAKnot] {
            let s = build_cubic(&samples, kind, &c).unwrap();
            let h = 2.0 / 10.0;
            for j in 1..10 {
                for beta in 0..=2 {
                    let left = s.eval_offset(j - 1, &h, beta).unwrap();
                    let right = s.eval_offset(j, &0.0, beta).unwrap();
                    assert!(
                        (left - right).abs() <= 1e-9 * left.abs().max(1.0),
                        "{kind:?} beta={beta} node {j}"
                    );
                }
            }
            if kind == CubicKind::NotAKnot {
                for j in [1usize, 9] {
                    let left = s.eval_offset(j - 1, &h, 3).unwrap();
                    let right = s.eval_offset(j, &0.0, 3).unwrap();
                    assert!(
                        (left - right).abs() <= 1e-9 * left.abs().max(1.0),
                        "third derivative not continuous at node {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn smallest_grids_and_errors() {
        let c = ctx();
        let three = grid(|t| t * t, 0.0, 1.0, 3);
        assert!(build_cubic(&three, CubicKind::NotAKnot, &c).is_ok());
        let s = build_cubic(&three, CubicKind::NotAKnot, &c).unwrap();
        // Quadratic data is a special cubic: reproduced exactly.
        assert!((s.eval(&0.4, 0).unwrap() - 0.16).abs() <= 1e-12);
        assert!(s.eval(&1.2, 0).is_err());
        assert!(s.eval(&0.5, 4).is_err());
    }

    /// Convergence sanity: quadrupling N shrinks the midpoint-sampled max
    /// error by roughly 4^4 on smooth periodicity-free data (interior
    /// O(h^4) behavior dominates for not-a-knot).
    #[test]
    fn not_a_knot_converges_at_fourth_order() {
        let c = ctx();
        let f = |t: f64| (2.0 * t).sin();
        let err = |n: usize| {
            let samples = grid(f, 0.0, 1.0, n);
            let s = build_cubic(&samples, CubicKind::NotAKnot, &c).unwrap();
            let mut worst = 0.0f64;
            for i in 0..n {
                let t = (i as f64 + 0.5) / n as f64;
                worst = worst.max((s.eval(&t, 0).unwrap() - f(t)).abs());
            }
            worst
        };
        let e1 = err(16);
        let e2 = err(64);
        let ratio = e1 / e2;
        assert!(
            ratio > 100.0,
            "expected ~256x improvement from 4x refinement, got {ratio}"
        );
    }
}
