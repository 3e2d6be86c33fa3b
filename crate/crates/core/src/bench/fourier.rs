//! Closed-form Fourier transform of the piecewise representation.
//!
//! With pieces `s(t_j + u) = sum_mu d[mu][j] u^mu / mu!`, the transform
//! `F(w) = int_0^T s(t) e^(-iwt) dt` splits into per-piece moments
//! `K_mu(w) = int_0^dt (u^mu / mu!) e^(-iwu) du`, shared by every piece:
//!
//! `F(w) = sum_j e^(-iw t_j) sum_mu d[mu][j] K_mu(w)`.
//!
//! Integration by parts links consecutive moments:
//! `K_mu = (K_(mu-1) - (dt^mu / mu!) e^(-iw dt)) / (iw)`.
//! Running this upward loses digits when `|w dt|` is small (the numerator
//! cancels), so in that regime the top moment comes from its power series
//! and the recurrence runs downward, `K_(mu-1) = iw K_mu + (dt^mu/mu!)
//! e^(-iw dt)`, which only adds a dominant term and is stable. Upward is
//! used once `|w dt|` clears the degree, where it is the stable direction.

use crate::numerics::{Complex, PrecisionContext, Real};
use crate::spline::{SplineError, SplineFunction};

/// Per-piece polynomial moments `K_0..K_theta` at one frequency.
pub fn piece_moments<T: Real>(
    theta: usize,
    dt: &T,
    omega: &T,
    ctx: &PrecisionContext,
) -> Vec<Complex<T>> {
    let iw = Complex::new(T::zero(ctx), omega.clone());
    // e^(-iw dt)
    let tail = Complex::expi(&(-(omega.clone() * dt.clone())));
    // dt^mu / mu! for mu = 0..=theta
    let mut weights = Vec::with_capacity(theta + 2);
    weights.push(T::one(ctx));
    for mu in 1..=theta + 1 {
        let prev = weights[mu - 1].clone();
        weights.push(prev * dt.clone() / T::from_i64(mu as i64, ctx));
    }

    let wdt = (omega.clone() * dt.clone()).abs().to_f64();
    let mut k = vec![Complex::zero(ctx); theta + 1];
    if wdt < theta as f64 + 2.0 {
        // Power series for the top moment:
        // K_theta = (dt^(theta+1)/theta!) sum_m (-iw dt)^m
        //           * [1 / (m! (theta+m+1))].
        let x = Complex::new(T::zero(ctx), -(omega.clone() * dt.clone()));
        let mut term = Complex::from_re(
            T::one(ctx) / T::from_i64(theta as i64 + 1, ctx),
            ctx,
        );
        let mut sum = term.clone();
        for m in 1..200usize {
            let ratio = T::from_i64((theta + m) as i64, ctx)
                / (T::from_i64(m as i64, ctx) * T::from_i64((theta + m + 1) as i64, ctx));
            term = term.mul_ref(&x).scale(&ratio);
            sum = sum.add_ref(&term);
            if term.abs() <= ctx.tolerance::<T>() * sum.abs() {
                break;
            }
        }
        let lead = weights[theta].clone() * dt.clone();
        k[theta] = sum.scale(&lead);
        for mu in (1..=theta).rev() {
            k[mu - 1] = iw.mul_ref(&k[mu]).add_ref(&tail.scale(&weights[mu]));
        }
    } else {
        // K_0 = (1 - e^(-iw dt)) / (iw), then upward.
        let one = Complex::one(ctx);
        k[0] = one.sub_ref(&tail).div(&iw);
        for mu in 1..=theta {
            k[mu] = k[mu - 1].sub_ref(&tail.scale(&weights[mu])).div(&iw);
        }
    }
    k
}

/// `int_0^T s(t) e^(-iwt) dt` for each requested frequency, exactly (to
/// rounding) from the piecewise polynomial form. `w = 0` delegates to the
/// antiderivative-based [`SplineFunction::integrate`].
pub fn spline_fourier_transform<T: Real>(
    s: &SplineFunction<T>,
    omegas: &[T],
    ctx: &PrecisionContext,
) -> Result<Vec<Complex<T>>, SplineError> {
    let theta = s.theta();
    let n = s.n();
    let dt = s.delta_t();
    let zero = T::zero(ctx);
    let mut out = Vec::with_capacity(omegas.len());
    for omega in omegas {
        if *omega == zero {
            let t_end = s.t_start().clone() + s.period().clone();
            let total = s.integrate(s.t_start(), &t_end)?;
            out.push(Complex::from_re(total, ctx));
            continue;
        }
        let k = piece_moments(theta, &dt, omega, ctx);
        let mut acc = Complex::zero(ctx);
        for j in 0..n {
            let mut piece = Complex::zero(ctx);
            for mu in 0..=theta {
                let d = &s.deriv_row(mu)?[j];
                piece = piece.add_ref(&k[mu].scale(d));
            }
            let t_j = s.t_start().clone() + dt.clone() * T::from_i64(j as i64, ctx);
            let phase = Complex::expi(&(-(omega.clone() * t_j)));
            piece.mul_add_into(&phase, &mut acc);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Closed-form transform of `cos(60t) e^(-2t)` truncated to `[0, T']`:
/// half-sum of the two complex exponential lines at `+-60`.
pub fn ft_demo_reference<T: Real>(omega: &T, ctx: &PrecisionContext) -> Complex<T> {
    let t_end = T::from_ratio(8192, 100, ctx);
    let half = T::from_ratio(1, 2, ctx);
    let line = |shift: i64| -> Complex<T> {
        // (1 - e^(-(2 + i(w + shift)) T')) / (2 + i(w + shift))
        let a = Complex::new(T::from_i64(2, ctx), omega.clone() + T::from_i64(shift, ctx));
        let e = (-a.scale(&t_end)).exp();
        Complex::one(ctx).sub_ref(&e).div(&a)
    };
    line(-60).add_ref(&line(60)).scale(&half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spline::{build_spline, SampleGrid};

    fn ctx() -> PrecisionContext {
        PrecisionContext::binary64()
    }

    fn sample_spline(theta: usize, n: usize) -> SplineFunction<f64> {
        let c = ctx();
        let samples =
            SampleGrid::from_fn(0.0, 2.0, n, &c, |t| (1.3 * t).sin() + 0.4 * t.cos()).unwrap();
        let mut b = vec![samples.b0()];
        b.extend((1..theta).map(|m| 0.1 * m as f64));
        build_spline(&samples, theta, &b, &c).unwrap()
    }

    #[test]
    fn zero_frequency_equals_integral() {
        let c = ctx();
        let s = sample_spline(3, 9);
        let ft = spline_fourier_transform(&s, &[0.0], &c).unwrap();
        let direct = s.integrate(&0.0, &2.0).unwrap();
        assert!((ft[0].re - direct).abs() <= 1e-12 * direct.abs().max(1.0));
        assert_eq!(ft[0].im, 0.0);
    }

    /// Constant spline: F(w) = c (1 - e^(-iwT)) / (iw).
    #[test]
    fn constant_signal_closed_form() {
        let c = ctx();
        let samples = SampleGrid::from_fn(0.0, 2.0, 8, &c, |_| 2.5).unwrap();
        let s = build_spline(&samples, 1, &[0.0], &c).unwrap();
        for w in [0.7, 3.0, 40.0] {
            let ft = spline_fourier_transform(&s, &[w], &c).unwrap()[0].clone();
            let expect = Complex::one(&c)
                .sub_ref(&Complex::expi(&(-w * 2.0)))
                .div(&Complex::new(0.0, w))
                .scale(&2.5);
            assert!(
                (ft.sub_ref(&expect)).abs() <= 1e-12,
                "w={w}: {ft:?} vs {expect:?}"
            );
        }
    }

    /// Composite Simpson oracle across both recurrence regimes. The switch
    /// for a cubic sits at |w dt| = 5; with dt = 2/9 that is w = 22.5, so
    /// w = 5 runs downward and w = 160 runs upward.
    #[test]
    fn matches_quadrature_in_both_regimes() {
        let c = ctx();
        let s = sample_spline(3, 9);
        for w in [5.0f64, 160.0] {
            let ft = spline_fourier_transform(&s, &[w], &c).unwrap()[0].clone();
            let panels_per_piece = 40_000usize;
            let mut acc = Complex::zero(&c);
            let h = 2.0 / (9.0 * panels_per_piece as f64) / 2.0;
            for j in 0..9 {
                for p in 0..panels_per_piece {
                    let a = j as f64 * (2.0 / 9.0) + 2.0 * h * p as f64;
                    for (node, weight) in [(a, 1.0), (a + h, 4.0), (a + 2.0 * h, 1.0)] {
                        let t = node.min(2.0);
                        let v = s.eval(&t, 0).unwrap() * weight * h / 3.0;
                        acc = acc.add_ref(&Complex::expi(&(-w * t)).scale(&v));
                    }
                }
            }
            let err = ft.sub_ref(&acc).abs();
            assert!(
                err <= 1e-8 * ft.abs().max(1e-3),
                "w={w}: |{ft:?} - {acc:?}| = {err}"
            );
        }
    }

    /// Linearity in the spline and conjugate symmetry for real data.
    #[test]
    fn linear_and_conjugate_symmetric() {
        let c = ctx();
        let s1 = sample_spline(3, 9);
        let samples2 =
            SampleGrid::from_fn(0.0, 2.0, 9, &c, |t| 0.7 * (2.0 * t).cos() - t).unwrap();
        let s2 = build_spline(&samples2, 3, &[samples2.b0(), 0.2, -0.1], &c).unwrap();
        // Sum spline: derivatives add, so FT must add.
        let mut b_sum = vec![samples2.b0() + sample_grid_b0(&c)];
        b_sum.extend([0.1 + 0.2, 0.2 - 0.1]);
        let samples_sum = SampleGrid::from_fn(0.0, 2.0, 9, &c, |t| {
            (1.3 * t).sin() + 0.4 * t.cos() + 0.7 * (2.0 * t).cos() - t
        })
        .unwrap();
        let s_sum = build_spline(&samples_sum, 3, &b_sum, &c).unwrap();
        for w in [1.5f64, -1.5, 30.0, -30.0] {
            let f1 = spline_fourier_transform(&s1, &[w], &c).unwrap()[0].clone();
            let f2 = spline_fourier_transform(&s2, &[w], &c).unwrap()[0].clone();
            let fs = spline_fourier_transform(&s_sum, &[w], &c).unwrap()[0].clone();
            assert!(fs.sub_ref(&f1.add_ref(&f2)).abs() <= 1e-10 * fs.abs().max(1.0));
            let fneg = spline_fourier_transform(&s1, &[-w], &c).unwrap()[0].clone();
            assert!(fneg.sub_ref(&f1.conj()).abs() <= 1e-12 * f1.abs().max(1.0));
        }
    }

    fn sample_grid_b0(c: &PrecisionContext) -> f64 {
        SampleGrid::from_fn(0.0, 2.0, 9, c, |t: &f64| (1.3 * t).sin() + 0.4 * t.cos())
            .unwrap()
            .b0()
    }

    /// The closed-form reference transform against brute-force quadrature.
    #[test]
    fn demo_reference_matches_quadrature() {
        let c = ctx();
        for w in [0.0f64, 30.0, 59.5, 60.0, 61.0, 100.0] {
            let reference = ft_demo_reference(&w, &c);
            // Simpson with enough panels to resolve cos(60t) over 81.92.
            let t_end = 81.92;
            let panels = 400_000usize;
            let h = t_end / panels as f64 / 2.0;
            let mut acc = Complex::zero(&c);
            for p in 0..panels {
                let a = 2.0 * h * p as f64;
                for (node, weight) in [(a, 1.0), (a + h, 4.0), (a + 2.0 * h, 1.0)] {
                    let v = (60.0 * node).cos() * (-2.0 * node).exp() * weight * h / 3.0;
                    acc = acc.add_ref(&Complex::expi(&(-w * node)).scale(&v));
                }
            }
            let err = reference.sub_ref(&acc).abs();
            assert!(err <= 1e-7, "w={w}: err {err}");
        }
    }
}
