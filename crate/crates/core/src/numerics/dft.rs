//! Forward and inverse discrete Fourier transforms.
//!
//! The workhorse is direct summation with a precomputed twiddle table:
//! typical grid sizes here are odd (parity constraints favour odd N), so a
//! general fast transform buys little, while direct summation with exact
//! index reduction `(k*j) mod N` keeps the angle arguments small and the
//! rounding behaviour flat across k. Power-of-two lengths (the Fourier
//! transform demo uses N = 8192) take an iterative radix-2 path instead.

use super::{Complex, NumericsError, PrecisionContext, Real};

/// Reusable transform plan for a fixed length.
///
/// Holds the twiddle table `w[m] = exp(-i 2 pi m / n)`; constructing it is
/// the only place trigonometric functions are evaluated. The table is built
/// for `m <= n/2` and mirrored by conjugation, so `w[n - m]` is exactly
/// `conj(w[m])`.
pub struct DftPlan<T> {
    n: usize,
    w: Vec<Complex<T>>,
    ctx: PrecisionContext,
}

impl<T: Real> DftPlan<T> {
    pub fn new(n: usize, ctx: &PrecisionContext) -> Result<Self, NumericsError> {
        if n == 0 {
            return Err(NumericsError::EmptyInput("transform length"));
        }
        let tau = T::pi(ctx) + T::pi(ctx);
        let mut w = vec![Complex::zero(ctx); n];
        for m in 0..=n / 2 {
            // Quadrant multiples are exact by construction; downstream code
            // relies on w[n/2] being exactly -1 (determinant parity checks).
            let z = if m == 0 {
                Complex::one(ctx)
            } else if 2 * m == n {
                Complex::new(-T::one(ctx), T::zero(ctx))
            } else if 4 * m == n {
                Complex::new(T::zero(ctx), -T::one(ctx))
            } else {
                let angle =
                    -(tau.clone() * T::from_i64(m as i64, ctx) / T::from_i64(n as i64, ctx));
                Complex::expi(&angle)
            };
            if m > 0 {
                w[n - m] = z.conj();
            }
            w[m] = z;
        }
        Ok(Self {
            n,
            w,
            ctx: *ctx,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `exp(-i 2 pi m / n)` for any integer `m` (reduced mod `n`).
    pub fn twiddle(&self, m: i64) -> &Complex<T> {
        &self.w[m.rem_euclid(self.n as i64) as usize]
    }

    /// Forward transform: `X[k] = sum_j x[j] exp(-i 2 pi k j / n)`.
    pub fn forward(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>, NumericsError> {
        self.check_len(x)?;
        if self.use_radix2() {
            return Ok(self.radix2(x, false));
        }
        let mut out = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let mut acc = Complex::zero(&self.ctx);
            for (j, xj) in x.iter().enumerate() {
                xj.mul_add_into(&self.w[k * j % self.n], &mut acc);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Inverse transform: `x[j] = (1/n) sum_k X[k] exp(+i 2 pi k j / n)`.
    pub fn inverse(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>, NumericsError> {
        self.check_len(x)?;
        let inv_n = T::from_i64(self.n as i64, &self.ctx).recip();
        if self.use_radix2() {
            let mut out = self.radix2(x, true);
            for v in &mut out {
                *v = v.scale(&inv_n);
            }
            return Ok(out);
        }
        let mut out = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let mut acc = Complex::zero(&self.ctx);
            for (k, xk) in x.iter().enumerate() {
                // conj(w[m]) = exp(+i 2 pi m / n)
                xk.mul_add_into(&self.w[k * j % self.n].conj(), &mut acc);
            }
            out.push(acc.scale(&inv_n));
        }
        Ok(out)
    }

    fn check_len(&self, x: &[Complex<T>]) -> Result<(), NumericsError> {
        if x.len() != self.n {
            return Err(NumericsError::DimensionMismatch {
                context: "transform input length vs plan",
                left: x.len(),
                right: self.n,
            });
        }
        Ok(())
    }

    fn use_radix2(&self) -> bool {
        self.n.is_power_of_two() && self.n >= 4
    }

    /// Iterative radix-2 Cooley-Tukey, sharing the plan's twiddle table.
    /// `inverse` flips the twiddle sign; scaling is left to the caller.
    fn radix2(&self, x: &[Complex<T>], inverse: bool) -> Vec<Complex<T>> {
        let n = self.n;
        let mut a: Vec<Complex<T>> = x.to_vec();
        let bits = n.trailing_zeros();
        for i in 0..n {
            let r = (i as u64).reverse_bits() >> (64 - bits) as u64;
            let r = r as usize;
            if r > i {
                a.swap(i, r);
            }
        }
        let mut size = 2usize;
        while size <= n {
            let stride = n / size;
            let half = size / 2;
            for start in (0..n).step_by(size) {
                for idx in 0..half {
                    let w = &self.w[idx * stride];
                    let w = if inverse { w.conj() } else { w.clone() };
                    let t = a[start + idx + half].mul_ref(&w);
                    let u = a[start + idx].clone();
                    a[start + idx] = u.add_ref(&t);
                    a[start + idx + half] = u.sub_ref(&t);
                }
            }
            size <<= 1;
        }
        a
    }
}

/// One-shot forward transform.
pub fn dft<T: Real>(
    x: &[Complex<T>],
    ctx: &PrecisionContext,
) -> Result<Vec<Complex<T>>, NumericsError> {
    DftPlan::new(x.len(), ctx)?.forward(x)
}

/// One-shot inverse transform.
pub fn idft<T: Real>(
    x: &[Complex<T>],
    ctx: &PrecisionContext,
) -> Result<Vec<Complex<T>>, NumericsError> {
    DftPlan::new(x.len(), ctx)?.inverse(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::MpFloat;

    fn ctx() -> PrecisionContext {
        PrecisionContext::binary64()
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    /// Literal definition, kept deliberately naive: per-term angle, no table.
    fn dft_oracle(x: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let n = x.len();
        (0..n)
            .map(|k| {
                let mut re = 0.0;
                let mut im = 0.0;
                for (j, xj) in x.iter().enumerate() {
                    let ang = -2.0 * std::f64::consts::PI * (k as f64) * (j as f64) / (n as f64);
                    re += xj.re * ang.cos() - xj.im * ang.sin();
                    im += xj.re * ang.sin() + xj.im * ang.cos();
                }
                c(re, im)
            })
            .collect()
    }

    fn assert_close(a: &[Complex<f64>], b: &[Complex<f64>], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!(
                (x.re - y.re).abs() < tol && (x.im - y.im).abs() < tol,
                "{x:?} vs {y:?}"
            );
        }
    }

    #[test]
    fn constant_input_concentrates_at_k0() {
        let x = vec![c(2.5, -1.0); 9];
        let out = dft(&x, &ctx()).unwrap();
        assert!((out[0].re - 22.5).abs() < 1e-13);
        assert!((out[0].im + 9.0).abs() < 1e-13);
        for v in &out[1..] {
            assert!(v.abs() < 1e-13);
        }
    }

    #[test]
    fn impulse_transforms_to_ones() {
        let mut x = vec![c(0.0, 0.0); 7];
        x[0] = c(1.0, 0.0);
        let out = dft(&x, &ctx()).unwrap();
        for v in &out {
            assert!((v.re - 1.0).abs() < 1e-14 && v.im.abs() < 1e-14);
        }
    }

    #[test]
    fn matches_naive_oracle_length_7() {
        let x: Vec<_> = (0..7)
            .map(|j| c((j as f64 * 0.37).sin(), (j as f64 * 0.71).cos()))
            .collect();
        let got = dft(&x, &ctx()).unwrap();
        let want = dft_oracle(&x);
        assert_close(&got, &want, 1e-12);
    }

    #[test]
    fn radix2_matches_direct_summation() {
        let x: Vec<_> = (0..64)
            .map(|j| c((j as f64 * 0.13).cos(), (j as f64 * 0.29).sin()))
            .collect();
        let plan = DftPlan::new(64, &ctx()).unwrap();
        assert!(plan.use_radix2());
        let fast = plan.forward(&x).unwrap();
        let slow = dft_oracle(&x);
        assert_close(&fast, &slow, 1e-11);
        let back = plan.inverse(&fast).unwrap();
        assert_close(&back, &x, 1e-12);
    }

    #[test]
    fn inverse_recovers_input_odd_and_even() {
        for n in [5usize, 8, 31] {
            let x: Vec<_> = (0..n)
                .map(|j| c(1.0 / (1 + j) as f64, (j as f64).sqrt()))
                .collect();
            let plan = DftPlan::new(n, &ctx()).unwrap();
            let back = plan.inverse(&plan.forward(&x).unwrap()).unwrap();
            assert_close(&back, &x, 1e-12);
        }
    }

    #[test]
    fn parseval_energy_is_preserved() {
        let n = 31;
        let x: Vec<_> = (0..n)
            .map(|j| c((j as f64 * 1.7).sin(), 0.25 * j as f64))
            .collect();
        let out = dft(&x, &ctx()).unwrap();
        let time: f64 = x.iter().map(|v| v.norm_sqr()).sum();
        let freq: f64 = out.iter().map(|v| v.norm_sqr()).sum();
        assert!((freq / (n as f64) - time).abs() < 1e-10 * time.max(1.0));
    }

    #[test]
    fn twiddle_reduces_any_integer_index() {
        let plan = DftPlan::<f64>::new(12, &ctx()).unwrap();
        let a = plan.twiddle(5).clone();
        let b = plan.twiddle(5 + 12 * 7).clone();
        let c_ = plan.twiddle(5 - 24).clone();
        assert_eq!(a, b);
        assert_eq!(a, c_);
    }

    #[test]
    fn zero_length_is_rejected() {
        assert!(DftPlan::<f64>::new(0, &ctx()).is_err());
        let plan = DftPlan::<f64>::new(4, &ctx()).unwrap();
        assert!(plan.forward(&[]).is_err());
    }

    #[test]
    fn high_precision_matches_binary64_on_small_input() {
        let hctx = PrecisionContext::new(40).unwrap();
        let x64: Vec<Complex<f64>> = (0..9).map(|j| c((j as f64 * 0.4).sin(), 0.0)).collect();
        let xhp: Vec<Complex<MpFloat>> = x64
            .iter()
            .map(|v| Complex::new(MpFloat::from_f64(v.re, &hctx), MpFloat::from_f64(v.im, &hctx)))
            .collect();
        let out64 = dft(&x64, &ctx()).unwrap();
        let outhp = dft(&xhp, &hctx).unwrap();
        for (a, b) in out64.iter().zip(&outhp) {
            assert!((a.re - b.re.to_f64()).abs() < 1e-13);
            assert!((a.im - b.im.to_f64()).abs() < 1e-13);
        }
    }
}
