//! The analytic test functions the error tables are computed against.
//!
//! Each function carries closed-form derivatives of every order so exact
//! boundary vectors can be formed for any degree. The derivative formulas
//! avoid numerical differentiation entirely:
//!
//! * `g1` and the FT demo signal are damped oscillations, so all
//!   derivatives are real/imaginary parts of `z^mu e^(z t)` for a complex
//!   rate `z`.
//! * `g2`'s Gaussian term differentiates through the Hermite recurrence
//!   `H_(mu+1)(x) = 2x H_mu(x) - 2 mu H_(mu-1)(x)`.
//! * `g3` is a polynomial with falling-factorial derivatives.
//! * `g4 = 1/(1+25(t-1)^2)` is `Re[1/(1+5iu)]`, whose derivatives are
//!   `mu! Re[(-5i)^mu (1+5iu)^-(mu+1)]`.

use crate::numerics::{Complex, PrecisionContext, Real};
use crate::spline::SampleGrid;

use super::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestFunctionId {
    G1,
    G2,
    G3,
    G4,
    FtDemo,
}

impl TestFunctionId {
    pub const ALL: [TestFunctionId; 5] = [
        TestFunctionId::G1,
        TestFunctionId::G2,
        TestFunctionId::G3,
        TestFunctionId::G4,
        TestFunctionId::FtDemo,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TestFunctionId::G1 => "g1",
            TestFunctionId::G2 => "g2",
            TestFunctionId::G3 => "g3",
            TestFunctionId::G4 => "g4",
            TestFunctionId::FtDemo => "ft_demo",
        }
    }

    pub fn parse(s: &str) -> Result<Self, BenchError> {
        match s {
            "g1" => Ok(TestFunctionId::G1),
            "g2" => Ok(TestFunctionId::G2),
            "g3" => Ok(TestFunctionId::G3),
            "g4" => Ok(TestFunctionId::G4),
            "ft_demo" | "ft-demo" => Ok(TestFunctionId::FtDemo),
            other => Err(BenchError::InvalidConfig(format!(
                "unknown test function {other:?} (expected g1..g4 or ft_demo)"
            ))),
        }
    }

    pub fn formula(&self) -> &'static str {
        match self {
            TestFunctionId::G1 => "sin(3t) exp(-t) on [0, 2pi]",
            TestFunctionId::G2 => "2 exp(-500(t-1/2)^2) + exp(-7t/2) on [0, 1]",
            TestFunctionId::G3 => "(t-2)^9 + (t-2)^8 + (t-2)^4 + (t-2) on [0, 2]",
            TestFunctionId::G4 => "1/(1 + 25(t-1)^2) on [0, 2]",
            TestFunctionId::FtDemo => "cos(60t) exp(-2t) on [0, 81.92]",
        }
    }

    /// Domain `[0, T]`.
    pub fn domain_end<T: Real>(&self, ctx: &PrecisionContext) -> T {
        match self {
            TestFunctionId::G1 => {
                T::from_i64(2, ctx) * T::pi(ctx)
            }
            TestFunctionId::G2 => T::one(ctx),
            TestFunctionId::G3 | TestFunctionId::G4 => T::from_i64(2, ctx),
            TestFunctionId::FtDemo => T::from_ratio(8192, 100, ctx),
        }
    }

    pub fn value<T: Real>(&self, t: &T, ctx: &PrecisionContext) -> T {
        self.derivative(t, 0, ctx)
    }

    /// `mu`-th derivative at `t` (`mu = 0` is the value itself).
    pub fn derivative<T: Real>(&self, t: &T, mu: usize, ctx: &PrecisionContext) -> T {
        match self {
            TestFunctionId::G1 => {
                // Im[z^mu e^(z t)], z = -1 + 3i.
                let z = Complex::new(T::from_i64(-1, ctx), T::from_i64(3, ctx));
                let zp = z.powu(mu as u32, ctx);
                zp.mul_ref(&z.scale(t).exp()).im
            }
            TestFunctionId::FtDemo => {
                // Re[z^mu e^(z t)], z = -2 + 60i.
                let z = Complex::new(T::from_i64(-2, ctx), T::from_i64(60, ctx));
                let zp = z.powu(mu as u32, ctx);
                zp.mul_ref(&z.scale(t).exp()).re
            }
            TestFunctionId::G2 => {
                // 2 a^(mu/2) (-1)^mu H_mu(sqrt(a) u) e^(-a u^2) + (-7/2)^mu e^(-7t/2),
                // a = 500, u = t - 1/2, physicists' Hermite polynomials.
                let a = T::from_i64(500, ctx);
                let sqrt_a = a.sqrt();
                let u = t.clone() - T::from_ratio(1, 2, ctx);
                let x = sqrt_a.clone() * u.clone();
                let mut h_prev = T::one(ctx);
                let mut h = if mu == 0 {
                    T::one(ctx)
                } else {
                    T::from_i64(2, ctx) * x.clone()
                };
                for m in 1..mu {
                    let next = T::from_i64(2, ctx) * x.clone() * h.clone()
                        - T::from_i64(2 * m as i64, ctx) * h_prev.clone();
                    h_prev = h;
                    h = next;
                }
                let gauss = (-(a * u.clone() * u)).exp();
                let mut scale = T::from_i64(2, ctx);
                for _ in 0..mu {
                    scale = scale * (-sqrt_a.clone());
                }
                let rate = T::from_ratio(-7, 2, ctx);
                let decay = (rate.clone() * t.clone()).exp() * rate.powi(mu as i32);
                scale * h * gauss + decay
            }
            TestFunctionId::G3 => {
                // Sum of falling-factorial derivatives of (t-2)^p.
                let u = t.clone() - T::from_i64(2, ctx);
                let mut acc = T::zero(ctx);
                for p in [9usize, 8, 4, 1] {
                    if mu > p {
                        continue;
                    }
                    let mut coeff: i64 = 1;
                    for i in 0..mu {
                        coeff *= (p - i) as i64;
                    }
                    acc += T::from_i64(coeff, ctx) * u.powi((p - mu) as i32);
                }
                acc
            }
            TestFunctionId::G4 => {
                // mu! Re[(-5i)^mu (1 + 5iu)^-(mu+1)], u = t - 1.
                let u = t.clone() - T::one(ctx);
                let five = T::from_i64(5, ctx);
                let base = Complex::new(T::one(ctx), five.clone() * u);
                let inv_pow = base.recip(ctx).powu(mu as u32 + 1, ctx);
                let neg_5i = Complex::new(T::zero(ctx), -five);
                let mut fact = T::one(ctx);
                for i in 1..=mu {
                    fact = fact * T::from_i64(i as i64, ctx);
                }
                neg_5i.powu(mu as u32, ctx).mul_ref(&inv_pow).scale(&fact).re
            }
        }
    }

    /// `N + 1` equispaced samples over the function's own domain.
    pub fn sample<T: Real>(
        &self,
        n: usize,
        ctx: &PrecisionContext,
    ) -> Result<SampleGrid<T>, BenchError> {
        let grid = SampleGrid::from_fn(T::zero(ctx), self.domain_end(ctx), n, ctx, |t| {
            self.value(t, ctx)
        })?;
        Ok(grid)
    }

    /// Exact boundary differences `b_mu = g^(mu)(T) - g^(mu)(0)` for
    /// `mu = 1..theta-1`, feeding the exact-BC provider.
    pub fn exact_diffs<T: Real>(&self, theta: usize, ctx: &PrecisionContext) -> Vec<T> {
        let t0 = T::zero(ctx);
        let t1: T = self.domain_end(ctx);
        (1..theta)
            .map(|mu| self.derivative(&t1, mu, ctx) - self.derivative(&t0, mu, ctx))
            .collect()
    }
}
