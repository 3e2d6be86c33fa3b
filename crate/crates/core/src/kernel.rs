//! Per-frequency linear systems behind the spline construction.
//!
//! Taking the DFT of the defining equations of a degree `theta` piecewise
//! interpolant turns them into one small system per frequency `k`:
//!
//! ```text
//! M(theta, k) F(theta, k) = B + C(k)
//! ```
//!
//! where the unknowns `F` are the DFTs of the node derivative sequences, `B`
//! collects the endpoint derivative differences and `C(k)` couples in the
//! sample spectrum. `M(theta, k)` is upper Hessenberg and Toeplitz, built
//! from the coefficients
//!
//! ```text
//! J(0, k) = z_k - 1,    J(p, k) = (dt^p / p!) z_k   (p >= 1),
//! ```
//!
//! with `z_k = exp(-i 2 pi k / N)`; entry `(mu, nu)` of `M` is
//! `J(nu - mu + 1, k)`. Its determinant has the closed form
//!
//! ```text
//! det M(theta, k) = (dt^theta / theta!) * sum_q A(theta, q) z_k^(theta - q)
//! ```
//!
//! over the Eulerian numbers `A`, which is how this module evaluates it: the
//! coefficients are exact integers, so the determinant inherits the full
//! working precision and its zero set is known exactly. In particular the
//! alternating Eulerian sum vanishes iff `theta` is even, so `det = 0`
//! exactly when `theta` and `N` are both even and `k = N/2`: the parity
//! constraint enforced by [`KernelConfig::new`].
//!
//! Inverse entries on and below the diagonal also have a determinant-ratio
//! closed form; entries above the diagonal do not (the ratio form breaks
//! down there), so [`SpectralKernel::inverse_m`] fills them from an LU
//! inverse instead.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::numerics::{
    lu_inverse_graded, Complex, DenseMatrix, DftPlan, NumericsError, PrecisionContext, Real,
};

/// Errors from kernel construction and evaluation.
#[derive(Debug, Error)]
pub enum KernelError {
    /// Even degree with an even number of intervals: the frequency `N/2`
    /// system is exactly singular and no interpolant of this degree exists
    /// on this grid.
    #[error("parity violation: degree {theta} and N = {n} are both even, the k = N/2 system is singular")]
    ParityViolation { theta: usize, n: usize },
    #[error("invalid kernel configuration: {0}")]
    InvalidConfig(String),
    #[error("{what} = {got} out of range (max {max})")]
    IndexOutOfRange {
        what: &'static str,
        got: usize,
        max: usize,
    },
    #[error("Eulerian number A({theta}, {q}) undefined: q must be below max(theta, 1)")]
    EulerianDomain { theta: usize, q: usize },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Eulerian number `A(theta, q)` as an exact integer.
///
/// `A(theta, q) = sum_{k=0}^{q} (-1)^k C(theta+1, k) (q+1-k)^theta`.
pub fn eulerian(theta: usize, q: usize) -> Result<BigInt, KernelError> {
    if q >= theta.max(1) {
        return Err(KernelError::EulerianDomain { theta, q });
    }
    let mut acc = BigInt::zero();
    let mut binom = BigInt::one(); // C(theta+1, k), updated multiplicatively
    for k in 0..=q {
        let base = BigInt::from((q + 1 - k) as u64);
        let term = &binom * base.pow(theta as u32);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        binom = binom * BigInt::from((theta + 1 - k) as u64) / BigInt::from((k + 1) as u64);
    }
    Ok(acc)
}

/// The full row `A(theta, 0..theta)`; row 0 is `[1]` by convention.
pub fn eulerian_row(theta: usize) -> Vec<BigInt> {
    (0..theta.max(1))
        .map(|q| eulerian(theta, q).expect("q below max(theta, 1)"))
        .collect()
}

/// Validated problem geometry: degree, interval count, spacing, precision.
#[derive(Debug, Clone)]
pub struct KernelConfig<T> {
    theta: usize,
    n: usize,
    delta_t: T,
    ctx: PrecisionContext,
}

impl<T: Real> KernelConfig<T> {
    pub fn new(
        theta: usize,
        n: usize,
        delta_t: T,
        ctx: &PrecisionContext,
    ) -> Result<Self, KernelError> {
        if theta == 0 {
            return Err(KernelError::InvalidConfig("degree must be at least 1".into()));
        }
        if n < 2 {
            return Err(KernelError::InvalidConfig(format!(
                "need at least 2 intervals, got {n}"
            )));
        }
        if !(delta_t > T::zero(ctx)) || !delta_t.is_finite() {
            return Err(KernelError::InvalidConfig(
                "interval length must be positive and finite".into(),
            ));
        }
        if theta % 2 == 0 && n % 2 == 0 {
            return Err(KernelError::ParityViolation { theta, n });
        }
        Ok(Self {
            theta,
            n,
            delta_t,
            ctx: *ctx,
        })
    }

    pub fn theta(&self) -> usize {
        self.theta
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn delta_t(&self) -> &T {
        &self.delta_t
    }
    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }
}

/// Precomputed per-frequency data for one `(theta, N, dt)` problem.
///
/// Holds the transform plan (twiddles `z_k`), the scale factors `dt^p / p!`
/// and the determinant table `det M(theta', k)` for all `theta' <= theta`.
pub struct SpectralKernel<T> {
    cfg: KernelConfig<T>,
    plan: DftPlan<T>,
    /// `dets[tp][k] = det M(tp, k)`; row 0 is identically 1.
    dets: Vec<Vec<Complex<T>>>,
    /// `dt^p / p!` for `p = 0..=theta`.
    pow_scale: Vec<T>,
}

impl<T: Real> SpectralKernel<T> {
    pub fn new(cfg: KernelConfig<T>) -> Result<Self, KernelError> {
        let ctx = cfg.ctx;
        let n = cfg.n;
        let theta = cfg.theta;
        let plan = DftPlan::new(n, &ctx)?;

        let mut pow_scale = Vec::with_capacity(theta + 1);
        pow_scale.push(T::one(&ctx));
        for p in 1..=theta {
            let prev = pow_scale[p - 1].clone();
            pow_scale.push(prev * cfg.delta_t.clone() / T::from_i64(p as i64, &ctx));
        }

        // dets[tp][k] by Horner over the exact Eulerian coefficients:
        // det M(tp, k) = pow_scale[tp] * z_k * (A_0 z^(tp-1) + ... + A_(tp-1)).
        let mut dets = Vec::with_capacity(theta + 1);
        dets.push(vec![Complex::one(&ctx); n]);
        for tp in 1..=theta {
            let coeffs: Vec<T> = eulerian_row(tp)
                .iter()
                .map(|a| T::from_bigint(a, &ctx))
                .collect();
            let mut row = Vec::with_capacity(n);
            for k in 0..n {
                let z = plan.twiddle(k as i64);
                let mut horner = Complex::from_re(coeffs[0].clone(), &ctx);
                for c in &coeffs[1..] {
                    horner = horner.mul_ref(z);
                    horner.re += c.clone();
                }
                row.push(horner.mul_ref(z).scale(&pow_scale[tp]));
            }
            dets.push(row);
        }

        Ok(Self {
            cfg,
            plan,
            dets,
            pow_scale,
        })
    }

    pub fn config(&self) -> &KernelConfig<T> {
        &self.cfg
    }

    pub fn plan(&self) -> &DftPlan<T> {
        &self.plan
    }

    fn ctx(&self) -> &PrecisionContext {
        self.cfg.ctx()
    }

    /// `z_k = exp(-i 2 pi k / N)`.
    pub fn z(&self, k: usize) -> &Complex<T> {
        self.plan.twiddle(k as i64)
    }

    /// `J(0, k) = z_k - 1`.
    pub fn j0(&self, k: usize) -> Complex<T> {
        let mut z = self.z(k).clone();
        z.re -= T::one(self.ctx());
        z
    }

    /// `J(p, k)`: `z_k - 1` for `p = 0`, `(dt^p / p!) z_k` for `p >= 1`.
    pub fn j_coeff(&self, p: usize, k: usize) -> Result<Complex<T>, KernelError> {
        if p > self.cfg.theta {
            return Err(KernelError::IndexOutOfRange {
                what: "coefficient order p",
                got: p,
                max: self.cfg.theta,
            });
        }
        self.check_k(k)?;
        if p == 0 {
            Ok(self.j0(k))
        } else {
            Ok(self.z(k).scale(&self.pow_scale[p]))
        }
    }

    /// `det M(theta', k)` from the Eulerian closed form.
    pub fn det_m(&self, theta_prime: usize, k: usize) -> Result<&Complex<T>, KernelError> {
        self.check_tp(theta_prime)?;
        self.check_k(k)?;
        Ok(&self.dets[theta_prime][k])
    }

    /// The `theta' x theta'` Hessenberg-Toeplitz matrix `M(theta', k)`.
    pub fn assemble_m(&self, theta_prime: usize, k: usize) -> Result<DenseMatrix<T>, KernelError> {
        self.check_tp(theta_prime)?;
        self.check_k(k)?;
        if theta_prime == 0 {
            return Err(KernelError::IndexOutOfRange {
                what: "matrix order",
                got: 0,
                max: self.cfg.theta,
            });
        }
        let ctx = *self.ctx();
        let mut m = DenseMatrix::zero(theta_prime, theta_prime, &ctx);
        // Entry (row r, col c), zero-based: J(c - r + 1, k), zero below the
        // first subdiagonal.
        let j0 = self.j0(k);
        for r in 0..theta_prime {
            if r > 0 {
                *m.at_mut(r, r - 1) = j0.clone();
            }
            for c in r..theta_prime {
                *m.at_mut(r, c) = self.z(k).scale(&self.pow_scale[c - r + 1]);
            }
        }
        Ok(m)
    }

    /// Inverse of `M(theta', k)`: determinant-ratio closed form on and below
    /// the diagonal, LU everywhere above it.
    ///
    /// Closed form, one-based indices, for `nu <= mu`:
    ///
    /// ```text
    /// inv(mu, nu) = (-J(0,k))^(mu-nu) det M(nu-1, k) det M(theta'-mu, k) / det M(theta', k)
    /// ```
    pub fn inverse_m(&self, theta_prime: usize, k: usize) -> Result<DenseMatrix<T>, KernelError> {
        let m = self.assemble_m(theta_prime, k)?;
        let ctx = *self.ctx();
        // M is graded by powers of delta t; its pivots sit legitimately far
        // below the matrix norm on fine grids. Nonsingularity is structural
        // here: the determinant polynomial only vanishes on the unit circle
        // at z = -1 with even order, which the parity screen in kernel
        // construction (and the odd-N requirement wherever the theta - 1
        // system is used) has already excluded.
        let mut inv = lu_inverse_graded(&m, &ctx)?;
        let det = &self.dets[theta_prime][k];
        let det_recip = det.recip(&ctx);
        let neg_j0 = -self.j0(k);
        for r in 0..theta_prime {
            let mut pw = Complex::one(&ctx); // (-J0)^(r - c)
            for back in 0..=r {
                let c = r - back;
                let val = pw
                    .mul_ref(&self.dets[c][k])
                    .mul_ref(&self.dets[theta_prime - 1 - r][k])
                    .mul_ref(&det_recip);
                *inv.at_mut(r, c) = val;
                pw = pw.mul_ref(&neg_j0);
            }
        }
        Ok(inv)
    }

    fn check_tp(&self, theta_prime: usize) -> Result<(), KernelError> {
        if theta_prime > self.cfg.theta {
            return Err(KernelError::IndexOutOfRange {
                what: "matrix order",
                got: theta_prime,
                max: self.cfg.theta,
            });
        }
        Ok(())
    }

    fn check_k(&self, k: usize) -> Result<(), KernelError> {
        if k >= self.cfg.n {
            return Err(KernelError::IndexOutOfRange {
                what: "frequency index k",
                got: k,
                max: self.cfg.n - 1,
            });
        }
        Ok(())
    }
}
