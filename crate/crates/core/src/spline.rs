//! Spline construction from equispaced samples, evaluation, integration and
//! serialization.
//!
//! A degree `theta` interpolant is stored as its derivative values at the
//! nodes: piece `j` is the Taylor polynomial
//!
//! ```text
//! g_j(t_j + u) = sum_{mu=0}^{theta} u^mu / mu! * deriv[mu][j]
//! ```
//!
//! [`build_spline`] recovers `deriv[1..=theta]` by solving the per-frequency
//! systems of [`crate::kernel`] and transforming back. The caller supplies
//! the boundary vector `b_mu = g^(mu)(T) - g^(mu)(0)`; see [`crate::boundary`]
//! for ways to obtain one when only the samples are known.

use serde::{Deserialize, Serialize};

use crate::kernel::{KernelConfig, KernelError, SpectralKernel};
use crate::numerics::{
    real_parts_checked, Complex, DenseMatrix, LuFactors, NumericsError, PrecisionContext, Real,
};

#[derive(Debug, thiserror::Error)]
pub enum SplineError {
    #[error("invalid samples: {0}")]
    InvalidSamples(String),
    #[error("boundary vector has {got} entries, degree {theta} needs exactly {theta}")]
    BoundaryLength { theta: usize, got: usize },
    #[error("t = {t} outside the spline domain [{start}, {end}]")]
    OutOfDomain { t: f64, start: f64, end: f64 },
    #[error("derivative order {got} exceeds the spline degree {max}")]
    DerivativeOrder { got: usize, max: usize },
    #[error("serialized spline rejected: {0}")]
    Format(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// `N + 1` equispaced samples over `[t_start, t_start + period]`.
#[derive(Debug, Clone)]
pub struct SampleGrid<T> {
    t_start: T,
    period: T,
    values: Vec<T>,
}

impl<T: Real> SampleGrid<T> {
    pub fn new(t_start: T, period: T, values: Vec<T>, ctx: &PrecisionContext) -> Result<Self, SplineError> {
        if values.len() < 3 {
            return Err(SplineError::InvalidSamples(format!(
                "need at least 3 samples (2 intervals), got {}",
                values.len()
            )));
        }
        if !(period > T::zero(ctx)) || !period.is_finite() {
            return Err(SplineError::InvalidSamples(
                "period must be positive and finite".into(),
            ));
        }
        if !t_start.is_finite() {
            return Err(SplineError::InvalidSamples("t_start must be finite".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(SplineError::InvalidSamples(format!(
                "sample {i} is not finite"
            )));
        }
        Ok(Self {
            t_start,
            period,
            values,
        })
    }

    /// Sample a function at the `n + 1` nodes of `[t_start, t_start + period]`.
    pub fn from_fn(
        t_start: T,
        period: T,
        n: usize,
        ctx: &PrecisionContext,
        mut f: impl FnMut(&T) -> T,
    ) -> Result<Self, SplineError> {
        let values = (0..=n)
            .map(|j| {
                let t = t_start.clone()
                    + period.clone() * T::from_i64(j as i64, ctx) / T::from_i64(n as i64, ctx);
                f(&t)
            })
            .collect();
        Self::new(t_start, period, values, ctx)
    }

    /// Number of intervals `N`.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn t_start(&self) -> &T {
        &self.t_start
    }

    pub fn period(&self) -> &T {
        &self.period
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn delta_t(&self, ctx: &PrecisionContext) -> T {
        self.period.clone() / T::from_i64(self.n() as i64, ctx)
    }

    /// Node `t_j = t_start + period * j / N`.
    pub fn node(&self, j: usize, ctx: &PrecisionContext) -> T {
        self.t_start.clone()
            + self.period.clone() * T::from_i64(j as i64, ctx) / T::from_i64(self.n() as i64, ctx)
    }

    /// `b_0 = g(T) - g(0)`, directly from the samples.
    pub fn b0(&self) -> T {
        self.values[self.values.len() - 1].clone() - self.values[0].clone()
    }
}

/// Piecewise-Taylor interpolant of degree `theta`.
#[derive(Debug, Clone)]
pub struct SplineFunction<T> {
    theta: usize,
    t_start: T,
    period: T,
    n: usize,
    ctx: PrecisionContext,
    /// `deriv[mu][j]` = mu-th derivative at node `j`, `mu = 0..=theta`,
    /// `j = 0..n - 1`.
    deriv: Vec<Vec<T>>,
}

/// Construct the degree `theta` interpolant of `samples` for the boundary
/// vector `boundary` (`theta` entries, `boundary[mu] = b_mu`).
///
/// One Hessenberg system is solved per frequency; the derivative spectra are
/// then inverse transformed. Imaginary residues are asserted below
/// `100 * tolerance` (relative to scale) and dropped.
pub fn build_spline<T: Real>(
    samples: &SampleGrid<T>,
    theta: usize,
    boundary: &[T],
    ctx: &PrecisionContext,
) -> Result<SplineFunction<T>, SplineError> {
    if boundary.len() != theta {
        return Err(SplineError::BoundaryLength {
            theta,
            got: boundary.len(),
        });
    }
    let n = samples.n();
    let kernel = SpectralKernel::new(KernelConfig::new(
        theta,
        n,
        samples.delta_t(ctx),
        ctx,
    )?)?;
    if n < theta + 1 {
        log::warn!("N = {n} intervals is below the recommended minimum {} for degree {theta}", theta + 1);
    }

    let f0: Vec<Complex<T>> = kernel.plan().forward(
        &samples.values()[..n]
            .iter()
            .map(|v| Complex::from_re(v.clone(), ctx))
            .collect::<Vec<_>>(),
    )?;

    // Solve M(theta, k) F = B + C_k for every frequency. The solve runs in
    // Taylor-scaled unknowns Ft_nu = dt^(nu+1)/(nu+1)! * F_nu, which turn
    // row mu of M into the subdiagonal z - 1 plus upper entries
    // z * C(nu+1, mu): small integers times z whatever the grid, while
    // boundary entry mu shrinks by dt^mu/mu!. Solving the raw dt-graded
    // matrix instead leaks about eps * max|b_mu| of absolute error into
    // every derivative row, fatal once the boundary values span many
    // orders of magnitude (high degree, oscillatory data).
    let delta_t = samples.delta_t(ctx);
    // taylor[p] = dt^p / p!
    let mut taylor: Vec<T> = Vec::with_capacity(theta + 1);
    taylor.push(T::one(ctx));
    for p in 1..=theta {
        let prev = taylor[p - 1].clone();
        taylor.push(prev * delta_t.clone() / T::from_i64(p as i64, ctx));
    }
    // binom[mu][nu - mu] = C(nu + 1, mu), built along each row by exact
    // integer ratios.
    let mut binom: Vec<Vec<T>> = Vec::with_capacity(theta);
    for mu in 0..theta {
        let mut row = Vec::with_capacity(theta - mu);
        row.push(T::from_i64(mu as i64 + 1, ctx));
        for nu in mu + 1..theta {
            let prev = row[nu - mu - 1].clone();
            row.push(
                prev * T::from_i64(nu as i64 + 1, ctx)
                    / T::from_i64((nu + 1 - mu) as i64, ctx),
            );
        }
        binom.push(row);
    }

    let mut spectra: Vec<Vec<Complex<T>>> = vec![Vec::with_capacity(n); theta];
    for k in 0..n {
        let z = kernel.z(k);
        let j0 = kernel.j0(k);
        let mut m = DenseMatrix::zero(theta, theta, ctx);
        for mu in 0..theta {
            if mu > 0 {
                *m.at_mut(mu, mu - 1) = j0.clone();
            }
            for nu in mu..theta {
                *m.at_mut(mu, nu) = z.scale(&binom[mu][nu - mu]);
            }
        }
        let mut rhs: Vec<Complex<T>> = boundary
            .iter()
            .zip(&taylor)
            .map(|(b, s)| Complex::from_re(b.clone() * s.clone(), ctx))
            .collect();
        let coupling = j0.mul_ref(&f0[k]);
        rhs[0] = rhs[0].sub_ref(&coupling);
        // The scaled matrix stays nonsingular away from the parity case the
        // kernel constructor already rejected, so only exact zero pivots
        // abort; the residue check after the inverse transform backstops
        // the solve.
        let f = LuFactors::new_graded(&m, ctx)?.solve(&rhs)?;
        for (mu, val) in f.into_iter().enumerate() {
            spectra[mu].push(val);
        }
    }

    let mut deriv = Vec::with_capacity(theta + 1);
    deriv.push(samples.values()[..n].to_vec());
    for (mu, spectrum) in spectra.into_iter().enumerate() {
        let vals = kernel.plan().inverse(&spectrum)?;
        let real = real_parts_checked(vals, "node derivative recovery", ctx)
            .map_err(|e| match e {
                NumericsError::ResidueTooLarge { residue, bound, .. } => {
                    log::error!("derivative order {} residue {residue:.3e} above {bound:.3e}", mu + 1);
                    NumericsError::ResidueTooLarge {
                        context: "node derivative recovery",
                        residue,
                        bound,
                    }
                }
                other => other,
            })?;
        let mut real = real;
        for v in real.iter_mut() {
            *v /= taylor[mu + 1].clone();
        }
        deriv.push(real);
    }

    Ok(SplineFunction {
        theta,
        t_start: samples.t_start().clone(),
        period: samples.period().clone(),
        n,
        ctx: *ctx,
        deriv,
    })
}

impl<T: Real> SplineFunction<T> {
    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_start(&self) -> &T {
        &self.t_start
    }

    pub fn period(&self) -> &T {
        &self.period
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn delta_t(&self) -> T {
        self.period.clone() / T::from_i64(self.n as i64, &self.ctx)
    }

    /// Derivative matrix row `mu` (one value per node).
    pub fn deriv_row(&self, mu: usize) -> Result<&[T], SplineError> {
        self.deriv.get(mu).map(|r| r.as_slice()).ok_or(SplineError::DerivativeOrder {
            got: mu,
            max: self.theta,
        })
    }

    /// `beta`-th derivative of piece `j` at offset `u` from its left node.
    ///
    /// This is the raw piecewise formula: no domain clamping, `j` must be a
    /// valid piece and `u` is expected in `[0, delta_t]`.
    pub fn eval_offset(&self, j: usize, u: &T, beta: usize) -> Result<T, SplineError> {
        if beta > self.theta {
            return Err(SplineError::DerivativeOrder {
                got: beta,
                max: self.theta,
            });
        }
        if j >= self.n {
            return Err(SplineError::OutOfDomain {
                t: (j as f64) * self.delta_t().to_f64(),
                start: 0.0,
                end: self.period.to_f64(),
            });
        }
        let ctx = &self.ctx;
        let mut acc = self.deriv[beta][j].clone();
        let mut upow = T::one(ctx);
        let mut fact = T::one(ctx);
        for (i, row) in self.deriv[beta + 1..=self.theta].iter().enumerate() {
            upow *= u.clone();
            fact *= T::from_i64((i + 1) as i64, ctx);
            acc += upow.clone() / fact.clone() * row[j].clone();
        }
        Ok(acc)
    }

    /// Evaluate the `beta`-th derivative at absolute coordinate `t`.
    pub fn eval(&self, t: &T, beta: usize) -> Result<T, SplineError> {
        self.check_in_domain(t)?;
        let ctx = &self.ctx;
        let tau = t.clone() - self.t_start.clone();
        let dt = self.delta_t();
        let j = ((tau.clone() / dt.clone()).to_f64().floor() as i64)
            .clamp(0, self.n as i64 - 1) as usize;
        let u = tau - dt * T::from_i64(j as i64, ctx);
        self.eval_offset(j, &u, beta)
    }

    /// Integral of the spline over `[a, b]` (absolute coordinates).
    pub fn integrate(&self, a: &T, b: &T) -> Result<T, SplineError> {
        let ctx = self.ctx;
        if a == b {
            return Ok(T::zero(&ctx));
        }
        if b < a {
            return Ok(-self.integrate(b, a)?);
        }
        self.check_in_domain(a)?;
        self.check_in_domain(b)?;
        let dt = self.delta_t();
        let tau_a = a.clone() - self.t_start.clone();
        let tau_b = b.clone() - self.t_start.clone();
        let ja = ((tau_a.clone() / dt.clone()).to_f64().floor() as i64)
            .clamp(0, self.n as i64 - 1) as usize;
        let jb = ((tau_b.clone() / dt.clone()).to_f64().floor() as i64)
            .clamp(0, self.n as i64 - 1) as usize;
        let ua = tau_a - dt.clone() * T::from_i64(ja as i64, &ctx);
        let ub = tau_b - dt.clone() * T::from_i64(jb as i64, &ctx);
        if ja == jb {
            return Ok(self.antideriv(ja, &ub) - self.antideriv(ja, &ua));
        }
        let mut total = self.antideriv(ja, &dt) - self.antideriv(ja, &ua);
        for j in ja + 1..jb {
            total += self.antideriv(j, &dt);
        }
        total += self.antideriv(jb, &ub);
        Ok(total)
    }

    /// Antiderivative of piece `j` at offset `u`, zero at `u = 0`.
    fn antideriv(&self, j: usize, u: &T) -> T {
        let ctx = &self.ctx;
        let mut acc = T::zero(ctx);
        let mut upow = u.clone();
        let mut fact = T::one(ctx);
        for (mu, row) in self.deriv.iter().enumerate() {
            fact *= T::from_i64((mu + 1) as i64, ctx);
            acc += upow.clone() / fact.clone() * row[j].clone();
            upow *= u.clone();
        }
        acc
    }

    fn check_in_domain(&self, t: &T) -> Result<(), SplineError> {
        let ctx = &self.ctx;
        let tau = t.clone() - self.t_start.clone();
        let slack = ctx.tolerance::<T>()
            * if self.period > T::one(ctx) {
                self.period.clone()
            } else {
                T::one(ctx)
            };
        if tau < -slack.clone() || tau > self.period.clone() + slack {
            return Err(SplineError::OutOfDomain {
                t: t.to_f64(),
                start: self.t_start.to_f64(),
                end: (self.t_start.clone() + self.period.clone()).to_f64(),
            });
        }
        Ok(())
    }

    /// Serialize to the versioned JSON document.
    ///
    /// Scalars are written as decimal strings that round-trip exactly at the
    /// precision they were computed with.
    pub fn to_json(&self) -> String {
        let doc = SplineDoc {
            format_version: FORMAT_VERSION,
            theta: self.theta,
            n: self.n,
            digits: self.ctx.digits(),
            t_start: self.t_start.to_repr_string(),
            t: self.period.to_repr_string(),
            deriv: self
                .deriv
                .iter()
                .flat_map(|row| row.iter().map(|v| v.to_repr_string()))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain struct serializes")
    }

    /// Parse a document produced by [`Self::to_json`].
    pub fn from_json(text: &str, ctx: &PrecisionContext) -> Result<Self, SplineError> {
        let doc: SplineDoc =
            serde_json::from_str(text).map_err(|e| SplineError::Format(e.to_string()))?;
        if doc.format_version != FORMAT_VERSION {
            return Err(SplineError::Format(format!(
                "unsupported format_version {}",
                doc.format_version
            )));
        }
        if doc.theta == 0 || doc.n < 2 {
            return Err(SplineError::Format(
                "degree must be >= 1 and n >= 2".into(),
            ));
        }
        if doc.digits > ctx.digits() {
            return Err(SplineError::Format(format!(
                "document stored at {} digits, active context has only {}",
                doc.digits,
                ctx.digits()
            )));
        }
        if doc.deriv.len() != (doc.theta + 1) * doc.n {
            return Err(SplineError::Format(format!(
                "deriv has {} entries, expected {}",
                doc.deriv.len(),
                (doc.theta + 1) * doc.n
            )));
        }
        let parse = |s: &String, what: &str| -> Result<T, SplineError> {
            T::from_repr_string(s, ctx)
                .ok_or_else(|| SplineError::Format(format!("bad {what}: {s:?}")))
        };
        let t_start = parse(&doc.t_start, "t_start")?;
        let period = parse(&doc.t, "t")?;
        if !(period > T::zero(ctx)) {
            return Err(SplineError::Format("period must be positive".into()));
        }
        let mut deriv = Vec::with_capacity(doc.theta + 1);
        for mu in 0..=doc.theta {
            let row = doc.deriv[mu * doc.n..(mu + 1) * doc.n]
                .iter()
                .map(|s| parse(s, "deriv entry"))
                .collect::<Result<Vec<_>, _>>()?;
            deriv.push(row);
        }
        Ok(Self {
            theta: doc.theta,
            t_start,
            period,
            n: doc.n,
            ctx: *ctx,
            deriv,
        })
    }
}

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct SplineDoc {
    format_version: u32,
    theta: usize,
    n: usize,
    digits: u32,
    t_start: String,
    t: String,
    deriv: Vec<String>,
}
