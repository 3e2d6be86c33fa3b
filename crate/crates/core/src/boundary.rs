//! Estimating the boundary vector from the samples alone.
//!
//! The spline of degree `theta` needs `B = (b_0, ..., b_(theta-1))` with
//! `b_mu = g^(mu)(T) - g^(mu)(0)`. Only `b_0` is known exactly (it is the
//! difference of the first and last sample); the rest,
//! `X = (b_1, ..., b_(theta-1))`, must be estimated. Two least-squares
//! estimators are implemented, both quadratic in `X` and solved through
//! their normal equations:
//!
//! * [`method1_boundary`] minimizes the summed squared top derivative
//!   `h(B) = sum_j (g_j^(theta))^2`, the natural stiffness proxy: among all
//!   interpolants of the family, pick the one with the least degree `theta`
//!   energy.
//! * [`method2_boundary`] minimizes the squared L2 distance between the
//!   degree `theta` and degree `theta - 1` interpolants built from the same
//!   samples, driving the highest-order correction toward zero. The
//!   minimization couples frequencies pairwise and is only well posed for
//!   odd `N`.
//!
//! Both express the node derivatives as an affine map of `B` through
//! inverse transforms of determinant ratios (see [`crate::kernel`]), so the
//! normal equations assemble from a handful of length `N` inverse DFTs.
//! The Gram matrices pick up a huge dynamic range as the degree grows
//! (rows scale like `dt^(1-theta)` down to `dt^(-1)`), so the solves apply
//! symmetric diagonal equilibration before LU; this removes the scaling
//! part of the conditioning without changing the math.

use rayon::prelude::*;

use crate::kernel::{KernelConfig, KernelError, SpectralKernel};
use crate::numerics::{
    real_parts_checked, Complex, DenseMatrix, LuFactors, NumericsError, PrecisionContext, Real,
};
use crate::spline::{SampleGrid, SplineError};

#[derive(Debug, thiserror::Error)]
pub enum BoundaryError {
    #[error("method 2 requires an odd number of intervals, got N = {n}")]
    EvenNNotSupported { n: usize },
    #[error("normal equations are singular for degree {theta}, N = {n}: {source}")]
    SingularSystem {
        theta: usize,
        n: usize,
        source: NumericsError,
    },
    #[error("expected {expected} derivative differences, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Spline(#[from] SplineError),
}

/// The boundary vector `B = (b_0, ..., b_(theta-1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryVector<T> {
    values: Vec<T>,
}

impl<T: Real> BoundaryVector<T> {
    pub fn from_values(values: Vec<T>) -> Self {
        assert!(!values.is_empty(), "boundary vector cannot be empty");
        Self { values }
    }

    pub fn theta(&self) -> usize {
        self.values.len()
    }

    pub fn b0(&self) -> &T {
        &self.values[0]
    }

    /// The estimated part `X = (b_1, ..., b_(theta-1))`.
    pub fn unknowns(&self) -> &[T] {
        &self.values[1..]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }
}

/// `B = (b_0, 0, ..., 0)`: the "do nothing" baseline.
pub fn zero_boundary<T: Real>(
    samples: &SampleGrid<T>,
    theta: usize,
    ctx: &PrecisionContext,
) -> BoundaryVector<T> {
    let mut values = vec![T::zero(ctx); theta.max(1)];
    values[0] = samples.b0();
    BoundaryVector { values }
}

/// Boundary vector from analytically known derivative differences
/// `diffs[mu-1] = g^(mu)(T) - g^(mu)(0)`, `mu = 1..theta-1`.
///
/// `b_0` always comes from the samples, never from `diffs`.
pub fn exact_boundary<T: Real>(
    samples: &SampleGrid<T>,
    theta: usize,
    diffs: &[T],
) -> Result<BoundaryVector<T>, BoundaryError> {
    if diffs.len() + 1 != theta.max(1) {
        return Err(BoundaryError::LengthMismatch {
            expected: theta.max(1) - 1,
            got: diffs.len(),
        });
    }
    let mut values = Vec::with_capacity(theta);
    values.push(samples.b0());
    values.extend_from_slice(diffs);
    Ok(BoundaryVector { values })
}

/// Tables behind Method 1: the affine map from `B` to the top derivative.
///
/// `delta[m][j]` is the `m`-th component of the row vector mapping `B` to
/// `g_j^(theta)`; `sigma[j]` is the sample-driven offset:
/// `g_j^(theta) = sum_m delta[m][j] b_m - sigma[j]`.
pub struct Method1Tables<T> {
    theta: usize,
    n: usize,
    delta: Vec<Vec<T>>,
    sigma: Vec<T>,
    gamma: Vec<Vec<T>>,
    rhs: Vec<T>,
}

impl<T: Real> Method1Tables<T> {
    /// Assemble from samples; `b0` enters only the right-hand side.
    pub fn assemble(
        samples: &SampleGrid<T>,
        theta: usize,
        ctx: &PrecisionContext,
    ) -> Result<Self, BoundaryError> {
        let n = samples.n();
        let kernel = SpectralKernel::new(KernelConfig::new(
            theta,
            n,
            samples.delta_t(ctx),
            ctx,
        )?)?;
        let f0 = kernel.plan().forward(
            &samples.values()[..n]
                .iter()
                .map(|v| Complex::from_re(v.clone(), ctx))
                .collect::<Vec<_>>(),
        )?;

        // Per-frequency determinant reciprocals and powers of -J0.
        let det_recip: Vec<Complex<T>> = (0..n)
            .map(|k| kernel.det_m(theta, k).unwrap().recip(ctx))
            .collect();

        // seqs[m][k] = (-J0_k)^(theta-1-m) det M(m, k) / det M(theta, k),
        // built by walking m downward and multiplying in one -J0 per step.
        let mut seqs: Vec<Vec<Complex<T>>> = vec![Vec::new(); theta];
        let mut sigma_seq: Vec<Complex<T>> = Vec::with_capacity(n);
        for k in 0..n {
            let neg_j0 = -kernel.j0(k);
            let mut pw = Complex::one(ctx);
            for m in (0..theta).rev() {
                seqs[m].push(pw.mul_ref(kernel.det_m(m, k).unwrap()).mul_ref(&det_recip[k]));
                if m > 0 {
                    pw = pw.mul_ref(&neg_j0);
                }
            }
            // sigma = (-1)^(theta-1) J0^theta / det = -(-J0)^theta / det.
            let full_pow = pw.mul_ref(&neg_j0);
            sigma_seq.push((-full_pow.mul_ref(&det_recip[k])).mul_ref(&f0[k]));
        }

        let plan = kernel.plan();
        let mut rows: Vec<Vec<T>> = seqs
            .into_par_iter()
            .chain(rayon::iter::once(sigma_seq))
            .map(|seq| {
                let vals = plan.inverse(&seq)?;
                real_parts_checked(vals, "boundary solver tables", ctx)
            })
            .collect::<Result<Vec<_>, NumericsError>>()?;
        let sigma = rows.pop().expect("sigma row present");
        let delta = rows;

        // Normal equations: Gamma X = rhs, indices mu, nu = 1..theta-1.
        let b0 = samples.b0();
        let dim = theta - 1;
        let mut gamma = vec![vec![T::zero(ctx); dim]; dim];
        let mut rhs = vec![T::zero(ctx); dim];
        for mu in 1..theta {
            for nu in mu..theta {
                let mut acc = T::zero(ctx);
                for j in 0..n {
                    acc += delta[mu][j].clone() * delta[nu][j].clone();
                }
                gamma[mu - 1][nu - 1] = acc.clone();
                gamma[nu - 1][mu - 1] = acc;
            }
            let mut acc = T::zero(ctx);
            for j in 0..n {
                acc += sigma[j].clone() * delta[mu][j].clone()
                    - b0.clone() * delta[mu][j].clone() * delta[0][j].clone();
            }
            rhs[mu - 1] = acc;
        }

        Ok(Self {
            theta,
            n,
            delta,
            sigma,
            gamma,
            rhs,
        })
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> &[Vec<T>] {
        &self.delta
    }

    pub fn sigma(&self) -> &[T] {
        &self.sigma
    }

    pub fn gamma(&self) -> &[Vec<T>] {
        &self.gamma
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    /// `g_j^(theta)` for the given boundary vector.
    pub fn top_derivative(&self, b: &BoundaryVector<T>, j: usize, ctx: &PrecisionContext) -> T {
        let mut acc = -self.sigma[j].clone();
        for (m, bm) in b.values().iter().enumerate() {
            acc += self.delta[m][j].clone() * bm.clone();
        }
        let _ = ctx;
        acc
    }
}

/// Minimize `sum_j (g_j^(theta))^2` over the unknown boundary entries.
///
/// Degree 1 has no unknowns: the result is just `(b_0)`.
pub fn method1_boundary<T: Real>(
    samples: &SampleGrid<T>,
    theta: usize,
    ctx: &PrecisionContext,
) -> Result<BoundaryVector<T>, BoundaryError> {
    if theta <= 1 {
        return Ok(zero_boundary(samples, 1, ctx));
    }
    warn_if_short(samples.n(), theta);
    let tables = Method1Tables::assemble(samples, theta, ctx)?;
    let x = solve_normal_equations(&tables.gamma, &tables.rhs, ctx).map_err(|source| {
        BoundaryError::SingularSystem {
            theta,
            n: tables.n,
            source,
        }
    })?;
    let mut values = Vec::with_capacity(theta);
    values.push(samples.b0());
    values.extend(x);
    Ok(BoundaryVector { values })
}

/// The Method 1 objective `h(B) = sum_j (g_j^(theta))^2` for any boundary
/// vector, not just the minimizer.
pub fn objective_theta_energy<T: Real>(
    samples: &SampleGrid<T>,
    theta: usize,
    b: &BoundaryVector<T>,
    ctx: &PrecisionContext,
) -> Result<T, BoundaryError> {
    if b.theta() != theta {
        return Err(BoundaryError::LengthMismatch {
            expected: theta,
            got: b.theta(),
        });
    }
    let tables = Method1Tables::assemble(samples, theta, ctx)?;
    let mut acc = T::zero(ctx);
    for j in 0..tables.n {
        let g = tables.top_derivative(b, j, ctx);
        acc += g.clone() * g;
    }
    Ok(acc)
}

/// Tables behind Method 2: the affine map from `B` to the per-piece
/// difference coefficients between consecutive degrees.
///
/// `psi[alpha-1][nu][j]` and `phi[alpha-1][j]` give
/// `G_j^(alpha) = sum_nu psi[alpha-1][nu][j] b_nu - phi[alpha-1][j]`,
/// the degree `theta` minus degree `theta - 1` derivative gap at node `j`.
/// `zeta[a][b] = dt^(a+b+1) / ((a+b+1) a! b!)` are the piece-integral
/// weights, and `rho`, `lambda`, `pi` are the assembled normal equations.
pub struct Method2Tables<T> {
    theta: usize,
    n: usize,
    zeta: Vec<Vec<T>>,
    psi: Vec<Vec<Vec<T>>>,
    phi: Vec<Vec<T>>,
    rho: Vec<Vec<Vec<T>>>,
    lambda: Vec<Vec<T>>,
    pi: Vec<T>,
}

impl<T: Real> Method2Tables<T> {
    pub fn assemble(
        samples: &SampleGrid<T>,
        theta: usize,
        ctx: &PrecisionContext,
    ) -> Result<Self, BoundaryError> {
        let n = samples.n();
        if n % 2 == 0 {
            return Err(BoundaryError::EvenNNotSupported { n });
        }
        let kernel = SpectralKernel::new(KernelConfig::new(
            theta,
            n,
            samples.delta_t(ctx),
            ctx,
        )?)?;
        let f0 = kernel.plan().forward(
            &samples.values()[..n]
                .iter()
                .map(|v| Complex::from_re(v.clone(), ctx))
                .collect::<Vec<_>>(),
        )?;

        // Full inverses of both orders at every frequency.
        let inverses: Vec<(DenseMatrix<T>, Option<DenseMatrix<T>>)> = (0..n)
            .into_par_iter()
            .map(|k| {
                let big = kernel.inverse_m(theta, k)?;
                let small = if theta >= 2 {
                    Some(kernel.inverse_m(theta - 1, k)?)
                } else {
                    None
                };
                Ok((big, small))
            })
            .collect::<Result<Vec<_>, KernelError>>()?;

        // psi sequences: entry (alpha, nu) of M(theta)^(-1) minus the
        // zero-padded M(theta-1)^(-1); one inverse DFT per pair.
        let plan = kernel.plan();
        let pairs: Vec<(usize, usize)> = (0..theta)
            .flat_map(|r| (0..theta).map(move |c| (r, c)))
            .collect();
        let psi_rows: Vec<Vec<T>> = pairs
            .par_iter()
            .map(|&(r, c)| {
                let seq: Vec<Complex<T>> = (0..n)
                    .map(|k| {
                        let (big, small) = &inverses[k];
                        let mut v = big.at(r, c).clone();
                        if r + 1 < theta && c + 1 < theta {
                            if let Some(s) = small {
                                v = v.sub_ref(s.at(r, c));
                            }
                        }
                        v
                    })
                    .collect();
                let vals = plan.inverse(&seq)?;
                real_parts_checked(vals, "boundary solver tables", ctx)
            })
            .collect::<Result<Vec<_>, NumericsError>>()?;
        let mut psi: Vec<Vec<Vec<T>>> = Vec::with_capacity(theta);
        let mut it = psi_rows.into_iter();
        for _ in 0..theta {
            psi.push((0..theta).map(|_| it.next().expect("pair count")).collect());
        }

        // phi sequences: determinant-ratio transforms of the spectrum.
        let phi: Vec<Vec<T>> = (1..=theta)
            .into_par_iter()
            .map(|alpha| {
                let seq: Vec<Complex<T>> = (0..n)
                    .map(|k| {
                        let j0a = kernel.j0(k).powu(alpha as u32, ctx);
                        let big = kernel
                            .det_m(theta - alpha, k)
                            .unwrap()
                            .div(kernel.det_m(theta, k).unwrap());
                        let ratio = if alpha <= theta - 1 {
                            let small = kernel
                                .det_m(theta - 1 - alpha, k)
                                .unwrap()
                                .div(kernel.det_m(theta - 1, k).unwrap());
                            big.sub_ref(&small)
                        } else {
                            big
                        };
                        let v = j0a.mul_ref(&ratio).mul_ref(&f0[k]);
                        if alpha % 2 == 0 {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect();
                let vals = plan.inverse(&seq)?;
                real_parts_checked(vals, "boundary solver tables", ctx)
            })
            .collect::<Result<Vec<_>, NumericsError>>()?;

        // Piece-integral weights zeta(a, b), a, b = 1..theta (0-based store).
        let dt = samples.delta_t(ctx);
        let mut fact = vec![T::one(ctx); theta + 1];
        for i in 1..=theta {
            fact[i] = fact[i - 1].clone() * T::from_i64(i as i64, ctx);
        }
        let mut dt_pow = vec![T::one(ctx); 2 * theta + 2];
        for i in 1..2 * theta + 2 {
            dt_pow[i] = dt_pow[i - 1].clone() * dt.clone();
        }
        let mut zeta = vec![vec![T::zero(ctx); theta]; theta];
        for a in 1..=theta {
            for b in 1..=theta {
                zeta[a - 1][b - 1] = dt_pow[a + b + 1].clone()
                    / (T::from_i64((a + b + 1) as i64, ctx) * fact[a].clone() * fact[b].clone());
            }
        }

        let b0 = samples.b0();
        let dim = theta - 1;

        // rho[n-1][alpha-1][j]: the known-b0 part moved to the right side.
        let mut rho = vec![vec![vec![T::zero(ctx); n]; theta]; dim.max(1)];
        if dim > 0 {
            for nn in 1..=dim {
                for alpha in 1..=theta {
                    for j in 0..n {
                        let mut acc = zeta[alpha - 1][alpha - 1].clone()
                            * psi[alpha - 1][nn][j].clone()
                            * psi[alpha - 1][0][j].clone();
                        for beta in 1..alpha {
                            acc += zeta[alpha - 1][beta - 1].clone()
                                * (psi[alpha - 1][0][j].clone() * psi[beta - 1][nn][j].clone()
                                    + psi[alpha - 1][nn][j].clone() * psi[beta - 1][0][j].clone());
                        }
                        rho[nn - 1][alpha - 1][j] = b0.clone() * acc;
                    }
                }
            }
        }

        // Normal equations Lambda X = Pi.
        let mut lambda = vec![vec![T::zero(ctx); dim]; dim];
        let mut pi = vec![T::zero(ctx); dim];
        for mu in 1..=dim {
            for nu in mu..=dim {
                let mut acc = T::zero(ctx);
                for j in 0..n {
                    for alpha in 1..=theta {
                        let mut term = zeta[alpha - 1][alpha - 1].clone()
                            * psi[alpha - 1][nu][j].clone()
                            * psi[alpha - 1][mu][j].clone();
                        for beta in 1..alpha {
                            term += zeta[alpha - 1][beta - 1].clone()
                                * (psi[alpha - 1][mu][j].clone() * psi[beta - 1][nu][j].clone()
                                    + psi[alpha - 1][nu][j].clone()
                                        * psi[beta - 1][mu][j].clone());
                        }
                        acc += term;
                    }
                }
                lambda[mu - 1][nu - 1] = acc.clone();
                lambda[nu - 1][mu - 1] = acc;
            }
            let mut acc = T::zero(ctx);
            for j in 0..n {
                for alpha in 1..=theta {
                    let mut term = zeta[alpha - 1][alpha - 1].clone()
                        * psi[alpha - 1][mu][j].clone()
                        * phi[alpha - 1][j].clone();
                    for beta in 1..alpha {
                        term += zeta[alpha - 1][beta - 1].clone()
                            * (psi[alpha - 1][mu][j].clone() * phi[beta - 1][j].clone()
                                + psi[beta - 1][mu][j].clone() * phi[alpha - 1][j].clone());
                    }
                    acc += term - rho[mu - 1][alpha - 1][j].clone();
                }
            }
            pi[mu - 1] = acc;
        }

        Ok(Self {
            theta,
            n,
            zeta,
            psi,
            phi,
            rho,
            lambda,
            pi,
        })
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zeta(&self) -> &[Vec<T>] {
        &self.zeta
    }

    pub fn psi(&self) -> &[Vec<Vec<T>>] {
        &self.psi
    }

    pub fn phi(&self) -> &[Vec<T>] {
        &self.phi
    }

    pub fn rho(&self) -> &[Vec<Vec<T>>] {
        &self.rho
    }

    pub fn lambda(&self) -> &[Vec<T>] {
        &self.lambda
    }

    pub fn pi(&self) -> &[T] {
        &self.pi
    }

    /// `G_j^(alpha)`: derivative gap between consecutive degrees at node `j`.
    pub fn gap(&self, b: &BoundaryVector<T>, alpha: usize, j: usize, ctx: &PrecisionContext) -> T {
        let mut acc = -self.phi[alpha - 1][j].clone();
        for (nu, bv) in b.values().iter().enumerate() {
            acc += self.psi[alpha - 1][nu][j].clone() * bv.clone();
        }
        let _ = ctx;
        acc
    }
}

/// Minimize the L2 distance between the degree `theta` and `theta - 1`
/// interpolants over the unknown boundary entries. Requires odd `N`.
pub fn method2_boundary<T: Real>(
    samples: &SampleGrid<T>,
    theta: usize,
    ctx: &PrecisionContext,
) -> Result<BoundaryVector<T>, BoundaryError> {
    if samples.n() % 2 == 0 {
        return Err(BoundaryError::EvenNNotSupported { n: samples.n() });
    }
    if theta <= 1 {
        return Ok(zero_boundary(samples, 1, ctx));
    }
    warn_if_short(samples.n(), theta);
    let tables = Method2Tables::assemble(samples, theta, ctx)?;
    let x = solve_normal_equations(&tables.lambda, &tables.pi, ctx).map_err(|source| {
        BoundaryError::SingularSystem {
            theta,
            n: tables.n,
            source,
        }
    })?;
    let mut values = Vec::with_capacity(theta);
    values.push(samples.b0());
    values.extend(x);
    Ok(BoundaryVector { values })
}

/// The Method 2 objective: `|| g_theta - g_(theta-1) ||^2` in L2 over the
/// domain, for any boundary vector.
pub fn objective_consecutive<T: Real>(
    samples: &SampleGrid<T>,
    theta: usize,
    b: &BoundaryVector<T>,
    ctx: &PrecisionContext,
) -> Result<T, BoundaryError> {
    if b.theta() != theta {
        return Err(BoundaryError::LengthMismatch {
            expected: theta,
            got: b.theta(),
        });
    }
    let tables = Method2Tables::assemble(samples, theta, ctx)?;
    let mut acc = T::zero(ctx);
    for j in 0..tables.n {
        let gaps: Vec<T> = (1..=theta).map(|a| tables.gap(b, a, j, ctx)).collect();
        for alpha in 1..=theta {
            let ga = &gaps[alpha - 1];
            acc += tables.zeta[alpha - 1][alpha - 1].clone() * ga.clone() * ga.clone();
            for beta in 1..alpha {
                let two = T::from_i64(2, ctx);
                acc += two
                    * tables.zeta[alpha - 1][beta - 1].clone()
                    * ga.clone()
                    * gaps[beta - 1].clone();
            }
        }
    }
    Ok(acc)
}

fn warn_if_short(n: usize, theta: usize) {
    if n < theta + 1 {
        log::warn!("N = {n} intervals is below the recommended minimum {} for degree {theta}", theta + 1);
    }
}

/// Solve a symmetric positive (semi)definite system by LU after symmetric
/// Jacobi equilibration: with `D = diag(1/sqrt(A_ii))`, solve
/// `(D A D) y = D b` and return `x = D y`. The scaled matrix has unit
/// diagonal, which strips the enormous scale disparity between boundary
/// components of different derivative orders.
fn solve_normal_equations<T: Real>(
    a: &[Vec<T>],
    b: &[T],
    ctx: &PrecisionContext,
) -> Result<Vec<T>, NumericsError> {
    let dim = a.len();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let zero = T::zero(ctx);
    let d: Vec<T> = (0..dim)
        .map(|i| {
            if a[i][i] > zero {
                a[i][i].sqrt().recip()
            } else {
                T::one(ctx)
            }
        })
        .collect();
    let mut scaled = DenseMatrix::zero(dim, dim, ctx);
    for i in 0..dim {
        for j in 0..dim {
            *scaled.at_mut(i, j) = Complex::from_re(
                d[i].clone() * a[i][j].clone() * d[j].clone(),
                ctx,
            );
        }
    }
    let rhs: Vec<Complex<T>> = (0..dim)
        .map(|i| Complex::from_re(d[i].clone() * b[i].clone(), ctx))
        .collect();
    let y = LuFactors::new(&scaled, ctx)?.solve(&rhs)?;
    Ok(y
        .into_iter()
        .zip(&d)
        .map(|(yi, di)| yi.re * di.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::MpFloat;
    use crate::spline::build_spline;

    fn ctx() -> PrecisionContext {
        PrecisionContext::binary64()
    }

    fn grid_from(f: impl Fn(f64) -> f64, t0: f64, t1: f64, n: usize) -> SampleGrid<f64> {
        let c = ctx();
        SampleGrid::from_fn(t0, t1 - t0, n, &c, |t| f(*t)).unwrap()
    }

    fn smooth(t: f64) -> f64 {
        (3.0 * t).sin() * (-t).exp()
    }

    // xorshift so the "random" boundary perturbations are reproducible.
    fn rng_stream(mut state: u64, len: usize) -> Vec<f64> {
        (0..len)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect()
    }

    /// The delta/sigma tables must agree with the construction pipeline:
    /// for any boundary vector, the spline's top derivative at node j is
    /// exactly sum_m delta[m][j] b_m - sigma[j].
    #[test]
    fn method1_tables_match_spline_top_derivative() {
        let c = ctx();
        for (theta, n) in [(2usize, 9usize), (3, 9), (3, 8), (5, 11)] {
            let samples = grid_from(smooth, 0.0, 2.0, n);
            let tables = Method1Tables::assemble(&samples, theta, &c).unwrap();
            let mut b_values = vec![samples.b0()];
            b_values.extend(rng_stream(0x9e3779b97f4a7c15 ^ theta as u64, theta - 1));
            let b = BoundaryVector::from_values(b_values);
            let spline = build_spline(&samples, theta, b.values(), &c).unwrap();
            let top = spline.deriv_row(theta).unwrap();
            for j in 0..n {
                let from_tables = tables.top_derivative(&b, j, &c);
                let scale = top[j].abs().max(1.0);
                assert!(
                    (from_tables - top[j]).abs() <= 1e-9 * scale,
                    "theta={theta} n={n} j={j}: {from_tables} vs {}",
                    top[j]
                );
            }
        }
    }

    /// Same cross-check for Method 2: psi/phi encode the nodewise gap
    /// between the degree theta and theta-1 splines sharing a boundary.
    #[test]
    fn method2_tables_match_spline_derivative_gaps() {
        let c = ctx();
        for (theta, n) in [(2usize, 9usize), (4, 13)] {
            let samples = grid_from(smooth, 0.0, 2.0, n);
            let tables = Method2Tables::assemble(&samples, theta, &c).unwrap();
            let mut b_values = vec![samples.b0()];
            b_values.extend(rng_stream(0xdeadbeefcafe ^ theta as u64, theta - 1));
            let b = BoundaryVector::from_values(b_values);
            let big = build_spline(&samples, theta, b.values(), &c).unwrap();
            let small = build_spline(&samples, theta - 1, &b.values()[..theta - 1], &c).unwrap();
            for alpha in 1..=theta {
                let brow = big.deriv_row(alpha).unwrap();
                for j in 0..n {
                    let expect = if alpha < theta {
                        brow[j] - small.deriv_row(alpha).unwrap()[j]
                    } else {
                        brow[j]
                    };
                    let got = tables.gap(&b, alpha, j, &c);
                    let scale = expect.abs().max(1.0);
                    assert!(
                        (got - expect).abs() <= 1e-8 * scale,
                        "theta={theta} alpha={alpha} j={j}: {got} vs {expect}"
                    );
                }
            }
        }
    }

    /// h is an exact quadratic with Hessian 2 Gamma, so around the solver's
    /// minimizer: h(B* + v) - h(B*) = v^T Gamma v for every perturbation v.
    /// This pins both the assembled normal equations and the solve.
    #[test]
    fn method1_minimizer_sits_at_quadratic_vertex() {
        let c = ctx();
        for (theta, n) in [(2usize, 9usize), (3, 8), (4, 13)] {
            let samples = grid_from(smooth, 0.0, 2.0, n);
            let best = method1_boundary(&samples, theta, &c).unwrap();
            let h_best = objective_theta_energy(&samples, theta, &best, &c).unwrap();
            let tables = Method1Tables::assemble(&samples, theta, &c).unwrap();
            for trial in 0..3u64 {
                let v = rng_stream(0x5bd1e995 + trial + theta as u64, theta - 1);
                let mut shifted = best.values().to_vec();
                for (s, vi) in shifted[1..].iter_mut().zip(&v) {
                    *s += vi;
                }
                let shifted = BoundaryVector::from_values(shifted);
                let h_shift = objective_theta_energy(&samples, theta, &shifted, &c).unwrap();
                let mut quad = 0.0;
                for mu in 0..theta - 1 {
                    for nu in 0..theta - 1 {
                        quad += v[mu] * tables.gamma()[mu][nu] * v[nu];
                    }
                }
                let scale = h_best.abs().max(quad.abs()).max(1.0);
                assert!(
                    (h_shift - h_best - quad).abs() <= 1e-6 * scale,
                    "theta={theta} n={n}: {h_shift} - {h_best} != {quad}"
                );
                assert!(h_shift >= h_best - 1e-9 * scale);
            }
        }
    }

    /// Same vertex identity for Method 2 with Hessian 2 Lambda.
    #[test]
    fn method2_minimizer_sits_at_quadratic_vertex() {
        let c = ctx();
        for (theta, n) in [(2usize, 9usize), (3, 9), (4, 13)] {
            let samples = grid_from(smooth, 0.0, 2.0, n);
            let best = method2_boundary(&samples, theta, &c).unwrap();
            let h_best = objective_consecutive(&samples, theta, &best, &c).unwrap();
            let tables = Method2Tables::assemble(&samples, theta, &c).unwrap();
            for trial in 0..3u64 {
                let v = rng_stream(0xa5a5a5a5 + trial + theta as u64, theta - 1);
                let mut shifted = best.values().to_vec();
                for (s, vi) in shifted[1..].iter_mut().zip(&v) {
                    *s += vi;
                }
                let shifted = BoundaryVector::from_values(shifted);
                let h_shift = objective_consecutive(&samples, theta, &shifted, &c).unwrap();
                let mut quad = 0.0;
                for mu in 0..theta - 1 {
                    for nu in 0..theta - 1 {
                        quad += v[mu] * tables.lambda()[mu][nu] * v[nu];
                    }
                }
                let scale = h_best.abs().max(quad.abs()).max(1.0);
                assert!(
                    (h_shift - h_best - quad).abs() <= 1e-6 * scale,
                    "theta={theta} n={n}: {h_shift} - {h_best} != {quad}"
                );
                assert!(h_shift >= h_best - 1e-9 * scale);
            }
        }
    }

    /// Data from a polynomial of degree < theta makes both objectives
    /// reach zero exactly at the true boundary vector, so the estimators
    /// must recover it.
    #[test]
    fn both_methods_recover_polynomial_boundaries() {
        let c = ctx();
        // p(t) = t^2 - t + 1 on [0, 2]: b = (p(2)-p(0), p'(2)-p'(0)) = (2, 4).
        let p = |t: f64| t * t - t + 1.0;
        let samples = grid_from(p, 0.0, 2.0, 9);
        for theta in [3usize, 4] {
            let mut expect = vec![2.0, 4.0];
            expect.resize(theta, 0.0);
            for (label, got) in [
                ("method1", method1_boundary(&samples, theta, &c).unwrap()),
                ("method2", method2_boundary(&samples, theta, &c).unwrap()),
            ] {
                for (mu, (g, e)) in got.values().iter().zip(&expect).enumerate() {
                    assert!(
                        (g - e).abs() <= 1e-6 * e.abs().max(1.0),
                        "{label} theta={theta} b_{mu}: {g} vs {e}"
                    );
                }
            }
        }
    }

    /// Quadrature oracle: the consecutive-degree objective equals the
    /// literal L2 integral of the difference of the two splines.
    #[test]
    fn objective_consecutive_matches_simpson_quadrature() {
        let c = ctx();
        let theta = 3;
        let samples = grid_from(smooth, 0.0, 2.0, 9);
        let b = zero_boundary(&samples, theta, &c);
        let value = objective_consecutive(&samples, theta, &b, &c).unwrap();

        let big = build_spline(&samples, theta, b.values(), &c).unwrap();
        let small = build_spline(&samples, theta - 1, &b.values()[..theta - 1], &c).unwrap();
        // Composite Simpson per interpolation interval keeps the panels
        // away from the knots, where the integrand kinks.
        let n = samples.n();
        let dt = samples.delta_t(&c);
        let panels = 64;
        let mut integral = 0.0;
        for j in 0..n {
            let t0 = samples.node(j, &c);
            let h = dt / panels as f64;
            let f = |t: f64| {
                let d = big.eval(&t, 0).unwrap() - small.eval(&t, 0).unwrap();
                d * d
            };
            for p in 0..panels {
                let a = t0 + p as f64 * h;
                integral += h / 6.0 * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + (1.0 - 1e-13) * h));
            }
        }
        assert!(
            (value - integral).abs() <= 1e-7 * integral.abs().max(1e-12),
            "{value} vs {integral}"
        );
    }

    /// The theta-energy objective equals the literal sum of squared top
    /// derivatives of the built spline.
    #[test]
    fn objective_theta_energy_matches_spline_sum() {
        let c = ctx();
        let theta = 4;
        let samples = grid_from(smooth, 0.0, 2.0, 13);
        let b = method1_boundary(&samples, theta, &c).unwrap();
        let value = objective_theta_energy(&samples, theta, &b, &c).unwrap();
        let spline = build_spline(&samples, theta, b.values(), &c).unwrap();
        let direct: f64 = spline.deriv_row(theta).unwrap().iter().map(|g| g * g).sum();
        assert!(
            (value - direct).abs() <= 1e-9 * direct.max(1.0),
            "{value} vs {direct}"
        );
    }

    /// zeta(a, b) is the piece integral of (u^a / a!)(u^b / b!); check the
    /// closed form against Simpson.
    #[test]
    fn zeta_matches_quadrature() {
        let c = ctx();
        let samples = grid_from(smooth, 0.0, 2.0, 9);
        let theta = 4;
        let tables = Method2Tables::assemble(&samples, theta, &c).unwrap();
        let dt = samples.delta_t(&c);
        let fact = |m: usize| (1..=m).product::<usize>() as f64;
        for a in 1..=theta {
            for b in 1..=theta {
                let f = |u: f64| u.powi(a as i32) / fact(a) * u.powi(b as i32) / fact(b);
                let panels = 200;
                let h = dt / panels as f64;
                let mut q = 0.0;
                for p in 0..panels {
                    let x = p as f64 * h;
                    q += h / 6.0 * (f(x) + 4.0 * f(x + 0.5 * h) + f(x + h));
                }
                let z = tables.zeta()[a - 1][b - 1];
                assert!((z - q).abs() <= 1e-8 * q.abs().max(1e-15), "zeta({a},{b}): {z} vs {q}");
            }
        }
    }

    #[test]
    fn method2_rejects_even_interval_counts() {
        let c = ctx();
        let samples = grid_from(smooth, 0.0, 2.0, 8);
        match method2_boundary(&samples, 3, &c) {
            Err(BoundaryError::EvenNNotSupported { n }) => assert_eq!(n, 8),
            other => panic!("expected even-N rejection, got {other:?}"),
        }
    }

    #[test]
    fn degree_one_needs_no_estimation() {
        let c = ctx();
        let samples = grid_from(smooth, 0.0, 2.0, 9);
        let m1 = method1_boundary(&samples, 1, &c).unwrap();
        let m2 = method2_boundary(&samples, 1, &c).unwrap();
        assert_eq!(m1.values(), &[samples.b0()][..]);
        assert_eq!(m2.values(), &[samples.b0()][..]);
    }

    #[test]
    fn exact_provider_validates_length() {
        let c = ctx();
        let samples = grid_from(smooth, 0.0, 2.0, 9);
        let b = exact_boundary(&samples, 3, &[1.0, 2.0]).unwrap();
        assert_eq!(b.values().len(), 3);
        assert_eq!(b.b0(), &samples.b0());
        match exact_boundary(&samples, 3, &[1.0]) {
            Err(BoundaryError::LengthMismatch { expected: 2, got: 1 }) => {}
            other => panic!("expected length mismatch, got {other:?}"),
        }
        let _ = c;
    }

    /// The generic code path must give the same answers in multiprecision.
    #[test]
    fn methods_agree_across_precision_backends() {
        let c64 = ctx();
        let cmp = PrecisionContext::new(30).unwrap();
        let theta = 5;
        let n = 11;
        let f64_samples = grid_from(smooth, 0.0, 2.0, n);
        let mp_samples = SampleGrid::from_fn(
            MpFloat::from_f64(0.0, &cmp),
            MpFloat::from_f64(2.0, &cmp),
            n,
            &cmp,
            |t| {
                let td = t.to_f64();
                MpFloat::from_f64(smooth(td), &cmp)
            },
        )
        .unwrap();
        for (label, bf, bm) in [
            (
                "method1",
                method1_boundary(&f64_samples, theta, &c64).unwrap(),
                method1_boundary(&mp_samples, theta, &cmp).unwrap(),
            ),
            (
                "method2",
                method2_boundary(&f64_samples, theta, &c64).unwrap(),
                method2_boundary(&mp_samples, theta, &cmp).unwrap(),
            ),
        ] {
            for mu in 0..theta {
                let f = bf.values()[mu];
                let m = bm.values()[mu].to_f64();
                assert!(
                    (f - m).abs() <= 1e-7 * f.abs().max(1.0),
                    "{label} b_{mu}: f64 {f} vs mp {m}"
                );
            }
        }
    }
}
