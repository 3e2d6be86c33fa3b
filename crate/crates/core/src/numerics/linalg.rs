//! Dense complex LU factorization and a real tridiagonal solver.

use super::{Complex, NumericsError, PrecisionContext, Real};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zero(rows: usize, cols: usize, ctx: &PrecisionContext) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(ctx); rows * cols],
        }
    }

    pub fn identity(n: usize, ctx: &PrecisionContext) -> Self {
        let mut m = Self::zero(n, n, ctx);
        for i in 0..n {
            *m.at_mut(i, i) = Complex::one(ctx);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self, NumericsError> {
        let r = rows.len();
        if r == 0 {
            return Err(NumericsError::EmptyInput("matrix rows"));
        }
        let c = rows[0].len();
        for row in &rows {
            if row.len() != c {
                return Err(NumericsError::DimensionMismatch {
                    context: "ragged matrix rows",
                    left: row.len(),
                    right: c,
                });
            }
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Complex<T>], ctx: &PrecisionContext) -> Result<Vec<Complex<T>>, NumericsError> {
        if x.len() != self.cols {
            return Err(NumericsError::DimensionMismatch {
                context: "matrix-vector product",
                left: self.cols,
                right: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Complex::zero(ctx);
                for (j, xj) in x.iter().enumerate() {
                    self.at(i, j).mul_add_into(xj, &mut acc);
                }
                acc
            })
            .collect())
    }

    fn max_abs(&self) -> T {
        let mut best = self.data[0].abs();
        for v in &self.data[1..] {
            let a = v.abs();
            if a > best {
                best = a;
            }
        }
        best
    }
}

/// How the factorization reacts to small pivots.
///
/// `Guarded` rejects pivots below `tolerance * max(1, scale)` where `scale`
/// is the largest entry magnitude of the input: the right behaviour when the
/// factors will be used to solve. `Permissive` only rejects exact zeros; the
/// determinant of a nearly singular matrix is still the pivot product and
/// callers computing determinants must not be told "singular" merely because
/// the product underflows the solve threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PivotPolicy {
    Guarded,
    Permissive,
}

/// LU factorization with row pivoting, `P A = L U`.
pub struct LuFactors<T> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
    odd_swaps: bool,
    ctx: PrecisionContext,
}

impl<T: Real> LuFactors<T> {
    /// Factor for solving; rejects pivots under the context tolerance.
    pub fn new(a: &DenseMatrix<T>, ctx: &PrecisionContext) -> Result<Self, NumericsError> {
        Self::factor(a, ctx, PivotPolicy::Guarded)
    }

    /// Factor a graded matrix whose row scales span many orders of
    /// magnitude, so late pivots legitimately sink far below
    /// `tolerance * max_abs` and the guarded policy would misfire.
    /// Only exact zero pivots are rejected: the caller must have ruled
    /// out genuinely singular configurations beforehand.
    pub fn new_graded(a: &DenseMatrix<T>, ctx: &PrecisionContext) -> Result<Self, NumericsError> {
        Self::factor(a, ctx, PivotPolicy::Permissive)
    }

    fn factor(
        a: &DenseMatrix<T>,
        ctx: &PrecisionContext,
        policy: PivotPolicy,
    ) -> Result<Self, NumericsError> {
        if a.rows != a.cols {
            return Err(NumericsError::DimensionMismatch {
                context: "LU of non-square matrix",
                left: a.rows,
                right: a.cols,
            });
        }
        let n = a.rows;
        if n == 0 {
            return Err(NumericsError::EmptyInput("LU of empty matrix"));
        }
        let scale = a.max_abs();
        if !scale.is_finite() {
            return Err(NumericsError::NonFinite("LU input"));
        }
        let one = T::one(ctx);
        let tol: T = ctx.tolerance();
        let threshold = match policy {
            PivotPolicy::Guarded => {
                let base = if scale > one { scale.clone() } else { one.clone() };
                tol * base
            }
            PivotPolicy::Permissive => T::zero(ctx),
        };

        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd_swaps = false;
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = lu.at(col, col).norm_sqr();
            for r in col + 1..n {
                let mag = lu.at(r, col).norm_sqr();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = r;
                }
            }
            let pivot_abs = pivot_mag.sqrt();
            let reject = match policy {
                PivotPolicy::Guarded => pivot_abs <= threshold,
                PivotPolicy::Permissive => pivot_abs == T::zero(ctx),
            };
            if reject {
                return Err(NumericsError::SingularMatrix {
                    step: col,
                    pivot: pivot_abs.to_f64(),
                    threshold: threshold.to_f64(),
                });
            }
            if pivot_row != col {
                for j in 0..n {
                    let hi = lu.data[pivot_row * n + j].clone();
                    let lo = lu.data[col * n + j].clone();
                    lu.data[pivot_row * n + j] = lo;
                    lu.data[col * n + j] = hi;
                }
                perm.swap(col, pivot_row);
                odd_swaps = !odd_swaps;
            }
            let pivot = lu.at(col, col).clone();
            for r in col + 1..n {
                let m = lu.at(r, col).div(&pivot);
                *lu.at_mut(r, col) = m.clone();
                for j in col + 1..n {
                    let sub = m.mul_ref(lu.at(col, j));
                    *lu.at_mut(r, j) = lu.at(r, j).sub_ref(&sub);
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            odd_swaps,
            ctx: *ctx,
        })
    }

    pub fn solve(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>, NumericsError> {
        let n = self.lu.rows;
        if b.len() != n {
            return Err(NumericsError::DimensionMismatch {
                context: "LU solve right-hand side",
                left: b.len(),
                right: n,
            });
        }
        // Forward substitution on P b (unit lower factor).
        let mut y: Vec<Complex<T>> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 1..n {
            for j in 0..i {
                let sub = self.lu.at(i, j).mul_ref(&y[j]);
                y[i] = y[i].sub_ref(&sub);
            }
        }
        // Back substitution on U.
        for i in (0..n).rev() {
            for j in i + 1..n {
                let sub = self.lu.at(i, j).mul_ref(&y[j]);
                y[i] = y[i].sub_ref(&sub);
            }
            y[i] = y[i].div(self.lu.at(i, i));
        }
        Ok(y)
    }

    pub fn det(&self) -> Complex<T> {
        let n = self.lu.rows;
        let mut d = self.lu.at(0, 0).clone();
        for i in 1..n {
            d = d.mul_ref(self.lu.at(i, i));
        }
        if self.odd_swaps {
            -d
        } else {
            d
        }
    }

    pub fn inverse(&self) -> Result<DenseMatrix<T>, NumericsError> {
        let n = self.lu.rows;
        let mut out = DenseMatrix::zero(n, n, &self.ctx);
        for col in 0..n {
            let mut e = vec![Complex::zero(&self.ctx); n];
            e[col] = Complex::one(&self.ctx);
            let x = self.solve(&e)?;
            for (row, v) in x.into_iter().enumerate() {
                *out.at_mut(row, col) = v;
            }
        }
        Ok(out)
    }
}

/// Solve `A x = b` by LU with partial pivoting.
pub fn lu_solve<T: Real>(
    a: &DenseMatrix<T>,
    b: &[Complex<T>],
    ctx: &PrecisionContext,
) -> Result<Vec<Complex<T>>, NumericsError> {
    LuFactors::new(a, ctx)?.solve(b)
}

/// Determinant via LU. Near-singular inputs give a near-zero determinant
/// rather than an error; only an exactly zero pivot column aborts (and that
/// means the determinant is exactly zero, which is what is returned).
pub fn lu_det<T: Real>(
    a: &DenseMatrix<T>,
    ctx: &PrecisionContext,
) -> Result<Complex<T>, NumericsError> {
    match LuFactors::factor(a, ctx, PivotPolicy::Permissive) {
        Ok(f) => Ok(f.det()),
        Err(NumericsError::SingularMatrix { .. }) => Ok(Complex::zero(ctx)),
        Err(e) => Err(e),
    }
}

/// Full inverse via LU with the guarded pivot policy.
pub fn lu_inverse<T: Real>(
    a: &DenseMatrix<T>,
    ctx: &PrecisionContext,
) -> Result<DenseMatrix<T>, NumericsError> {
    LuFactors::new(a, ctx)?.inverse()
}

/// Full inverse of a graded matrix; see [`LuFactors::new_graded`].
pub fn lu_inverse_graded<T: Real>(
    a: &DenseMatrix<T>,
    ctx: &PrecisionContext,
) -> Result<DenseMatrix<T>, NumericsError> {
    LuFactors::new_graded(a, ctx)?.inverse()
}

/// Thomas algorithm for a real tridiagonal system.
///
/// `sub` and `sup` have length `n - 1`, `diag` and `rhs` length `n`.
pub fn tridiag_solve<T: Real>(
    sub: &[T],
    diag: &[T],
    sup: &[T],
    rhs: &[T],
    ctx: &PrecisionContext,
) -> Result<Vec<T>, NumericsError> {
    let n = diag.len();
    if n == 0 {
        return Err(NumericsError::EmptyInput("tridiagonal system"));
    }
    if sub.len() + 1 != n || sup.len() + 1 != n || rhs.len() != n {
        return Err(NumericsError::DimensionMismatch {
            context: "tridiagonal band lengths",
            left: sub.len().max(sup.len()) + 1,
            right: n,
        });
    }
    let mut scale = T::zero(ctx);
    for v in diag.iter().chain(sub).chain(sup) {
        let a = v.abs();
        if a > scale {
            scale = a;
        }
    }
    let one = T::one(ctx);
    let tol: T = ctx.tolerance();
    let threshold = tol * if scale > one { scale } else { one };

    let mut c_prime = vec![T::zero(ctx); n.saturating_sub(1)];
    let mut d_prime = vec![T::zero(ctx); n];
    let mut denom = diag[0].clone();
    if denom.abs() <= threshold {
        return Err(NumericsError::SingularMatrix {
            step: 0,
            pivot: denom.abs().to_f64(),
            threshold: threshold.to_f64(),
        });
    }
    if n > 1 {
        c_prime[0] = sup[0].clone() / denom.clone();
    }
    d_prime[0] = rhs[0].clone() / denom.clone();
    for i in 1..n {
        denom = diag[i].clone() - sub[i - 1].clone() * c_prime[i - 1].clone();
        if denom.abs() <= threshold {
            return Err(NumericsError::SingularMatrix {
                step: i,
                pivot: denom.abs().to_f64(),
                threshold: threshold.to_f64(),
            });
        }
        if i < n - 1 {
            c_prime[i] = sup[i].clone() / denom.clone();
        }
        d_prime[i] =
            (rhs[i].clone() - sub[i - 1].clone() * d_prime[i - 1].clone()) / denom.clone();
    }
    let mut x = d_prime;
    for i in (0..n - 1).rev() {
        let upd = x[i].clone() - c_prime[i].clone() * x[i + 1].clone();
        x[i] = upd;
    }
    Ok(x)
}
