//! Precision-parametric scalars, complex arithmetic, transforms and solvers.
//!
//! Every algorithm in this crate is written once against the [`Real`] trait
//! and instantiated with either `f64` or the MPFR-backed [`MpFloat`]. A
//! [`PrecisionContext`] travels with each computation; it fixes the decimal
//! working precision and derives the tolerance `10^(-digits + 4)` used by
//! pivot guards and residue assertions.

mod complex;
mod dft;
mod linalg;
mod real;

pub use complex::Complex;
pub use dft::{dft, idft, DftPlan};
pub use linalg::{
    lu_det, lu_inverse, lu_inverse_graded, lu_solve, tridiag_solve, DenseMatrix, LuFactors,
};
pub use real::{MpFloat, PrecisionContext, Real};

use thiserror::Error;

/// Errors raised by the scalar layer, transforms and solvers.
#[derive(Debug, Error)]
pub enum NumericsError {
    /// A pivot fell below the context tolerance relative to the matrix scale.
    #[error("singular matrix: pivot magnitude {pivot:.3e} below threshold {threshold:.3e} at step {step}")]
    SingularMatrix {
        step: usize,
        pivot: f64,
        threshold: f64,
    },
    /// Input slice was empty where at least one element is required.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    /// Two inputs that must agree in length or shape did not.
    #[error("dimension mismatch: {context} (left {left}, right {right})")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },
    /// Requested decimal precision is below the supported minimum.
    #[error("precision of {requested} decimal digits is below the minimum of {minimum}")]
    PrecisionTooLow { requested: u32, minimum: u32 },
    /// A value that must be finite was NaN or infinite.
    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),
    /// A quantity known to be real came out of an inverse transform with too
    /// much imaginary part.
    #[error("imaginary residue {residue:.3e} exceeds bound {bound:.3e} in {context}")]
    ResidueTooLarge {
        context: &'static str,
        residue: f64,
        bound: f64,
    },
}

/// Drop imaginary parts of values that are real on paper, asserting the
/// residue stays below `100 * tolerance`, measured relative to the sequence
/// scale (rounding noise is relative to magnitude, and these sequences can
/// be very large at high degrees).
pub(crate) fn real_parts_checked<T: Real>(
    vals: Vec<Complex<T>>,
    context: &'static str,
    ctx: &PrecisionContext,
) -> Result<Vec<T>, NumericsError> {
    let mut scale = T::one(ctx);
    let mut worst = T::zero(ctx);
    for v in &vals {
        let re = v.re.abs();
        let im = v.im.abs();
        if re > scale {
            scale = re;
        }
        if im > worst {
            worst = im;
        }
    }
    let hundred = T::from_i64(100, ctx);
    let bound = hundred * ctx.tolerance::<T>() * scale;
    if worst > bound {
        return Err(NumericsError::ResidueTooLarge {
            context,
            residue: worst.to_f64(),
            bound: bound.to_f64(),
        });
    }
    Ok(vals.into_iter().map(|v| v.re).collect())
}
