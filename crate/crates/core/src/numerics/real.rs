//! Scalar abstraction over binary64 and MPFR arbitrary precision.

use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rug::float::Constant;
use rug::ops::Pow;

use super::NumericsError;

const LOG2_10: f64 = 3.321928094887362;

/// Working precision for a whole computation.
///
/// `digits` is the decimal precision; the derived tolerance `10^(-digits + 4)`
/// is the magnitude below which pivots are treated as zero and imaginary
/// residues must fall after inverse transforms. Binary64 corresponds to
/// `digits = 15`, the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 15;

    pub fn new(digits: u32) -> Result<Self, NumericsError> {
        if digits < Self::MIN_DIGITS {
            return Err(NumericsError::PrecisionTooLow {
                requested: digits,
                minimum: Self::MIN_DIGITS,
            });
        }
        Ok(Self { digits })
    }

    /// Context for plain binary64 computations.
    pub fn binary64() -> Self {
        Self {
            digits: Self::MIN_DIGITS,
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Mantissa bits used by the MPFR backend: enough for `digits` decimal
    /// digits plus guard bits.
    pub fn prec_bits(&self) -> u32 {
        (self.digits as f64 * LOG2_10).ceil() as u32 + 8
    }

    /// `10^(-digits + 4)`, evaluated in the target scalar type.
    pub fn tolerance<T: Real>(&self) -> T {
        T::exp10(4 - self.digits as i32, self)
    }
}

/// A real scalar a numerical algorithm can be generic over.
///
/// Operations take `self` by value; both backends make by-value arithmetic
/// cheap (`f64` is `Copy`, `rug::Float` reuses the left operand's storage).
/// Constructors take the [`PrecisionContext`] so newly created values carry
/// the working precision of the surrounding computation.
pub trait Real:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Neg<Output = Self>
    + Add<Self, Output = Self>
    + Sub<Self, Output = Self>
    + Mul<Self, Output = Self>
    + Div<Self, Output = Self>
    + AddAssign<Self>
    + SubAssign<Self>
    + MulAssign<Self>
    + DivAssign<Self>
{
    fn zero(ctx: &PrecisionContext) -> Self;
    fn one(ctx: &PrecisionContext) -> Self;
    fn from_f64(v: f64, ctx: &PrecisionContext) -> Self;
    fn from_i64(v: i64, ctx: &PrecisionContext) -> Self;
    fn from_bigint(v: &BigInt, ctx: &PrecisionContext) -> Self;
    /// `num / den` evaluated in the target type (one rounding).
    fn from_ratio(num: i64, den: i64, ctx: &PrecisionContext) -> Self {
        Self::from_i64(num, ctx) / Self::from_i64(den, ctx)
    }
    fn pi(ctx: &PrecisionContext) -> Self;
    /// `10^e` at context precision.
    fn exp10(e: i32, ctx: &PrecisionContext) -> Self;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn exp(&self) -> Self;
    fn powi(&self, e: i32) -> Self;
    fn recip(&self) -> Self;
    fn is_finite(&self) -> bool;

    /// Scientific notation with `sig_digits` significant digits.
    fn to_sci_string(&self, sig_digits: usize) -> String;
    /// Decimal string that parses back to the identical value at the same
    /// context precision.
    fn to_repr_string(&self) -> String;
    fn from_repr_string(s: &str, ctx: &PrecisionContext) -> Option<Self>;
}

impl Real for f64 {
    fn zero(_ctx: &PrecisionContext) -> Self {
        0.0
    }
    fn one(_ctx: &PrecisionContext) -> Self {
        1.0
    }
    fn from_f64(v: f64, _ctx: &PrecisionContext) -> Self {
        v
    }
    fn from_i64(v: i64, _ctx: &PrecisionContext) -> Self {
        v as f64
    }
    fn from_bigint(v: &BigInt, _ctx: &PrecisionContext) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn pi(_ctx: &PrecisionContext) -> Self {
        std::f64::consts::PI
    }
    fn exp10(e: i32, _ctx: &PrecisionContext) -> Self {
        10f64.powi(e)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn powi(&self, e: i32) -> Self {
        f64::powi(*self, e)
    }
    fn recip(&self) -> Self {
        f64::recip(*self)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn to_sci_string(&self, sig_digits: usize) -> String {
        format!("{:.*e}", sig_digits.saturating_sub(1), self)
    }
    fn to_repr_string(&self) -> String {
        // Shortest round-trip decimal; `str::parse` restores the exact bits.
        format!("{self:?}")
    }
    fn from_repr_string(s: &str, _ctx: &PrecisionContext) -> Option<Self> {
        s.parse().ok().filter(|v: &f64| v.is_finite())
    }
}

/// Arbitrary-precision real backed by MPFR via `rug`.
///
/// All constructors take the precision from the [`PrecisionContext`], so a
/// computation never silently mixes precisions.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct MpFloat(rug::Float);

impl MpFloat {
    pub fn inner(&self) -> &rug::Float {
        &self.0
    }

    fn repr_digits(&self) -> usize {
        (self.0.prec() as f64 / LOG2_10).ceil() as usize + 2
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! mp_binop {
    ($tr:ident, $m:ident, $tr_assign:ident, $m_assign:ident) => {
        impl $tr for MpFloat {
            type Output = MpFloat;
            fn $m(self, rhs: MpFloat) -> MpFloat {
                MpFloat(self.0.$m(rhs.0))
            }
        }
        impl $tr_assign for MpFloat {
            fn $m_assign(&mut self, rhs: MpFloat) {
                self.0.$m_assign(rhs.0);
            }
        }
    };
}

mp_binop!(Add, add, AddAssign, add_assign);
mp_binop!(Sub, sub, SubAssign, sub_assign);
mp_binop!(Mul, mul, MulAssign, mul_assign);
mp_binop!(Div, div, DivAssign, div_assign);

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        MpFloat(-self.0)
    }
}

impl Real for MpFloat {
    fn zero(ctx: &PrecisionContext) -> Self {
        MpFloat(rug::Float::with_val(ctx.prec_bits(), 0))
    }
    fn one(ctx: &PrecisionContext) -> Self {
        MpFloat(rug::Float::with_val(ctx.prec_bits(), 1))
    }
    fn from_f64(v: f64, ctx: &PrecisionContext) -> Self {
        MpFloat(rug::Float::with_val(ctx.prec_bits(), v))
    }
    fn from_i64(v: i64, ctx: &PrecisionContext) -> Self {
        MpFloat(rug::Float::with_val(ctx.prec_bits(), v))
    }
    fn from_bigint(v: &BigInt, ctx: &PrecisionContext) -> Self {
        let parsed = rug::Float::parse(v.to_string()).expect("decimal integer");
        MpFloat(rug::Float::with_val(ctx.prec_bits(), parsed))
    }
    fn pi(ctx: &PrecisionContext) -> Self {
        MpFloat(rug::Float::with_val(ctx.prec_bits(), Constant::Pi))
    }
    fn exp10(e: i32, ctx: &PrecisionContext) -> Self {
        MpFloat(rug::Float::with_val(ctx.prec_bits(), 10).pow(e))
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn abs(&self) -> Self {
        MpFloat(self.0.clone().abs())
    }
    fn sqrt(&self) -> Self {
        MpFloat(self.0.clone().sqrt())
    }
    fn sin(&self) -> Self {
        MpFloat(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        MpFloat(self.0.clone().cos())
    }
    fn exp(&self) -> Self {
        MpFloat(self.0.clone().exp())
    }
    fn powi(&self, e: i32) -> Self {
        MpFloat(self.0.clone().pow(e))
    }
    fn recip(&self) -> Self {
        MpFloat(self.0.clone().recip())
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn to_sci_string(&self, sig_digits: usize) -> String {
        // rug's formatting precision counts significant digits, not digits
        // after the point.
        format!("{:.*e}", sig_digits.max(1), self.0)
    }
    fn to_repr_string(&self) -> String {
        format!("{:.*e}", self.repr_digits(), self.0)
    }
    fn from_repr_string(s: &str, ctx: &PrecisionContext) -> Option<Self> {
        let parsed = rug::Float::parse(s).ok()?;
        let v = rug::Float::with_val(ctx.prec_bits(), parsed);
        v.is_finite().then_some(MpFloat(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_rejects_digits_below_minimum() {
        assert!(PrecisionContext::new(14).is_err());
        assert!(PrecisionContext::new(15).is_ok());
        assert_eq!(PrecisionContext::binary64().digits(), 15);
    }

    #[test]
    fn tolerance_follows_digits() {
        let ctx = PrecisionContext::binary64();
        let tol: f64 = ctx.tolerance();
        assert_eq!(tol, 1e-11);
        let ctx50 = PrecisionContext::new(50).unwrap();
        let tol50: MpFloat = ctx50.tolerance();
        let expected = MpFloat::exp10(-46, &ctx50);
        assert_eq!(tol50, expected);
    }

    #[test]
    fn prec_bits_covers_requested_digits() {
        let ctx = PrecisionContext::new(50).unwrap();
        assert!(ctx.prec_bits() >= 167);
        let ctx60 = PrecisionContext::new(60).unwrap();
        assert!(ctx60.prec_bits() >= 200);
    }

    #[test]
    fn mpfloat_sqrt_matches_reference_digits() {
        // sqrt(2) = 1.41421356237309504880168872420969807856967187537694...
        let ctx = PrecisionContext::new(50).unwrap();
        let two = MpFloat::from_i64(2, &ctx);
        let s = two.sqrt().to_sci_string(50);
        assert!(
            s.starts_with("1.4142135623730950488016887242096980785696718753769"),
            "{s}"
        );
    }

    #[test]
    fn mpfloat_pi_matches_reference_digits() {
        // pi = 3.14159265358979323846264338327950288419716939937510...
        let ctx = PrecisionContext::new(50).unwrap();
        let s = MpFloat::pi(&ctx).to_sci_string(50);
        assert!(
            s.starts_with("3.1415926535897932384626433832795028841971693993751"),
            "{s}"
        );
    }

    #[test]
    fn from_bigint_is_exact_within_precision() {
        let ctx = PrecisionContext::new(30).unwrap();
        let v = BigInt::parse_bytes(b"1310354163", 10).unwrap();
        let x = MpFloat::from_bigint(&v, &ctx);
        assert_eq!(x.to_f64(), 1310354163.0);
    }

    #[test]
    fn repr_string_round_trips_f64() {
        let ctx = PrecisionContext::binary64();
        for v in [0.1, -3.5e-13, 2.0 / 3.0, 81.92, f64::MIN_POSITIVE] {
            let s = v.to_repr_string();
            let back = f64::from_repr_string(&s, &ctx).unwrap();
            assert_eq!(v.to_bits(), back.to_bits(), "value {v}");
        }
    }

    #[test]
    fn repr_string_round_trips_mpfloat() {
        let ctx = PrecisionContext::new(40).unwrap();
        let third = MpFloat::from_ratio(1, 3, &ctx);
        let pi = MpFloat::pi(&ctx);
        for v in [third, pi, MpFloat::from_f64(-81.92, &ctx)] {
            let back = MpFloat::from_repr_string(&v.to_repr_string(), &ctx).unwrap();
            assert_eq!(v, back);
        }
    }

    #[test]
    fn from_ratio_single_rounding() {
        let ctx = PrecisionContext::binary64();
        let x = f64::from_ratio(1, 10, &ctx);
        assert_eq!(x, 0.1);
    }
}
