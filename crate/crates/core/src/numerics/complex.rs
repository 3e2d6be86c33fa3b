//! Complex arithmetic over any [`Real`] backend.

use std::ops::{Add, Mul, Neg, Sub};

use super::{PrecisionContext, Real};

/// Complex number with explicit real and imaginary parts.
///
/// Hot loops use the by-reference methods (`mul`, `add_ref`, ...) to keep
/// clone traffic low with the arbitrary-precision backend; operator overloads
/// exist for the by-value convenience cases.
#[derive(Debug, Clone, PartialEq)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Complex<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self::new(T::zero(ctx), T::zero(ctx))
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::new(T::one(ctx), T::zero(ctx))
    }

    pub fn from_re(re: T, ctx: &PrecisionContext) -> Self {
        Self::new(re, T::zero(ctx))
    }

    /// `cos(angle) + i sin(angle)`.
    pub fn expi(angle: &T) -> Self {
        Self::new(angle.cos(), angle.sin())
    }

    /// `e^(re + i im)`.
    pub fn exp(&self) -> Self {
        let r = self.re.exp();
        Self::new(r.clone() * self.im.cos(), r * self.im.sin())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.re.clone() * s.clone(), self.im.clone() * s.clone())
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        Self::new(
            self.re.clone() + rhs.re.clone(),
            self.im.clone() + rhs.im.clone(),
        )
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        Self::new(
            self.re.clone() - rhs.re.clone(),
            self.im.clone() - rhs.im.clone(),
        )
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        Self::new(
            self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            self.re.clone() * rhs.im.clone() + self.im.clone() * rhs.re.clone(),
        )
    }

    pub fn mul_add_into(&self, rhs: &Self, acc: &mut Self) {
        acc.re += self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        acc.im += self.re.clone() * rhs.im.clone() + self.im.clone() * rhs.re.clone();
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let d = rhs.norm_sqr();
        let num = self.mul_ref(&rhs.conj());
        Self::new(num.re / d.clone(), num.im / d)
    }

    pub fn recip(&self, ctx: &PrecisionContext) -> Self {
        Complex::one(ctx).div(self)
    }

    pub fn norm_sqr(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn abs(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Integer power by binary exponentiation.
    pub fn powu(&self, mut n: u32, ctx: &PrecisionContext) -> Self {
        let mut base = self.clone();
        let mut acc = Complex::one(ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl<T: Real> Add for Complex<T> {
    type Output = Complex<T>;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<T: Real> Sub for Complex<T> {
    type Output = Complex<T>;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<T: Real> Mul for Complex<T> {
    type Output = Complex<T>;
    fn mul(self, rhs: Self) -> Self {
        Complex::mul_ref(&self, &rhs)
    }
}

impl<T: Real> Neg for Complex<T> {
    type Output = Complex<T>;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn multiplication_matches_hand_expansion() {
        // (1 + 2i)(3 - i) = 5 + 5i
        let p = c(1.0, 2.0).mul_ref(&c(3.0, -1.0));
        assert_eq!(p, c(5.0, 5.0));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = c(0.7, -1.9);
        let b = c(-2.3, 0.4);
        let q = a.mul_ref(&b).div(&b);
        assert!((q.re - a.re).abs() < 1e-14);
        assert!((q.im - a.im).abs() < 1e-14);
    }

    #[test]
    fn expi_lands_on_unit_circle() {
        let ctx = PrecisionContext::binary64();
        let z = Complex::<f64>::expi(&(std::f64::consts::PI / 3.0));
        assert!((z.abs() - 1.0).abs() < 1e-15);
        assert!((z.re - 0.5).abs() < 1e-15);
        let _ = ctx;
    }

    #[test]
    fn powu_matches_repeated_multiplication() {
        let ctx = PrecisionContext::binary64();
        let z = c(0.9, -0.3);
        let mut by_hand = Complex::one(&ctx);
        for _ in 0..7 {
            by_hand = by_hand.mul_ref(&z);
        }
        let fast = z.powu(7, &ctx);
        assert!((fast.re - by_hand.re).abs() < 1e-14);
        assert!((fast.im - by_hand.im).abs() < 1e-14);
    }

    #[test]
    fn exp_of_imaginary_is_rotation() {
        let z = c(0.0, std::f64::consts::FRAC_PI_2).exp();
        assert!(z.re.abs() < 1e-15);
        assert!((z.im - 1.0).abs() < 1e-15);
    }
}
