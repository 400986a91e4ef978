//! Coefficient abstraction for polynomial arithmetic.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gauss::GaussRational;
use super::rational::{format_rational, to_f64, Rational};

/// A field of scalars usable as polynomial coefficients.
pub trait PolyScalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;
    /// Numeric embedding used for root isolation and display.
    fn to_c64(&self) -> Complex64;
    fn fmt_coeff(&self) -> String;
    /// Scale factor that brings a coefficient list into canonical form,
    /// given the designated leading coefficient. For rationals this
    /// clears to coprime integers with the leading coefficient positive;
    /// for other fields it makes the leading coefficient 1.
    fn canonical_factor<'a, I: Iterator<Item = &'a Self>>(leading: &Self, all: I) -> Self
    where
        Self: 'a;
}

impl PolyScalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(<Self as One>::one() / self)
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(self), 0.0)
    }
    fn fmt_coeff(&self) -> String {
        format_rational(self)
    }
    fn canonical_factor<'a, I: Iterator<Item = &'a Self>>(leading: &Self, all: I) -> Self {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in all {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        if num_gcd.is_zero() {
            return <Self as One>::one();
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        if (leading * &factor).is_negative() {
            factor = -factor;
        }
        factor
    }
}

impl PolyScalar for GaussRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn sub(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Option<Self> {
        super::gauss::gauss_inv(self)
    }
    fn from_rational(q: &Rational) -> Self {
        GaussRational::new(q.clone(), <Rational as Zero>::zero())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
    fn fmt_coeff(&self) -> String {
        if Zero::is_zero(&self.im) {
            format_rational(&self.re)
        } else {
            format!("({}+{}i)", format_rational(&self.re), format_rational(&self.im))
        }
    }
    fn canonical_factor<'a, I: Iterator<Item = &'a Self>>(leading: &Self, _all: I) -> Self {
        PolyScalar::inv(leading).unwrap_or_else(|| <Self as One>::one())
    }
}
