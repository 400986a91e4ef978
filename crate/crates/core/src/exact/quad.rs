//! Real quadratic extensions `a + b*sqrt(D)`.
//!
//! Values carry their radicand, fixed per arithmetic context. Comparison
//! is a strict total order consistent with the real embedding that takes
//! `sqrt(D) > 0`, decided purely by rational sign tests: the decisive
//! degree-growth threshold is numerically razor-thin, so no floating
//! point is allowed anywhere near a verdict.
//!
//! Purely rational values are stored with radicand 0 and combine freely
//! with any extension; mixing two genuinely irrational radicands is an
//! error.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use super::rational::{decimal_string, format_rational, to_f64, Rational};
use super::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExt {
    /// Radicand `D`; 0 means the value is rational. When nonzero it must
    /// not be a perfect square, so that `sqrt(D)` is irrational and the
    /// representation `a + b*sqrt(D)` is unique.
    radicand: u64,
    a: Rational,
    b: Rational,
}

fn is_perfect_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

impl QuadExt {
    pub fn new(radicand: u64, a: Rational, b: Rational) -> Result<Self, AlgebraError> {
        if b.is_zero() {
            return Ok(Self::from_rational(a));
        }
        if radicand == 0 || is_perfect_square(radicand) {
            return Err(AlgebraError::SquareRadicand(radicand));
        }
        Ok(QuadExt { radicand, a, b })
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadExt { radicand: 0, a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `sqrt(D)` itself.
    pub fn sqrt_of(radicand: u64) -> Result<Self, AlgebraError> {
        Self::new(radicand, Rational::zero(), Rational::one())
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn merge_radicand(&self, other: &Self) -> Result<u64, AlgebraError> {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(AlgebraError::MixedField(d1, d2)),
        }
    }

    fn build(radicand: u64, a: Rational, b: Rational) -> Self {
        if b.is_zero() {
            Self::from_rational(a)
        } else {
            QuadExt { radicand, a, b }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        let d = self.merge_radicand(other)?;
        Ok(Self::build(d, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        let d = self.merge_radicand(other)?;
        Ok(Self::build(d, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn neg(&self) -> Self {
        Self::build(self.radicand, -self.a.clone(), -self.b.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let d = self.merge_radicand(other)?;
        let surd = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * surd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::build(d, a, b))
    }

    /// Galois conjugate `a - b*sqrt(D)`.
    pub fn conjugate(&self) -> Self {
        Self::build(self.radicand, self.a.clone(), -self.b.clone())
    }

    /// Field norm `a^2 - b^2 D`, a rational.
    pub fn norm(&self) -> Rational {
        let surd = Rational::from_integer(BigInt::from(self.radicand));
        &self.a * &self.a - &self.b * &self.b * surd
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        debug_assert!(!n.is_zero(), "nonzero element with zero norm: radicand is a square");
        Some(Self::build(self.radicand, &self.a / &n, -(&self.b / &n)))
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        let inv = other.inv().ok_or(AlgebraError::ZeroDenominator)?;
        self.mul(&inv)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same radicand");
            }
            base = base.mul(&base).expect("same radicand");
            e >>= 1;
        }
        acc
    }

    /// Sign of the real embedding: -1, 0, or 1. Decided by rational sign
    /// analysis only: when the rational and surd parts disagree in sign,
    /// compare `a^2` against `b^2 D`.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) | (0, s) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                // a and b*sqrt(D) pull in opposite directions; the larger
                // square wins and carries the sign of its term
                let surd = Rational::from_integer(BigInt::from(self.radicand));
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * surd;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => 0,
                }
            }
        }
    }

    /// Exact order of the real embeddings. Errors when both operands have
    /// nonzero surd parts over different radicands.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, AlgebraError> {
        let diff = self.sub(other)?;
        Ok(match diff.sign() {
            s if s > 0 => Ordering::Greater,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * (self.radicand as f64).sqrt()
    }

    /// Rational enclosure `[lo, hi]` with `hi - lo <= 2*|b|/10^digits`.
    pub fn enclosure(&self, digits: u32) -> (Rational, Rational) {
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = BigInt::from(self.radicand) * &scale * &scale;
        let root_lo = scaled.sqrt();
        let root_hi = &root_lo + BigInt::one();
        let lo = Rational::new(root_lo, scale.clone());
        let hi = Rational::new(root_hi, scale);
        let (s_lo, s_hi) = if self.b.is_positive() { (lo, hi) } else { (hi, lo) };
        (&self.a + &self.b * s_lo, &self.a + &self.b * s_hi)
    }

    /// Decimal enclosure as a pair of strings, outward rounded.
    pub fn decimal_enclosure(&self, digits: u32) -> (String, String) {
        let (lo, hi) = self.enclosure(digits + 2);
        (decimal_string(&lo, digits, true), decimal_string(&hi, digits, false))
    }
}

fn rational_sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let b = if self.b.is_negative() {
            format!("-{}", format_rational(&self.b.abs()))
        } else {
            format_rational(&self.b)
        };
        if self.a.is_zero() {
            write!(f, "{}*sqrt({})", b, self.radicand)
        } else if self.b.is_negative() {
            write!(f, "{}{}*sqrt({})", format_rational(&self.a), b, self.radicand)
        } else {
            write!(f, "{}+{}*sqrt({})", format_rational(&self.a), b, self.radicand)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn q(d: u64, a: (i64, i64), b: (i64, i64)) -> QuadExt {
        QuadExt::new(d, rat(a.0, a.1), rat(b.0, b.1)).unwrap()
    }

    #[test]
    fn ordering_examples() {
        // 2 + sqrt(5) vs 17/4
        let u = q(5, (2, 1), (1, 1));
        let v = QuadExt::from_rational(rat(17, 4));
        assert_eq!(u.cmp_exact(&v).unwrap(), Ordering::Less);
        assert_eq!(u.cmp_exact(&u).unwrap(), Ordering::Equal);
        // 1 + sqrt(2) vs 5/2
        let u = q(2, (1, 1), (1, 1));
        let v = QuadExt::from_rational(rat(5, 2));
        assert_eq!(u.cmp_exact(&v).unwrap(), Ordering::Less);
        // and a Greater case to pin the other branch
        let u = q(2, (3, 1), (-1, 1));
        let v = QuadExt::from_rational(rat(3, 2));
        assert_eq!(u.cmp_exact(&v).unwrap(), Ordering::Greater);
    }

    #[test]
    fn mixed_radicands_rejected() {
        let u = q(2, (0, 1), (1, 1));
        let v = q(3, (0, 1), (1, 1));
        assert!(matches!(u.cmp_exact(&v), Err(AlgebraError::MixedField(2, 3))));
        assert!(matches!(QuadExt::new(9, rat(0, 1), rat(1, 1)), Err(AlgebraError::SquareRadicand(9))));
    }

    #[test]
    fn rational_values_mix_with_any_field() {
        let u = q(5, (1, 2), (1, 3));
        let r = QuadExt::from_rational(rat(7, 2));
        let s = u.add(&r).unwrap();
        assert_eq!(s.radicand(), 5);
        assert_eq!(s.rational_part(), &rat(4, 1));
    }

    #[test]
    fn inverse_round_trip() {
        let u = q(10, (3, 2), (-5, 7));
        let one = u.mul(&u.inv().unwrap()).unwrap();
        assert!(one.is_rational());
        assert_eq!(one.rational_part(), &rat(1, 1));
    }

    #[test]
    fn surd_squares_back_to_radicand() {
        let s = QuadExt::sqrt_of(50).unwrap();
        let sq = s.mul(&s).unwrap();
        assert!(sq.is_rational());
        assert_eq!(sq.rational_part(), &rat(50, 1));
    }

    #[test]
    fn enclosure_brackets_value() {
        let u = q(2, (1, 1), (1, 1)); // 1 + sqrt(2) = 2.41421356...
        let (lo, hi) = u.decimal_enclosure(8);
        assert_eq!(lo, "2.41421356");
        assert_eq!(hi, "2.41421357");
        let n = q(2, (0, 1), (-1, 1));
        let (lo, hi) = n.decimal_enclosure(6);
        assert_eq!(lo, "-1.414214");
        assert_eq!(hi, "-1.414213");
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(5, (2, 1), (1, 1)).to_string(), "2+1*sqrt(5)");
        assert_eq!(q(5, (0, 1), (-1, 3)).to_string(), "-1/3*sqrt(5)");
        assert_eq!(QuadExt::from_rational(rat(-3, 4)).to_string(), "-3/4");
    }
}
