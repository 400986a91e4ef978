//! Arbitrary-precision rationals.
//!
//! Backed by `num_rational::BigRational`, which already maintains the
//! canonical form used everywhere in this crate: reduced fraction,
//! positive denominator, zero stored as 0/1.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::AlgebraError;

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` with optional sign.
pub fn parse_rational(text: &str) -> Result<Rational, AlgebraError> {
    let bad = || AlgebraError::BadRational(text.to_string());
    let mut parts = text.trim().splitn(2, '/');
    let num: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    match parts.next() {
        None => Ok(Rational::from_integer(num)),
        Some(d) => {
            let den: BigInt = d.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(AlgebraError::ZeroDenominator);
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // fall back to a scaled quotient when numerator/denominator
        // individually overflow f64
        let scaled = q.numer().to_f64();
        match scaled {
            Some(n) => n / q.denom().to_f64().unwrap_or(f64::INFINITY),
            None => {
                if q.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            }
        }
    })
}

/// Decimal string with `digits` fractional digits, rounded toward
/// minus infinity (`floor = true`) or plus infinity.
pub fn decimal_string(q: &Rational, digits: u32, floor: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = q * Rational::from_integer(scale.clone());
    let int = if floor { scaled.floor() } else { scaled.ceil() };
    let int = int.to_integer();
    let neg = int.is_negative();
    let abs = int.abs().to_string();
    let abs = if abs.len() <= digits as usize {
        format!("{}{}", "0".repeat(digits as usize + 1 - abs.len()), abs)
    } else {
        abs
    };
    let split = abs.len() - digits as usize;
    let (hi, lo) = abs.split_at(split);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{hi}")
    } else {
        format!("{sign}{hi}.{lo}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/2", "0", "12", "-5"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert!(matches!(parse_rational("1/0"), Err(AlgebraError::ZeroDenominator)));
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn decimal_rounding_directions() {
        let third = rat(1, 3);
        assert_eq!(decimal_string(&third, 4, true), "0.3333");
        assert_eq!(decimal_string(&third, 4, false), "0.3334");
        let neg = rat(-1, 3);
        assert_eq!(decimal_string(&neg, 3, true), "-0.334");
        assert_eq!(decimal_string(&neg, 3, false), "-0.333");
        assert_eq!(decimal_string(&rat(5, 1), 2, true), "5.00");
    }
}
