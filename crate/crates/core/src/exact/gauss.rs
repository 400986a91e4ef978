//! Gaussian rationals: exact complex scalars with rational real and
//! imaginary parts. Used to evaluate defining systems at candidate
//! indeterminacy points and to confirm reality invariance exactly.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::rational::Rational;

pub type GaussRational = Complex<Rational>;

pub fn gauss(re: Rational, im: Rational) -> GaussRational {
    Complex::new(re, im)
}

pub fn gauss_i() -> GaussRational {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn gauss_from_rational(re: &Rational) -> GaussRational {
    Complex::new(re.clone(), Rational::zero())
}

/// Exact inverse; `None` for zero.
pub fn gauss_inv(z: &GaussRational) -> Option<GaussRational> {
    let n = z.norm_sqr();
    if n.is_zero() {
        return None;
    }
    Some(Complex::new(z.re.clone() / n.clone(), -z.im.clone() / n))
}
