//! Coprime bihomogeneous pairs: one projective coordinate of a map.
//!
//! A pair is stored through its dehomogenization `(num, den)` together
//! with a derived bidegree `(a, b) = (max deg_x, max deg_y)`; the
//! homogeneous forms in `(x0, x1; y0, y1)` are recovered by padding each
//! monomial `x^i y^j` to `x0^(a-i) x1^i y0^(b-j) y1^j`. Clearing the
//! affine gcd and recomputing the bidegree removes every common
//! bihomogeneous factor, including pure `x0`/`y0` powers.

use num_complex::Complex64;

use super::bipoly::BiPoly;
use super::gcd::{coprime_fast, poly_gcd};
use super::rational::Rational;
use super::scalar::PolyScalar;
use super::AlgebraError;

#[derive(Debug, Clone, PartialEq)]
pub struct BiHomPair {
    num: BiPoly<Rational>,
    den: BiPoly<Rational>,
}

impl BiHomPair {
    /// Builds the coprime canonical pair representing `num/den`.
    pub fn new(num: BiPoly<Rational>, den: BiPoly<Rational>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let (num, den) = match coprime_fast(&num, &den) {
            Some(true) => (num, den),
            _ => {
                let g = poly_gcd(&num, &den);
                if g.is_constant() {
                    (num, den)
                } else {
                    (
                        num.exact_div(&g).expect("gcd divides"),
                        den.exact_div(&g).expect("gcd divides"),
                    )
                }
            }
        };
        Ok(Self::canonicalize(num, den))
    }

    fn canonicalize(num: BiPoly<Rational>, den: BiPoly<Rational>) -> Self {
        // one joint scale: both polynomials integer with coprime overall
        // content, leading (graded-lex) coefficient of the denominator
        // positive
        let leading = den.leading_coeff().expect("nonzero denominator").clone();
        let factor = <Rational as PolyScalar>::canonical_factor(
            &leading,
            num.terms().map(|(_, _, c)| c).chain(den.terms().map(|(_, _, c)| c)),
        );
        BiHomPair { num: num.scale(&factor), den: den.scale(&factor) }
    }

    pub fn constant_one() -> Self {
        BiHomPair { num: BiPoly::one(), den: BiPoly::one() }
    }

    pub fn num(&self) -> &BiPoly<Rational> {
        &self.num
    }

    pub fn den(&self) -> &BiPoly<Rational> {
        &self.den
    }

    /// Degree pair of the bihomogeneous forms.
    pub fn bidegree(&self) -> (u32, u32) {
        let (nx, ny) = self.num.bidegree();
        let (dx, dy) = self.den.bidegree();
        (nx.max(dx), ny.max(dy))
    }

    pub fn is_identity_x(&self) -> bool {
        self.num == BiPoly::var(super::bipoly::Var::X) && self.den == BiPoly::one()
    }

    pub fn is_identity_y(&self) -> bool {
        self.num == BiPoly::var(super::bipoly::Var::Y) && self.den == BiPoly::one()
    }

    /// The two homogeneous forms as explicit monomial lists
    /// `(e_x0, e_x1, e_y0, e_y1, coeff)`.
    pub fn homogeneous_terms(&self) -> (Vec<(u32, u32, u32, u32, Rational)>, Vec<(u32, u32, u32, u32, Rational)>) {
        let (a, b) = self.bidegree();
        let lift = |p: &BiPoly<Rational>| {
            p.sorted_terms_desc()
                .into_iter()
                .map(|(i, j, c)| (a - i, i, b - j, j, c))
                .collect::<Vec<_>>()
        };
        (lift(&self.num), lift(&self.den))
    }

    /// Numeric evaluation of both homogeneous forms at projective input
    /// coordinates `(x0, x1; y0, y1)`. Inputs should be normalized to
    /// modulus at most 1 for stability.
    pub fn eval_hom_c64(
        &self,
        x0: Complex64,
        x1: Complex64,
        y0: Complex64,
        y1: Complex64,
    ) -> (Complex64, Complex64) {
        let (a, b) = self.bidegree();
        let pows = |base: Complex64, top: u32| -> Vec<Complex64> {
            let mut v = Vec::with_capacity(top as usize + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            for _ in 0..=top {
                v.push(acc);
                acc *= base;
            }
            v
        };
        let px0 = pows(x0, a);
        let px1 = pows(x1, a);
        let py0 = pows(y0, b);
        let py1 = pows(y1, b);
        let eval = |p: &BiPoly<Rational>| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, j, c) in p.terms() {
                acc += c.to_c64()
                    * px0[(a - i) as usize]
                    * px1[i as usize]
                    * py0[(b - j) as usize]
                    * py1[j as usize];
            }
            acc
        };
        (eval(&self.num), eval(&self.den))
    }

    /// Exact affine evaluation as a fraction; `None` when the denominator
    /// vanishes at the point.
    pub fn eval_exact<K: PolyScalar>(&self, x: &K, y: &K) -> Option<K> {
        let num = self.num.map_coeffs(|c| K::from_rational(c)).eval(x, y);
        let den = self.den.map_coeffs(|c| K::from_rational(c)).eval(x, y);
        den.inv().map(|d| num.mul(&d))
    }
}

/// Bihomogenizes the rational function `num/den`. The inputs must be
/// coprime; the denominator must be nonzero.
pub fn bihomogenize(num: BiPoly<Rational>, den: BiPoly<Rational>) -> Result<BiHomPair, AlgebraError> {
    BiHomPair::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::bipoly::Var;
    use crate::exact::rational::rat;

    fn bp(terms: &[(u32, u32, i64)]) -> BiPoly<Rational> {
        BiPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, rat(c, 1))))
    }

    #[test]
    fn fraction_numerator_example() {
        // (x^2+x+1)*y / (x^2+1) homogenizes to bidegree (2,1) with forms
        // (x1^2 + x0*x1 + x0^2) * y1 and (x1^2 + x0^2) * y0
        let num = bp(&[(2, 1, 1), (1, 1, 1), (0, 1, 1)]);
        let den = bp(&[(2, 0, 1), (0, 0, 1)]);
        let pair = bihomogenize(num, den).unwrap();
        assert_eq!(pair.bidegree(), (2, 1));
        let (n, d) = pair.homogeneous_terms();
        assert_eq!(
            n,
            vec![
                (0, 2, 0, 1, rat(1, 1)),
                (1, 1, 0, 1, rat(1, 1)),
                (2, 0, 0, 1, rat(1, 1)),
            ]
        );
        assert_eq!(d, vec![(0, 2, 1, 0, rat(1, 1)), (2, 0, 1, 0, rat(1, 1))]);
    }

    #[test]
    fn simple_cases() {
        let pair = bihomogenize(bp(&[(1, 0, 1)]), BiPoly::one()).unwrap();
        assert_eq!(pair.bidegree(), (1, 0));
        let pair = bihomogenize(bp(&[(0, 0, 5)]), BiPoly::one()).unwrap();
        assert_eq!(pair.bidegree(), (0, 0));
        assert!(matches!(
            bihomogenize(BiPoly::var(Var::X), BiPoly::zero()),
            Err(AlgebraError::ZeroDenominator)
        ));
    }

    #[test]
    fn clearing_common_factors() {
        // (x*y, x) reduces to (y, 1)
        let pair = BiHomPair::new(bp(&[(1, 1, 1)]), bp(&[(1, 0, 1)])).unwrap();
        assert_eq!(pair.num(), &bp(&[(0, 1, 1)]));
        assert_eq!(pair.den(), &BiPoly::one());
    }

    #[test]
    fn joint_scaling_keeps_ratio() {
        // x/2 + 1/3 over 1: cleared to (3x + 2) / 6
        let num = BiPoly::from_terms([(1, 0, rat(1, 2)), (0, 0, rat(1, 3))]);
        let pair = BiHomPair::new(num, BiPoly::one()).unwrap();
        assert_eq!(pair.num(), &bp(&[(1, 0, 3), (0, 0, 2)]));
        assert_eq!(pair.den(), &bp(&[(0, 0, 6)]));
    }

    #[test]
    fn dehomogenization_round_trip_exact() {
        let num = bp(&[(2, 1, 1), (1, 1, 1), (0, 1, 1)]);
        let den = bp(&[(2, 0, 1), (0, 0, 1)]);
        let pair = bihomogenize(num.clone(), den.clone()).unwrap();
        let x = rat(3, 7);
        let y = rat(-2, 5);
        let direct = num.eval(&x, &y) / den.eval(&x, &y);
        assert_eq!(pair.eval_exact(&x, &y).unwrap(), direct);
    }
}
