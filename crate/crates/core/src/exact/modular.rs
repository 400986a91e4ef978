//! Exact computation modulo a square-free univariate modulus, with
//! dynamic splitting.
//!
//! `Q[x]/(m)` for square-free `m` is a product of fields. Euclidean
//! steps on polynomials in `y` over this ring go through as long as the
//! leading coefficients are invertible; when an inversion meets a zero
//! divisor, the modulus splits into two smaller branches and the
//! computation resumes on each. This decides, without any irreducible
//! factorization, whether two bivariate systems share a common zero
//! above the roots of `m`.

use std::collections::BTreeMap;

use super::bipoly::{BiPoly, Var};
use super::rational::Rational;
use super::upoly::UPoly;
use super::AlgebraError;

type XU = UPoly<Rational>;
/// Polynomial in `y` with coefficients in `Q[x]/(m)`.
type YPoly = BTreeMap<u32, XU>;

enum Step<T> {
    Done(T),
    /// A proper factor of the modulus was discovered; split and retry.
    Split(XU),
}

fn reduce_coeff(c: &XU, m: &XU) -> XU {
    c.rem(m)
}

fn reduce_y(p: &YPoly, m: &XU) -> YPoly {
    let mut out = YPoly::new();
    for (e, c) in p {
        let r = reduce_coeff(c, m);
        if !r.is_zero() {
            out.insert(*e, r);
        }
    }
    out
}

fn bipoly_to_y(p: &BiPoly<Rational>) -> YPoly {
    p.coeffs_in(Var::Y)
}

/// Inverse of a nonzero reduced element, or the factor that obstructs it.
fn inv_mod(u: &XU, m: &XU) -> Step<XU> {
    let (g, s, _) = u.ext_gcd(m);
    if g.degree() == Some(0) {
        let scale = g.leading_coeff().unwrap().recip();
        Step::Done(s.scale(&scale).rem(m))
    } else {
        Step::Split(g.canonical())
    }
}

fn y_scale(p: &YPoly, c: &XU, m: &XU) -> YPoly {
    let mut out = YPoly::new();
    for (e, k) in p {
        let r = reduce_coeff(&k.mul(c), m);
        if !r.is_zero() {
            out.insert(*e, r);
        }
    }
    out
}

fn y_deg(p: &YPoly) -> Option<u32> {
    p.keys().next_back().copied()
}

/// Gcd in `(Q[x]/(m))[y]`, monic when nonconstant; splits on zero
/// divisors.
fn y_gcd_mod(a: &YPoly, b: &YPoly, m: &XU) -> Step<YPoly> {
    let mut a = reduce_y(a, m);
    let mut b = reduce_y(b, m);
    loop {
        if b.is_empty() {
            return Step::Done(a);
        }
        let db = y_deg(&b).unwrap();
        let lb = b.get(&db).unwrap().clone();
        let inv = match inv_mod(&lb, m) {
            Step::Done(i) => i,
            Step::Split(g) => return Step::Split(g),
        };
        let b_monic = y_scale(&b, &inv, m);
        // a mod b_monic
        let mut r = a.clone();
        while let Some(dr) = y_deg(&r) {
            if dr < db {
                break;
            }
            let lr = r.get(&dr).unwrap().clone();
            for (e, c) in &b_monic {
                let delta = reduce_coeff(&c.mul(&lr), m);
                let key = e + (dr - db);
                let cur = r.remove(&key).unwrap_or_else(UPoly::zero).sub(&delta);
                let cur = reduce_coeff(&cur, m);
                if !cur.is_zero() {
                    r.insert(key, cur);
                }
            }
            r.remove(&dr);
        }
        a = b_monic;
        b = r;
    }
}

/// Whether a reduced y-polynomial is "no common root": nonzero and of
/// y-degree 0.
fn is_nonzero_constant(p: &YPoly) -> bool {
    y_deg(p) == Some(0)
}

/// Decides whether the systems `{a0 = a1 = 0}` and `{b0 = b1 = 0}` share
/// a common solution whose x-coordinate is a root of the square-free
/// polynomial `factor`. Exact; no floating point.
pub fn systems_share_point_above(
    a: (&BiPoly<Rational>, &BiPoly<Rational>),
    b: (&BiPoly<Rational>, &BiPoly<Rational>),
    factor: &XU,
) -> Result<bool, AlgebraError> {
    let a0 = bipoly_to_y(a.0);
    let a1 = bipoly_to_y(a.1);
    let b0 = bipoly_to_y(b.0);
    let b1 = bipoly_to_y(b.1);
    let mut branches = vec![factor.canonical()];
    while let Some(m) = branches.pop() {
        let Some(dm) = m.degree() else { continue };
        if dm == 0 {
            continue;
        }
        match branch_decides(&a0, &a1, &b0, &b1, &m) {
            Step::Done(true) => return Ok(true),
            Step::Done(false) => {}
            Step::Split(g) => {
                let rest = m.exact_div(&g).ok_or(AlgebraError::BothZero)?;
                branches.push(g);
                branches.push(rest.canonical());
            }
        }
    }
    Ok(false)
}

fn branch_decides(a0: &YPoly, a1: &YPoly, b0: &YPoly, b1: &YPoly, m: &XU) -> Step<bool> {
    let ga = match y_gcd_mod(a0, a1, m) {
        Step::Done(g) => g,
        Step::Split(g) => return Step::Split(g),
    };
    if is_nonzero_constant(&ga) {
        return Step::Done(false);
    }
    let gb = match y_gcd_mod(b0, b1, m) {
        Step::Done(g) => g,
        Step::Split(g) => return Step::Split(g),
    };
    if is_nonzero_constant(&gb) {
        return Step::Done(false);
    }
    // an identically-zero gcd means the whole fiber solves that system;
    // the other gcd being nonconstant (or zero) then yields a common point
    if ga.is_empty() {
        return Step::Done(!is_nonzero_constant(&gb));
    }
    if gb.is_empty() {
        return Step::Done(true);
    }
    match y_gcd_mod(&ga, &gb, m) {
        Step::Done(k) => Step::Done(!is_nonzero_constant(&k) && !k.is_empty()),
        Step::Split(g) => Step::Split(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn bp(terms: &[(u32, u32, i64)]) -> BiPoly<Rational> {
        BiPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, rat(c, 1))))
    }

    fn xp(coeffs: &[(u32, i64)]) -> XU {
        UPoly::from_terms(coeffs.iter().map(|&(e, c)| (e, rat(c, 1))))
    }

    #[test]
    fn shared_rational_point_found() {
        // A: {y - x = 0, y + x - 2 = 0} has the single zero (1, 1)
        let a = (bp(&[(0, 1, 1), (1, 0, -1)]), bp(&[(0, 1, 1), (1, 0, 1), (0, 0, -2)]));
        // B: {y - 1 = 0, x - 1 = 0}
        let b = (bp(&[(0, 1, 1), (0, 0, -1)]), bp(&[(1, 0, 1), (0, 0, -1)]));
        let factor = xp(&[(1, 1), (0, -1)]); // x - 1
        assert!(systems_share_point_above((&a.0, &a.1), (&b.0, &b.1), &factor).unwrap());
    }

    #[test]
    fn mismatched_fibers_rejected() {
        // A has (1, 1); B has (1, -1): same x, different y
        let a = (bp(&[(0, 1, 1), (0, 0, -1)]), bp(&[(1, 0, 1), (0, 0, -1)]));
        let b = (bp(&[(0, 1, 1), (0, 0, 1)]), bp(&[(1, 0, 1), (0, 0, -1)]));
        let factor = xp(&[(1, 1), (0, -1)]);
        assert!(!systems_share_point_above((&a.0, &a.1), (&b.0, &b.1), &factor).unwrap());
    }

    #[test]
    fn irrational_common_point() {
        // A: {y^2 - x = 0, y^2 + y - x - ... } force y = sqrt(2) at x = 2:
        // A: {y^2 - 2 = 0, x - 2 = 0}, B: {y^2 - x = 0, x - 2 = 0}
        let a = (bp(&[(0, 2, 1), (0, 0, -2)]), bp(&[(1, 0, 1), (0, 0, -2)]));
        let b = (bp(&[(0, 2, 1), (1, 0, -1)]), bp(&[(1, 0, 1), (0, 0, -2)]));
        let factor = xp(&[(1, 1), (0, -2)]); // x - 2
        assert!(systems_share_point_above((&a.0, &a.1), (&b.0, &b.1), &factor).unwrap());
    }

    #[test]
    fn splitting_modulus_works() {
        // modulus (x - 1)(x - 2); A solves only above x = 1, B only above
        // x = 2, and the leading coefficient (x - 1) of A's first
        // polynomial is a zero divisor that forces a split
        let a = (
            bp(&[(1, 1, 1), (0, 1, -1), (0, 0, 0)]), // (x - 1) y
            bp(&[(0, 1, 1), (0, 0, -5)]),            // y - 5
        );
        let b = (
            bp(&[(0, 1, 1), (0, 0, -7)]), // y - 7
            bp(&[(1, 0, 1), (0, 0, -2)]), // x - 2
        );
        let factor = xp(&[(2, 1), (1, -3), (0, 2)]); // x^2 - 3x + 2
        // A above x = 1: (x-1)y = 0 for all y, y = 5: point (1, 5); B above
        // x = 2 only: (2, 7). no common point
        assert!(!systems_share_point_above((&a.0, &a.1), (&b.0, &b.1), &factor).unwrap());
        // make them meet at (2, 7): A' = {(x-1)y - 7, y - 7}
        let a2 = (bp(&[(1, 1, 1), (0, 1, -1), (0, 0, -7)]), bp(&[(0, 1, 1), (0, 0, -7)]));
        assert!(systems_share_point_above((&a2.0, &a2.1), (&b.0, &b.1), &factor).unwrap());
    }
}
