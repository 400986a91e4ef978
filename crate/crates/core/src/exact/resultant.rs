//! Bivariate resultants by evaluation and interpolation.
//!
//! `Res_x(p, q)` is a polynomial in `y` of degree at most
//! `deg_x(p) deg_y(q) + deg_x(q) deg_y(p)`. Specialization at a sample
//! point commutes with the resultant as long as neither leading
//! coefficient vanishes there, so sampling enough safe points and
//! interpolating reconstructs it exactly over the rationals.

use num_traits::Zero;

use super::bipoly::{BiPoly, Var};
use super::rational::{rat_int, Rational};
use super::upoly::{interpolate, resultant_uni, UPoly};
use super::AlgebraError;

/// Resultant of `p` and `q` with respect to `var`; the result is a
/// polynomial in the other variable (embedded as a `BiPoly`).
pub fn resultant(
    p: &BiPoly<Rational>,
    q: &BiPoly<Rational>,
    var: Var,
) -> Result<BiPoly<Rational>, AlgebraError> {
    let other = match var {
        Var::X => Var::Y,
        Var::Y => Var::X,
    };
    Ok(BiPoly::from_univariate(other, &resultant_upoly(p, q, var)?))
}

/// Same as [`resultant`] but returning the eliminant as a univariate
/// polynomial in the surviving variable.
pub fn resultant_upoly(
    p: &BiPoly<Rational>,
    q: &BiPoly<Rational>,
    var: Var,
) -> Result<UPoly<Rational>, AlgebraError> {
    if p.is_zero() && q.is_zero() {
        return Err(AlgebraError::BothZero);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(UPoly::zero());
    }
    let (dp, dq) = (p.deg(var), q.deg(var));
    let other = match var {
        Var::X => Var::Y,
        Var::Y => Var::X,
    };
    // degenerate main degrees: res(p, q) = p^deg_var(q) when p does not
    // involve var at all (empty product convention handled in the
    // univariate kernel)
    if dp == 0 && dq == 0 {
        return Ok(UPoly::one());
    }
    if dp == 0 || dq == 0 {
        let (consty, e) = if dp == 0 { (p, dq) } else { (q, dp) };
        let base = consty.as_univariate(other).expect("var-free polynomial");
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        return Ok(acc);
    }
    let bound = dp * q.deg(other) + dq * p.deg(other);
    // two exact routes: evaluation/interpolation for small degree bounds,
    // a fraction-free Sylvester determinant when the sample count would
    // dwarf the matrix dimension
    if bound > 48 && dp + dq <= 2 * bound {
        return Ok(sylvester_resultant(p, q, var));
    }
    interpolated_resultant(p, q, var, bound)
}

fn interpolated_resultant(
    p: &BiPoly<Rational>,
    q: &BiPoly<Rational>,
    var: Var,
    bound: u32,
) -> Result<UPoly<Rational>, AlgebraError> {
    let lp = p.leading_coeff_in(var);
    let lq = q.leading_coeff_in(var);
    let mut samples: Vec<(Rational, Rational)> = Vec::with_capacity(bound as usize + 1);
    let mut k = 0i64;
    while samples.len() < bound as usize + 1 {
        let v = rat_int(k);
        k = if k > 0 { -k } else { -k + 1 };
        if lp.eval(&v).is_zero() || lq.eval(&v).is_zero() {
            continue;
        }
        let pu = specialize(p, var, &v);
        let qu = specialize(q, var, &v);
        let r = resultant_uni(&pu, &qu)?;
        samples.push((v, r));
    }
    Ok(interpolate(&samples))
}

/// Fraction-free (Bareiss) determinant of the Sylvester matrix in `var`.
/// With the convention used here, `res(p, q)` is the determinant of the
/// Sylvester matrix whose first `deg p` rows hold the coefficients of
/// `q` and whose remaining `deg q` rows hold those of `p`.
pub fn sylvester_resultant(p: &BiPoly<Rational>, q: &BiPoly<Rational>, var: Var) -> UPoly<Rational> {
    let dp = p.deg(var) as usize;
    let dq = q.deg(var) as usize;
    let size = dp + dq;
    let p_coeffs = p.coeffs_in(var);
    let q_coeffs = q.coeffs_in(var);
    let coeff = |m: &std::collections::BTreeMap<u32, UPoly<Rational>>, e: usize| {
        m.get(&(e as u32)).cloned().unwrap_or_else(UPoly::zero)
    };
    let mut matrix: Vec<Vec<UPoly<Rational>>> = Vec::with_capacity(size);
    for row in 0..dp {
        let mut r = vec![UPoly::zero(); size];
        for e in 0..=dq {
            r[row + dq - e] = coeff(&q_coeffs, e);
        }
        matrix.push(r);
    }
    for row in 0..dq {
        let mut r = vec![UPoly::zero(); size];
        for e in 0..=dp {
            r[row + dp - e] = coeff(&p_coeffs, e);
        }
        matrix.push(r);
    }
    // Bareiss elimination: every division is exact over the polynomial ring
    let mut sign = 1i32;
    let mut prev = UPoly::one();
    for k in 0..size {
        if matrix[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&r| !matrix[r][k].is_zero()) else {
                return UPoly::zero();
            };
            matrix.swap(k, swap);
            sign = -sign;
        }
        if k == size - 1 {
            break;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = matrix[i][j].mul(&matrix[k][k]).sub(&matrix[i][k].mul(&matrix[k][j]));
                matrix[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            matrix[i][k] = UPoly::zero();
        }
        prev = matrix[k][k].clone();
    }
    let det = matrix[size - 1][size - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

// Res_x needs univariate polynomials in x, so fix y at the sample value
// (and symmetrically for Res_y).
fn specialize(p: &BiPoly<Rational>, var: Var, value: &Rational) -> UPoly<Rational> {
    match var {
        Var::X => p.eval_y(value),
        Var::Y => p.eval_x(value),
    }
}

/// Common roots of the two leading coefficients make the vanishing
/// criterion for the resultant unreliable there; report the locus.
pub fn leading_degeneration(
    p: &BiPoly<Rational>,
    q: &BiPoly<Rational>,
    var: Var,
) -> UPoly<Rational> {
    p.leading_coeff_in(var).gcd(&q.leading_coeff_in(var))
}
