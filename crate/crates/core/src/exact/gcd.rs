//! Bivariate polynomial gcd.
//!
//! The general case runs a subresultant polynomial remainder sequence in
//! the main variable over coefficient polynomials in the other variable,
//! after splitting off contents. A cheap specialization test certifies
//! coprimality first, which is the overwhelmingly common case when
//! clearing composed map coordinates.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::bipoly::{BiPoly, Var};
use super::rational::{rat_int, Rational};
use super::upoly::UPoly;

type XPoly = BTreeMap<u32, UPoly<Rational>>;

fn xp_degree(p: &XPoly) -> Option<u32> {
    p.keys().next_back().copied()
}

fn xp_lc(p: &XPoly) -> UPoly<Rational> {
    p.values().next_back().cloned().unwrap_or_else(UPoly::zero)
}

fn xp_scale(p: &XPoly, c: &UPoly<Rational>) -> XPoly {
    p.iter().map(|(e, q)| (*e, q.mul(c))).collect()
}

fn xp_exact_div(p: &XPoly, c: &UPoly<Rational>) -> Option<XPoly> {
    let mut out = XPoly::new();
    for (e, q) in p.iter() {
        out.insert(*e, q.exact_div(c)?);
    }
    Some(out)
}

fn xp_content(p: &XPoly) -> UPoly<Rational> {
    let mut acc = UPoly::zero();
    for q in p.values() {
        acc = if acc.is_zero() { q.clone() } else { acc.gcd(q) };
        if acc.degree() == Some(0) {
            break;
        }
    }
    acc.canonical()
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, all in (Q[y])[x].
fn xp_pseudo_rem(a: &XPoly, b: &XPoly) -> XPoly {
    let db = xp_degree(b).expect("nonzero divisor");
    let lb = xp_lc(b);
    let mut r = a.clone();
    let mut scale_left = xp_degree(a).unwrap() - db + 1;
    while let Some(dr) = xp_degree(&r) {
        if dr < db {
            break;
        }
        let lr = xp_lc(&r);
        // r <- lb * r - lr * x^(dr-db) * b
        let mut next = xp_scale(&r, &lb);
        for (e, c) in b.iter() {
            let key = e + (dr - db);
            let sub = c.mul(&lr);
            let entry = next.remove(&key).unwrap_or_else(UPoly::zero).sub(&sub);
            if !entry.is_zero() {
                next.insert(key, entry);
            }
        }
        next.remove(&dr);
        r = next;
        scale_left -= 1;
    }
    for _ in 0..scale_left {
        r = xp_scale(&r, &lb);
    }
    r
}

/// Primitive-part gcd of two primitive polynomials in (Q[y])[x] via the
/// subresultant remainder sequence.
fn xp_subresultant_gcd(a: XPoly, b: XPoly) -> XPoly {
    let (mut f_prev, mut f_cur) = if xp_degree(&a) >= xp_degree(&b) { (a, b) } else { (b, a) };
    if f_cur.is_empty() {
        return f_prev;
    }
    let one = UPoly::constant(Rational::one());
    let mut n_prev = xp_degree(&f_prev).unwrap();
    let mut n_cur = xp_degree(&f_cur).unwrap();
    let mut a_prev = one.clone();
    let mut c_prev = one;
    loop {
        let rem = xp_pseudo_rem(&f_prev, &f_cur);
        if rem.is_empty() {
            return f_cur;
        }
        let delta = n_prev - n_cur;
        // divisor = -a_prev * (-c_prev)^delta
        let mut c_pow = UPoly::constant(Rational::one());
        for _ in 0..delta {
            c_pow = c_pow.mul(&c_prev.neg());
        }
        let divisor = a_prev.neg().mul(&c_pow);
        let f_next = xp_exact_div(&rem, &divisor).expect("subresultant divisor divides exactly");
        let n_next = xp_degree(&f_next).unwrap();
        let a_cur = xp_lc(&f_cur);
        // c_cur = a_cur^delta * c_prev^(1 - delta), the negative power as
        // an exact division
        let mut a_pow = UPoly::constant(Rational::one());
        for _ in 0..delta {
            a_pow = a_pow.mul(&a_cur);
        }
        let c_cur = if delta == 0 {
            a_pow.mul(&c_prev)
        } else {
            let mut c_den = UPoly::constant(Rational::one());
            for _ in 0..delta - 1 {
                c_den = c_den.mul(&c_prev);
            }
            a_pow.exact_div(&c_den).expect("subresultant scale divides exactly")
        };
        f_prev = f_cur;
        f_cur = f_next;
        n_prev = n_cur;
        n_cur = n_next;
        a_prev = a_cur;
        c_prev = c_cur;
    }
}

fn to_xpoly(p: &BiPoly<Rational>, main: Var) -> XPoly {
    p.coeffs_in(main)
}

fn from_xpoly(p: &XPoly, main: Var) -> BiPoly<Rational> {
    BiPoly::from_coeffs_in(main, p)
}

/// Greatest common divisor in content-primitive canonical form. The gcd
/// of anything with zero is the normalized other argument.
pub fn poly_gcd(p: &BiPoly<Rational>, q: &BiPoly<Rational>) -> BiPoly<Rational> {
    if p.is_zero() {
        return q.canonical();
    }
    if q.is_zero() {
        return p.canonical();
    }
    if p.is_constant() || q.is_constant() {
        return BiPoly::one();
    }
    if coprime_fast(p, q) == Some(true) {
        return BiPoly::one();
    }
    // univariate fast paths
    for var in [Var::X, Var::Y] {
        if let (Some(pu), Some(qu)) = (p.as_univariate(var), q.as_univariate(var)) {
            return BiPoly::from_univariate(var, &pu.gcd(&qu).canonical()).canonical();
        }
    }
    // one argument free of the main variable: gcd lives in the other one
    if p.deg_x() == 0 || q.deg_x() == 0 {
        let (uni, full) = if p.deg_x() == 0 { (p, q) } else { (q, p) };
        let u = uni.as_univariate(Var::Y).expect("x-free polynomial");
        let g = u.gcd(&full.content_in(Var::X));
        return BiPoly::from_univariate(Var::Y, &g.canonical()).canonical();
    }
    if p.deg_y() == 0 || q.deg_y() == 0 {
        let (uni, full) = if p.deg_y() == 0 { (p, q) } else { (q, p) };
        let u = uni.as_univariate(Var::X).expect("y-free polynomial");
        let g = u.gcd(&full.content_in(Var::Y));
        return BiPoly::from_univariate(Var::X, &g.canonical()).canonical();
    }
    // pick the main variable with the smaller degree bound
    let main = if p.deg_x().max(q.deg_x()) <= p.deg_y().max(q.deg_y()) { Var::X } else { Var::Y };
    let px = to_xpoly(p, main);
    let qx = to_xpoly(q, main);
    let cont_p = xp_content(&px);
    let cont_q = xp_content(&qx);
    let cont_gcd = cont_p.gcd(&cont_q);
    let pp = xp_exact_div(&px, &cont_p).expect("content divides");
    let qp = xp_exact_div(&qx, &cont_q).expect("content divides");
    let raw = xp_subresultant_gcd(pp, qp);
    let raw_primitive = xp_exact_div(&raw, &xp_content(&raw)).expect("content divides");
    let combined = xp_scale(&raw_primitive, &cont_gcd);
    from_xpoly(&combined, main).canonical()
}

/// Quick exact coprimality certificate: `Some(true)` means certainly
/// coprime, `Some(false)` means certainly not, `None` is inconclusive.
pub fn coprime_fast(p: &BiPoly<Rational>, q: &BiPoly<Rational>) -> Option<bool> {
    if p.is_zero() || q.is_zero() {
        return Some(false);
    }
    if p.is_constant() || q.is_constant() {
        return Some(true);
    }
    for (main, spec) in [(Var::X, Var::Y), (Var::Y, Var::X)] {
        if p.deg(main) == 0 || q.deg(main) == 0 {
            continue;
        }
        let lp = p.leading_coeff_in(main);
        let lq = q.leading_coeff_in(main);
        // a nonconstant specialized gcd at one sample can be a
        // coincidence, so keep sampling before falling back to the full
        // remainder sequence
        let mut tried = 0;
        for k in 0..64i64 {
            if tried >= 6 {
                break;
            }
            let v = rat_int(k);
            if lp.eval(&v).is_zero() || lq.eval(&v).is_zero() {
                continue;
            }
            tried += 1;
            let pu = match spec {
                Var::Y => p.eval_y(&v),
                Var::X => p.eval_x(&v),
            };
            let qu = match spec {
                Var::Y => q.eval_y(&v),
                Var::X => q.eval_x(&v),
            };
            let g = pu.gcd(&qu);
            if g.degree() == Some(0) {
                // no common factor involving the main variable; a common
                // factor could only live in the spectated variable
                let cp = p.content_in(main);
                let cq = q.content_in(main);
                if cp.gcd(&cq).degree() == Some(0) {
                    return Some(true);
                }
                return Some(false);
            }
        }
    }
    None
}
