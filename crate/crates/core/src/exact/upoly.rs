//! Sparse univariate polynomials over a scalar field.
//!
//! Terms are kept in a sorted exponent map with no stored zeros, so the
//! high-degree but few-term polynomials that drive the degree-growth
//! threshold (degree tens of thousands, three terms) stay cheap.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::rational::Rational;
use super::scalar::PolyScalar;
use super::AlgebraError;

#[derive(Debug, Clone, PartialEq)]
pub struct UPoly<K: PolyScalar> {
    terms: BTreeMap<u32, K>,
}

impl<K: PolyScalar> UPoly<K> {
    pub fn zero() -> Self {
        UPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        UPoly { terms }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn monomial(exp: u32, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        UPoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (u32, K)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.terms.values().next_back()
    }

    pub fn coeff(&self, exp: u32) -> K {
        self.terms.get(&exp).cloned().unwrap_or_else(K::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &K)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(*e, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        UPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in other.terms.iter() {
                out.add_term(e1 + e2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly { terms: self.terms.iter().map(|(e, k)| (*e, k.mul(c))).collect() }
    }

    pub fn shift_exp(&self, by: u32) -> Self {
        UPoly { terms: self.terms.iter().map(|(e, k)| (e + by, k.clone())).collect() }
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let dlc_inv = divisor.leading_coeff().unwrap().inv().expect("field scalar");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff().unwrap().mul(&dlc_inv);
            let shift = rd - dd;
            quot.add_term(shift, factor.clone());
            for (e, c) in divisor.terms.iter() {
                rem.add_term(e + shift, c.mul(&factor).neg());
            }
        }
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv().expect("field scalar")),
        }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms.iter() {
            if *e > 0 {
                let factor = K::from_rational(&Rational::from_integer((*e).into()));
                out.add_term(e - 1, c.mul(&factor));
            }
        }
        out
    }

    pub fn eval(&self, x: &K) -> K {
        // sparse Horner over gaps
        let mut acc = K::zero();
        let mut last_exp: Option<u32> = None;
        for (e, c) in self.terms.iter().rev() {
            if let Some(prev) = last_exp {
                acc = acc.mul(&pow_scalar(x, prev - e));
            }
            acc = acc.add(c);
            last_exp = Some(*e);
        }
        if let Some(e) = last_exp {
            acc = acc.mul(&pow_scalar(x, e));
        }
        acc
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut last_exp: Option<u32> = None;
        for (e, c) in self.terms.iter().rev() {
            if let Some(prev) = last_exp {
                acc *= x.powu(prev - e);
            }
            acc += c.to_c64();
            last_exp = Some(*e);
        }
        if let Some(e) = last_exp {
            acc *= x.powu(e);
        }
        acc
    }

    /// Dense coefficient vector `[c0, c1, ..., c_deg]` in f64-complex,
    /// for the numeric root finder. Degree must be modest.
    pub fn dense_c64(&self) -> Vec<Complex64> {
        match self.degree() {
            None => vec![],
            Some(d) => {
                let mut v = vec![Complex64::new(0.0, 0.0); d as usize + 1];
                for (e, c) in self.terms.iter() {
                    v[*e as usize] = c.to_c64();
                }
                v
            }
        }
    }
}

fn pow_scalar<K: PolyScalar>(x: &K, mut e: u32) -> K {
    let mut base = x.clone();
    let mut acc = K::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

impl UPoly<Rational> {
    /// Canonical form: coprime integer coefficients, positive leading one.
    pub fn canonical(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => {
                let factor = <Rational as PolyScalar>::canonical_factor(lc, self.terms.values());
                self.scale(&factor)
            }
        }
    }

    /// Gcd in canonical form; each remainder is cleared to integer
    /// content so coefficient sizes stay near the subresultant bound
    /// instead of exploding through fraction towers.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.canonical();
        let mut b = other.canonical();
        while !b.is_zero() {
            let r = a.rem(&b).canonical();
            a = b;
            b = r;
        }
        a.canonical()
    }

    /// Extended gcd: returns `(g, s, t)` in canonical form for `g` with
    /// `s * self + t * other = g`.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Self::one();
        let mut s1 = Self::zero();
        let mut t0 = Self::zero();
        let mut t1 = Self::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        // rescale so the gcd is canonical
        if let Some(lc) = r0.leading_coeff() {
            let factor = <Rational as PolyScalar>::canonical_factor(lc, r0.terms.values());
            return (r0.scale(&factor), s0.scale(&factor), t0.scale(&factor));
        }
        (r0, s0, t0)
    }

    /// Square-free part `p / gcd(p, p')`, canonical.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        match self.exact_div(&g) {
            Some(q) => q.canonical(),
            None => self.canonical(),
        }
    }

    /// Number of distinct real roots, by Sturm's theorem. Exact.
    pub fn count_real_roots(&self) -> usize {
        let p = self.squarefree_part();
        let Some(deg) = p.degree() else { return 0 };
        if deg == 0 {
            return 0;
        }
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            // clear to integer content; only a positive factor is allowed
            // here or the sign variations would be corrupted
            let factor = num_traits::Signed::abs(&<Rational as PolyScalar>::canonical_factor(
                r.leading_coeff().unwrap(),
                r.terms.values(),
            ));
            chain.push(r.scale(&factor));
        }
        let vars_at = |at_minus_inf: bool| -> usize {
            let mut count = 0;
            let mut last = 0i32;
            for p in &chain {
                let (Some(d), Some(lc)) = (p.degree(), p.leading_coeff()) else { continue };
                let mut s = if num_traits::Signed::is_negative(lc) { -1 } else { 1 };
                if at_minus_inf && d % 2 == 1 {
                    s = -s;
                }
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
            count
        };
        vars_at(true) - vars_at(false)
    }

    /// Whether the root set is stable under `x -> -1/x`, i.e. whether
    /// `x^deg * p(-1/x)` is a scalar multiple of `p`. Exact.
    pub fn reversal_stable(&self) -> bool {
        let Some(deg) = self.degree() else { return true };
        let mut rev = Self::zero();
        for (e, c) in self.terms.iter() {
            let sign = if e % 2 == 0 { c.clone() } else { -c.clone() };
            rev.add_term(deg - e, sign);
        }
        rev.canonical() == self.canonical() || rev.canonical() == self.canonical().neg()
    }
}

/// Resultant of two univariate polynomials over a field, with the
/// convention `res(p, q) = lc(q)^deg(p) * prod p(beta)` over the roots
/// `beta` of `q`.
pub fn resultant_uni<K: PolyScalar>(p: &UPoly<K>, q: &UPoly<K>) -> Result<K, AlgebraError> {
    if p.is_zero() && q.is_zero() {
        return Err(AlgebraError::BothZero);
    }
    if p.is_zero() || q.is_zero() {
        // res with the zero polynomial: zero unless the other is a nonzero
        // constant, in which case the empty product is 1 scaled by nothing
        let other = if p.is_zero() { q } else { p };
        return Ok(if other.degree() == Some(0) { K::one() } else { K::zero() });
    }
    let mut a = p.clone();
    let mut b = q.clone();
    let mut scale = K::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            // res(a, const c) = c^deg(a)
            let c = b.leading_coeff().unwrap();
            return Ok(scale.mul(&pow_scalar(c, da)));
        }
        if da == 0 {
            let c = a.leading_coeff().unwrap();
            return Ok(scale.mul(&pow_scalar(c, db)));
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Ok(K::zero());
        }
        let dr = r.degree().unwrap();
        // res(a, b) = lc(b)^(da - dr) * res(r, b); then swap with sign
        scale = scale.mul(&pow_scalar(b.leading_coeff().unwrap(), da - dr));
        if (dr % 2 == 1) && (db % 2 == 1) {
            scale = scale.neg();
        }
        a = b;
        b = r;
    }
}

/// Lagrange interpolation through `(x_i, y_i)` with distinct `x_i`.
pub fn interpolate<K: PolyScalar>(points: &[(K, K)]) -> UPoly<K> {
    let mut acc = UPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = UPoly::constant(K::one());
        let mut denom = K::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UPoly::from_terms([(1, K::one()), (0, xj.neg())]));
            denom = denom.mul(&xi.sub(xj));
        }
        let w = yi.mul(&denom.inv().expect("distinct nodes"));
        acc = acc.add(&basis.scale(&w));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn upoly(coeffs: &[(u32, i64)]) -> UPoly<Rational> {
        UPoly::from_terms(coeffs.iter().map(|(e, c)| (*e, rat(*c, 1))))
    }

    #[test]
    fn div_rem_and_gcd() {
        let p = upoly(&[(2, 1), (0, -1)]); // x^2 - 1
        let q = upoly(&[(1, 1), (0, -1)]); // x - 1
        let (quot, rem) = p.div_rem(&q);
        assert!(rem.is_zero());
        assert_eq!(quot, upoly(&[(1, 1), (0, 1)]));
        assert_eq!(p.gcd(&q).canonical(), q.canonical());
    }

    #[test]
    fn sparse_high_degree_gcd_stays_cheap() {
        // numerator/denominator shape of the central rational fraction at
        // a very large degree: gcd must terminate fast via sparse steps
        let d = 16552u32;
        let num = UPoly::from_terms([(2 * d, rat(1, 1)), (d, rat(2, 3)), (0, rat(1, 1))]);
        let den = UPoly::from_terms([(2 * d, rat(1, 1)), (0, rat(1, 1))]);
        let g = num.gcd(&den);
        assert_eq!(g.degree(), Some(0));
    }

    #[test]
    fn sturm_counts() {
        // (x^2 - 2)(x^2 + 1): two real roots
        let p = upoly(&[(4, 1), (2, -1), (0, -2)]);
        assert_eq!(p.count_real_roots(), 2);
        // x^2 + 1: none
        assert_eq!(upoly(&[(2, 1), (0, 1)]).count_real_roots(), 0);
        // x^3: one distinct
        assert_eq!(upoly(&[(3, 1)]).count_real_roots(), 1);
        // high-degree sparse positive polynomial: none
        let d = 16552u32;
        let den = UPoly::from_terms([(2 * d, rat(1, 1)), (0, rat(1, 1))]);
        assert_eq!(den.count_real_roots(), 0);
    }

    #[test]
    fn reversal_stability() {
        // x^4 + 1 is stable under x -> -1/x
        assert!(upoly(&[(4, 1), (0, 1)]).reversal_stable());
        // x^2 + x + 1 maps to x^2 - x + 1: not stable
        assert!(!upoly(&[(2, 1), (1, 1), (0, 1)]).reversal_stable());
    }

    #[test]
    fn resultant_convention() {
        // res(x^2 + 1, x - 2) = p(2) = 5
        let p = upoly(&[(2, 1), (0, 1)]);
        let q = upoly(&[(1, 1), (0, -2)]);
        assert_eq!(resultant_uni(&p, &q).unwrap(), rat(5, 1));
        // shared root: zero
        assert_eq!(resultant_uni(&p, &p).unwrap(), rat(0, 1));
        // degree-(1,1) sign: res(ax+b, cx+d) = a*(-d/c)+b times c = bc - ad... here
        // res(x, x - 1) = p(1) = 1
        let x = upoly(&[(1, 1)]);
        let xm1 = upoly(&[(1, 1), (0, -1)]);
        assert_eq!(resultant_uni(&x, &xm1).unwrap(), rat(1, 1));
        assert_eq!(resultant_uni(&xm1, &x).unwrap(), rat(-1, 1));
    }

    #[test]
    fn interpolation_reconstructs() {
        let p = upoly(&[(3, 2), (1, -7), (0, 3)]);
        let pts: Vec<(Rational, Rational)> =
            (0..4).map(|k| (rat(k, 1), p.eval(&rat(k, 1)))).collect();
        assert_eq!(interpolate(&pts), p);
    }

    #[test]
    fn eval_sparse_horner() {
        let p = upoly(&[(5, 1), (2, -3), (0, 4)]);
        assert_eq!(p.eval(&rat(2, 1)), rat(32 - 12 + 4, 1));
        assert_eq!(p.eval(&rat(0, 1)), rat(4, 1));
    }
}
