//! Sparse bivariate polynomials.
//!
//! Coefficients are indexed by exponent pairs `(i, j)` for `x^i y^j`;
//! zero terms are never stored, so a degree pair is always well defined
//! for nonzero polynomials. The central family here has three terms at
//! x-degree in the tens of thousands, hence the sparse map.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::rational::Rational;
use super::scalar::PolyScalar;
use super::upoly::UPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly<K: PolyScalar> {
    terms: BTreeMap<(u32, u32), K>,
}

impl<K: PolyScalar> BiPoly<K> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        BiPoly { terms }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        let key = match v {
            Var::X => (1, 0),
            Var::Y => (0, 1),
        };
        terms.insert(key, K::one());
        BiPoly { terms }
    }

    pub fn monomial(i: u32, j: u32, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (u32, u32, K)>) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in iter {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(i, j)) {
            None => {
                self.terms.insert((i, j), c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert((i, j), s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &K)> + '_ {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn deg(&self, var: Var) -> u32 {
        match var {
            Var::X => self.deg_x(),
            Var::Y => self.deg_y(),
        }
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.deg_x(), self.deg_y())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in other.terms.iter() {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in other.terms.iter() {
            out.add_term(i, j, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in self.terms.iter() {
            for (&(i2, j2), c2) in other.terms.iter() {
                out.add_term(i1 + i2, j1 + j2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(k, v)| (*k, v.mul(c))).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Graded-lex leading monomial: highest total degree, ties broken by
    /// x-degree.
    pub fn leading_monomial(&self) -> Option<(u32, u32)> {
        self.terms.keys().copied().max_by_key(|&(i, j)| (i + j, i))
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.leading_monomial().and_then(|k| self.terms.get(&k))
    }

    /// Exact division by a known divisor; `None` when not divisible.
    /// Greedy graded-lex leading-term cancellation, valid because for an
    /// exact division the leading term of the dividend is always divisible
    /// by the leading term of the divisor.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (di, dj) = divisor.leading_monomial().unwrap();
        let dlc = divisor.leading_coeff().unwrap().clone();
        let dlc_inv = dlc.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let (ri, rj) = rem.leading_monomial().unwrap();
            if ri < di || rj < dj {
                return None;
            }
            let c = rem.terms.get(&(ri, rj)).unwrap().mul(&dlc_inv);
            let (qi, qj) = (ri - di, rj - dj);
            quot.add_term(qi, qj, c.clone());
            for (&(i, j), v) in divisor.terms.iter() {
                rem.add_term(i + qi, j + qj, v.mul(&c).neg());
            }
        }
        Some(quot)
    }

    pub fn eval(&self, x: &K, y: &K) -> K {
        let mut acc = K::zero();
        for (&(i, j), c) in self.terms.iter() {
            acc = acc.add(&c.mul(&pow(x, i)).mul(&pow(y, j)));
        }
        acc
    }

    pub fn eval_c64(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j), c) in self.terms.iter() {
            acc += c.to_c64() * x.powu(i) * y.powu(j);
        }
        acc
    }

    /// Value together with the sum of term magnitudes at the point; the
    /// ratio of the two is a conditioning-aware relative residual.
    pub fn eval_c64_with_scale(&self, x: Complex64, y: Complex64) -> (Complex64, f64) {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mag = 0.0f64;
        for (&(i, j), c) in self.terms.iter() {
            let term = c.to_c64() * x.powu(i) * y.powu(j);
            acc += term;
            mag += term.norm();
        }
        (acc, mag)
    }

    /// Specialize `y` to a scalar, leaving a univariate polynomial in `x`.
    pub fn eval_y(&self, y: &K) -> UPoly<K> {
        let mut out = UPoly::zero();
        for (&(i, j), c) in self.terms.iter() {
            out.add_term(i, c.mul(&pow(y, j)));
        }
        out
    }

    pub fn eval_x(&self, x: &K) -> UPoly<K> {
        let mut out = UPoly::zero();
        for (&(i, j), c) in self.terms.iter() {
            out.add_term(j, c.mul(&pow(x, i)));
        }
        out
    }

    /// View as univariate in `var` with `BiPoly` coefficients collapsed to
    /// univariate polynomials in the other variable.
    pub fn coeffs_in(&self, var: Var) -> BTreeMap<u32, UPoly<K>> {
        let mut out: BTreeMap<u32, UPoly<K>> = BTreeMap::new();
        for (&(i, j), c) in self.terms.iter() {
            let (main, other) = match var {
                Var::X => (i, j),
                Var::Y => (j, i),
            };
            out.entry(main).or_insert_with(UPoly::zero).add_term(other, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Leading coefficient with respect to `var`, as a univariate
    /// polynomial in the other variable.
    pub fn leading_coeff_in(&self, var: Var) -> UPoly<K> {
        let d = self.deg(var);
        let mut out = UPoly::zero();
        for (&(i, j), c) in self.terms.iter() {
            let (main, other) = match var {
                Var::X => (i, j),
                Var::Y => (j, i),
            };
            if main == d {
                out.add_term(other, c.clone());
            }
        }
        out
    }

    /// Rebuild from a univariate-in-`var` coefficient view.
    pub fn from_coeffs_in(var: Var, coeffs: &BTreeMap<u32, UPoly<K>>) -> Self {
        let mut out = Self::zero();
        for (&main, p) in coeffs.iter() {
            for (other, c) in p.terms() {
                let (i, j) = match var {
                    Var::X => (main, other),
                    Var::Y => (other, main),
                };
                out.add_term(i, j, c.clone());
            }
        }
        out
    }

    pub fn as_univariate(&self, var: Var) -> Option<UPoly<K>> {
        let other = match var {
            Var::X => Var::Y,
            Var::Y => Var::X,
        };
        if self.deg(other) != 0 {
            return None;
        }
        let mut out = UPoly::zero();
        for (&(i, j), c) in self.terms.iter() {
            let e = match var {
                Var::X => i,
                Var::Y => j,
            };
            out.add_term(e, c.clone());
        }
        Some(out)
    }

    pub fn from_univariate(var: Var, p: &UPoly<K>) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            match var {
                Var::X => out.add_term(e, 0, c.clone()),
                Var::Y => out.add_term(0, e, c.clone()),
            }
        }
        out
    }

    pub fn map_coeffs<L: PolyScalar>(&self, f: impl Fn(&K) -> L) -> BiPoly<L> {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, f(c))).collect() }
    }

    /// Swap the roles of x and y.
    pub fn swap_vars(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    /// Canonical form under the graded-lex normalization.
    pub fn canonical(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => {
                let factor = K::canonical_factor(lc, self.terms.values());
                self.scale(&factor)
            }
        }
    }

    /// Terms sorted graded-lex descending, for printing.
    pub fn sorted_terms_desc(&self) -> Vec<(u32, u32, K)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&(i, j), c)| (i, j, c.clone())).collect();
        v.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        v
    }
}

fn pow<K: PolyScalar>(x: &K, mut e: u32) -> K {
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

impl BiPoly<Rational> {
    /// Content with respect to `var`: the gcd of the univariate
    /// coefficient polynomials in the other variable, canonical.
    pub fn content_in(&self, var: Var) -> UPoly<Rational> {
        let mut acc = UPoly::zero();
        for (_, p) in self.coeffs_in(var) {
            acc = if acc.is_zero() { p } else { acc.gcd(&p) };
            if acc.degree() == Some(0) {
                break;
            }
        }
        acc.canonical()
    }
}

impl<K: PolyScalar> fmt::Display for BiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, j, c) in self.sorted_terms_desc() {
            let cs = c.fmt_coeff();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if mag != "1" || (i == 0 && j == 0) {
                parts.push(mag);
            }
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{j}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    pub(crate) fn bp(terms: &[(u32, u32, i64)]) -> BiPoly<Rational> {
        BiPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, rat(c, 1))))
    }

    #[test]
    fn arithmetic_and_degrees() {
        let p = bp(&[(1, 0, 1), (0, 1, 1)]); // x + y
        let q = bp(&[(1, 0, 1), (0, 1, -1)]); // x - y
        let prod = p.mul(&q);
        assert_eq!(prod, bp(&[(2, 0, 1), (0, 2, -1)]));
        assert_eq!(prod.bidegree(), (2, 2));
        assert_eq!(prod.deg_x(), 2);
    }

    #[test]
    fn exact_division() {
        let p = bp(&[(2, 1, 6), (1, 2, -3)]);
        let d = bp(&[(1, 1, 3)]);
        assert_eq!(p.exact_div(&d).unwrap(), bp(&[(1, 0, 2), (0, 1, -1)]));
        assert_eq!(bp(&[(1, 0, 1), (0, 0, 1)]).exact_div(&bp(&[(0, 1, 1)])), None);
    }

    #[test]
    fn canonical_clears_to_integers() {
        let p = BiPoly::from_terms([(2, 0, rat(-1, 2)), (0, 0, rat(1, 3))]);
        let c = p.canonical();
        assert_eq!(c, bp(&[(2, 0, 3), (0, 0, -2)]));
        // leading (graded-lex) coefficient is positive
        assert_eq!(c.leading_coeff().unwrap(), &rat(3, 1));
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let p = bp(&[(0, 0, 1), (2, 1, 1), (1, 0, -2)]);
        assert_eq!(p.to_string(), "x^2*y - 2*x + 1");
        assert_eq!(bp(&[(0, 0, -5)]).to_string(), "-5");
    }

    #[test]
    fn content_extraction() {
        // (y^2 + y) * x + (y + 1): content in x is y + 1
        let p = bp(&[(1, 2, 1), (1, 1, 1), (0, 1, 1), (0, 0, 1)]);
        let c = p.content_in(Var::X);
        assert_eq!(c, UPoly::from_terms([(1, rat(1, 1)), (0, rat(1, 1))]));
    }
}
