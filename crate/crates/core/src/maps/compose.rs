//! Composition of surface maps with common-factor clearing.
//!
//! For a coordinate pair of `f` with bidegree `(a, b)`, the composed
//! numerator substitutes the coordinate fractions of `g` into the
//! monomials of `f` after clearing denominators:
//! `x^i y^j  ->  n1^i d1^(a-i) n2^j d2^(b-j)`.
//! The shared multiplier `d1^a d2^b` is the same for numerator and
//! denominator, so the ratio is preserved; the pair constructor then
//! divides out whatever gcd appears. Degrees drop below the matrix
//! product exactly when the map chain is not algebraically stable.

use crate::exact::bihom::BiHomPair;
use crate::exact::bipoly::BiPoly;
use crate::exact::rational::Rational;

use super::bidegree::BidegreeMatrix;
use super::surface_map::SurfaceMap;
use super::MapError;

/// Power table `[p^0, p^1, ..., p^top]`.
fn powers(p: &BiPoly<Rational>, top: u32) -> Vec<BiPoly<Rational>> {
    let mut v = Vec::with_capacity(top as usize + 1);
    v.push(BiPoly::one());
    for k in 1..=top {
        let next = v[k as usize - 1].mul(p);
        v.push(next);
    }
    v
}

struct Substitution {
    n1: Vec<BiPoly<Rational>>,
    d1: Vec<BiPoly<Rational>>,
    n2: Vec<BiPoly<Rational>>,
    d2: Vec<BiPoly<Rational>>,
}

impl Substitution {
    fn new(g: &SurfaceMap, a: u32, b: u32) -> Self {
        Substitution {
            n1: powers(g.coord_x().num(), a),
            d1: powers(g.coord_x().den(), a),
            n2: powers(g.coord_y().num(), b),
            d2: powers(g.coord_y().den(), b),
        }
    }

    fn apply(&self, p: &BiPoly<Rational>, a: u32, b: u32) -> BiPoly<Rational> {
        let mut acc = BiPoly::zero();
        for (i, j, c) in p.terms() {
            let term = self.n1[i as usize]
                .mul(&self.d1[(a - i) as usize])
                .mul(&self.n2[j as usize])
                .mul(&self.d2[(b - j) as usize])
                .scale(c);
            acc = acc.add(&term);
        }
        acc
    }
}

/// `f` after `g`, i.e. the map `p -> f(g(p))`, with cleared coordinates.
/// When both maps carry inverses the composed inverse `g^-1 after f^-1`
/// is attached as well.
pub fn compose(f: &SurfaceMap, g: &SurfaceMap) -> Result<SurfaceMap, MapError> {
    compose_with_cap(f, g, None)
}

/// Composition with a cap on the raw substitution bidegree (max entry of
/// the predicted degree pair before clearing).
pub fn compose_with_cap(
    f: &SurfaceMap,
    g: &SurfaceMap,
    cap: Option<u64>,
) -> Result<SurfaceMap, MapError> {
    if let Some(cap) = cap {
        let (a1, b1) = f.coord_x().bidegree();
        let (a2, b2) = f.coord_y().bidegree();
        let (c1, d1) = g.coord_x().bidegree();
        let (c2, d2) = g.coord_y().bidegree();
        let raw = [
            a1 as u64 * c1 as u64 + b1 as u64 * c2 as u64,
            a1 as u64 * d1 as u64 + b1 as u64 * d2 as u64,
            a2 as u64 * c1 as u64 + b2 as u64 * c2 as u64,
            a2 as u64 * d1 as u64 + b2 as u64 * d2 as u64,
        ];
        let worst = raw.into_iter().max().unwrap();
        if worst > cap {
            return Err(MapError::DegreeCapExceeded { got: worst, cap });
        }
    }
    let composed = compose_coords(f, g)?;
    let inverse = match (f.inverse(), g.inverse()) {
        (Some(fi), Some(gi)) => Some(compose_coords(gi, fi)?),
        _ => None,
    };
    Ok(match inverse {
        Some(inv) => composed.with_inverse(inv),
        None => composed,
    })
}

fn compose_coords(f: &SurfaceMap, g: &SurfaceMap) -> Result<SurfaceMap, MapError> {
    let mut coords = Vec::with_capacity(2);
    for pair in [f.coord_x(), f.coord_y()] {
        let (a, b) = pair.bidegree();
        let subst = Substitution::new(g, a, b);
        let num = subst.apply(pair.num(), a, b);
        let den = subst.apply(pair.den(), a, b);
        if num.is_zero() && den.is_zero() {
            return Err(MapError::DegenerateComposition);
        }
        if den.is_zero() {
            // the composed coordinate is identically infinite; treat as
            // degenerate for the same reason
            return Err(MapError::DegenerateComposition);
        }
        coords.push(BiHomPair::new(num, den)?);
    }
    let coord_y = coords.pop().unwrap();
    let coord_x = coords.pop().unwrap();
    Ok(SurfaceMap::new(coord_x, coord_y))
}

#[derive(Debug, Clone)]
pub struct DegreeSequence {
    /// Bidegree matrices of `f, f^2, ..., f^N` from explicit composition.
    pub matrices: Vec<BidegreeMatrix>,
    /// `norm(M_N)^(1/N)`, a crude growth-rate estimate.
    pub growth_estimate: f64,
}

/// Matrices of the first `n` iterates by explicit symbolic composition.
pub fn degree_sequence(f: &SurfaceMap, n: u32, cap: Option<u64>) -> Result<DegreeSequence, MapError> {
    let mut matrices = Vec::with_capacity(n as usize);
    let mut current = f.without_inverse();
    matrices.push(BidegreeMatrix::from_map(&current));
    for _ in 1..n {
        current = compose_with_cap(&current, &f.without_inverse(), cap)?;
        matrices.push(BidegreeMatrix::from_map(&current));
    }
    let growth_estimate = match matrices.last() {
        Some(m) if n > 0 => m.norm_f64().powf(1.0 / n as f64),
        _ => 1.0,
    };
    Ok(DegreeSequence { matrices, growth_estimate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::bipoly::Var;

    fn swap_y_over_x() -> SurfaceMap {
        // (y, y/x) with inverse (x/y, x)
        let f = SurfaceMap::from_fractions(
            BiPoly::var(Var::Y),
            BiPoly::one(),
            BiPoly::var(Var::Y),
            BiPoly::var(Var::X),
        )
        .unwrap();
        let inv = SurfaceMap::from_fractions(
            BiPoly::var(Var::X),
            BiPoly::var(Var::Y),
            BiPoly::var(Var::X),
            BiPoly::one(),
        )
        .unwrap();
        f.with_inverse(inv)
    }

    #[test]
    fn swap_squares_to_identity() {
        let s = SurfaceMap::swap();
        assert!(compose(&s, &s).unwrap().is_identity());
    }

    #[test]
    fn unstable_map_drops_degree() {
        let f = swap_y_over_x();
        let m1 = BidegreeMatrix::from_map(&f);
        assert_eq!(m1, BidegreeMatrix::new(0, 1, 1, 1));
        let f2 = compose(&f, &f).unwrap();
        let m2 = BidegreeMatrix::from_map(&f2);
        assert_eq!(m2, BidegreeMatrix::new(1, 1, 1, 0));
        assert_ne!(m2, m1.pow(2));
        // f^2 = (y/x, 1/x)
        assert_eq!(f2.to_expression_string(), "((y)/(x), (1)/(x))");
    }

    #[test]
    fn inverse_round_trip_composes_to_identity() {
        let f = swap_y_over_x();
        let id = compose(&f, f.inverse().unwrap()).unwrap();
        assert!(id.is_identity());
        let id = compose(f.inverse().unwrap(), &f).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn degree_cap_enforced() {
        let f = swap_y_over_x();
        let err = compose_with_cap(&f, &f, Some(1)).unwrap_err();
        assert!(matches!(err, MapError::DegreeCapExceeded { cap: 1, .. }));
    }

    #[test]
    fn degree_sequence_identity() {
        let seq = degree_sequence(&SurfaceMap::identity(), 3, None).unwrap();
        assert_eq!(seq.matrices.len(), 3);
        for m in &seq.matrices {
            assert_eq!(m, &BidegreeMatrix::identity());
        }
        assert!((seq.growth_estimate - 1.0).abs() < 1e-12);
    }
}
