//! Map builders: the twist `g`, the rotation pair `R`, and `f = R ∘ g^2`.

use crate::exact::bihom::BiHomPair;
use crate::exact::bipoly::{BiPoly, Var};
use crate::exact::rational::Rational;
use crate::exact::upoly::UPoly;
use crate::maps::compose::compose_with_cap;
use crate::maps::surface_map::SurfaceMap;

use super::fraction::build_fraction;
use super::FamilyError;

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams {
    pub n: u64,
    pub d: u64,
    /// half-angle tangents of the two rotation angles; keeping them
    /// rational keeps the map exact and rules out the angle π
    pub t1: Rational,
    pub t2: Rational,
}

impl FamilyParams {
    pub fn new(n: u64, d: u64, t1: Rational, t2: Rational) -> Self {
        FamilyParams { n, d, t1, t2 }
    }

    /// Rotation angles `2 atan(t)` in radians.
    pub fn angles(&self) -> (f64, f64) {
        let f = |t: &Rational| 2.0 * crate::exact::rational::to_f64(t).atan();
        (f(&self.t1), f(&self.t2))
    }

    /// `max(|π - θ1|, |π - θ2|)` with angles reduced mod 2π; positive
    /// exactly because rational tangents never reach the angle π.
    pub fn epsilon_bound(&self) -> f64 {
        let (a1, a2) = self.angles();
        let dist = |a: f64| {
            let r = (a - std::f64::consts::PI).rem_euclid(2.0 * std::f64::consts::PI);
            r.min(2.0 * std::f64::consts::PI - r)
        };
        dist(a1).max(dist(a2))
    }
}

fn univariate_in(var: Var, p: &UPoly<Rational>) -> BiPoly<Rational> {
    BiPoly::from_univariate(var, p)
}

/// `g(x, y) = (F(x) y, x)` with explicit inverse `(x, y) -> (y, x / F(y))`.
pub fn build_twist(n: u64, d: u64) -> Result<SurfaceMap, FamilyError> {
    let fr = build_fraction(n, d)?;
    let num_x = univariate_in(Var::X, &fr.numerator);
    let den_x = univariate_in(Var::X, &fr.denominator);
    let num_y = univariate_in(Var::Y, &fr.numerator);
    let den_y = univariate_in(Var::Y, &fr.denominator);
    let forward = SurfaceMap::new(
        BiHomPair::new(num_x.mul(&BiPoly::var(Var::Y)), den_x).map_err(crate::maps::MapError::from)?,
        BiHomPair::new(BiPoly::var(Var::X), BiPoly::one()).map_err(crate::maps::MapError::from)?,
    );
    let inverse = SurfaceMap::new(
        BiHomPair::new(BiPoly::var(Var::Y), BiPoly::one()).map_err(crate::maps::MapError::from)?,
        BiHomPair::new(BiPoly::var(Var::X).mul(&den_y), num_y).map_err(crate::maps::MapError::from)?,
    );
    Ok(forward.with_inverse(inverse))
}

/// The rotation automorphism in affine coordinates,
/// `(x, y) -> ((x + t1)/(1 - t1 x), (y + t2)/(1 - t2 y))`,
/// with the explicit inverse given by negated tangents.
pub fn build_rotation(t1: &Rational, t2: &Rational) -> SurfaceMap {
    let coord = |var: Var, t: &Rational| {
        let v = BiPoly::var(var);
        let num = v.add(&BiPoly::constant(t.clone()));
        let den = BiPoly::one().sub(&v.scale(t));
        BiHomPair::new(num, den).expect("denominator 1 - t*var is nonzero")
    };
    let forward = SurfaceMap::new(coord(Var::X, t1), coord(Var::Y, t2));
    let backward = SurfaceMap::new(
        coord(Var::X, &-t1.clone()),
        coord(Var::Y, &-t2.clone()),
    );
    forward.with_inverse(backward)
}

/// `f = R ∘ g^2`, composed symbolically with its inverse `g^-2 ∘ R^-1`.
/// Only sensible at desk-scale `d`; the degree cap guards the blowup.
pub fn build_family_map(params: &FamilyParams, cap: Option<u64>) -> Result<SurfaceMap, FamilyError> {
    let g = build_twist(params.n, params.d)?;
    let g2 = compose_with_cap(&g, &g, cap)?;
    let r = build_rotation(&params.t1, &params.t2);
    Ok(compose_with_cap(&r, &g2, cap)?)
}
