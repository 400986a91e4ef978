//! A birational self-map as a pair of coprime bihomogeneous coordinates,
//! with an optional explicit inverse. Coefficients are rational, so every
//! map here preserves the real structure; equality of maps is syntactic
//! equality of the canonical coordinate pairs.

use crate::exact::bihom::BiHomPair;
use crate::exact::bipoly::{BiPoly, Var};
use crate::exact::rational::Rational;
use crate::exact::scalar::PolyScalar;
use crate::exact::AlgebraError;

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMap {
    coord_x: BiHomPair,
    coord_y: BiHomPair,
    inverse: Option<Box<SurfaceMap>>,
}

impl SurfaceMap {
    pub fn new(coord_x: BiHomPair, coord_y: BiHomPair) -> Self {
        SurfaceMap { coord_x, coord_y, inverse: None }
    }

    pub fn with_inverse(mut self, inverse: SurfaceMap) -> Self {
        self.inverse = Some(Box::new(inverse));
        self
    }

    /// Builds from affine fractions `(nx/dx, ny/dy)`.
    pub fn from_fractions(
        nx: BiPoly<Rational>,
        dx: BiPoly<Rational>,
        ny: BiPoly<Rational>,
        dy: BiPoly<Rational>,
    ) -> Result<Self, AlgebraError> {
        Ok(SurfaceMap::new(BiHomPair::new(nx, dx)?, BiHomPair::new(ny, dy)?))
    }

    pub fn identity() -> Self {
        let id = SurfaceMap::new(
            BiHomPair::new(BiPoly::var(Var::X), BiPoly::one()).unwrap(),
            BiHomPair::new(BiPoly::var(Var::Y), BiPoly::one()).unwrap(),
        );
        let mut with_inv = id.clone();
        with_inv.inverse = Some(Box::new(id));
        with_inv
    }

    /// The involution `(x, y) -> (y, x)`.
    pub fn swap() -> Self {
        let s = SurfaceMap::new(
            BiHomPair::new(BiPoly::var(Var::Y), BiPoly::one()).unwrap(),
            BiHomPair::new(BiPoly::var(Var::X), BiPoly::one()).unwrap(),
        );
        let mut with_inv = s.clone();
        with_inv.inverse = Some(Box::new(s));
        with_inv
    }

    pub fn coord_x(&self) -> &BiHomPair {
        &self.coord_x
    }

    pub fn coord_y(&self) -> &BiHomPair {
        &self.coord_y
    }

    pub fn inverse(&self) -> Option<&SurfaceMap> {
        self.inverse.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        self.coord_x.is_identity_x() && self.coord_y.is_identity_y()
    }

    /// Forgets the stored inverse (used when composing would invalidate it).
    pub fn without_inverse(&self) -> Self {
        SurfaceMap { coord_x: self.coord_x.clone(), coord_y: self.coord_y.clone(), inverse: None }
    }

    /// Exact image of an affine point over any scalar field containing the
    /// rationals; `None` when a coordinate denominator vanishes.
    pub fn eval_exact<K: PolyScalar>(&self, x: &K, y: &K) -> Option<(K, K)> {
        Some((self.coord_x.eval_exact(x, y)?, self.coord_y.eval_exact(x, y)?))
    }

    /// Canonical expression string, `(P/Q, R/S)` with graded-lex descending
    /// polynomial printing. Parsing this string back yields the same map.
    pub fn to_expression_string(&self) -> String {
        let frac = |pair: &BiHomPair| {
            if pair.den() == &BiPoly::one() {
                format!("{}", pair.num())
            } else {
                format!("({})/({})", pair.num(), pair.den())
            }
        };
        format!("({}, {})", frac(&self.coord_x), frac(&self.coord_y))
    }
}
