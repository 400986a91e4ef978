//! Bidegree matrices and ample-class degrees.
//!
//! Row `i` of the matrix holds the (x-degree, y-degree) of coordinate `i`
//! of a map with cleared coordinate pairs; this is the action on the
//! second cohomology in the basis of the two ruling classes `(H, V)`.
//! Under the intersection form `H.H = V.V = 0`, `H.V = 1`, the degree of
//! a map against an ample class `L` is `(M L) . L`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::quad::QuadExt;
use crate::exact::rational::Rational;
use crate::exact::AlgebraError;

use super::surface_map::SurfaceMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidegreeMatrix {
    entries: [[BigUint; 2]; 2],
}

impl BidegreeMatrix {
    pub fn new(m11: u64, m12: u64, m21: u64, m22: u64) -> Self {
        BidegreeMatrix {
            entries: [
                [BigUint::from(m11), BigUint::from(m12)],
                [BigUint::from(m21), BigUint::from(m22)],
            ],
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn from_map(f: &SurfaceMap) -> Self {
        let (a, b) = f.coord_x().bidegree();
        let (c, d) = f.coord_y().bidegree();
        Self::new(a as u64, b as u64, c as u64, d as u64)
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i][j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BidegreeMatrix {
            entries: [
                [BigUint::zero(), BigUint::zero()],
                [BigUint::zero(), BigUint::zero()],
            ],
        };
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] = &self.entries[i][0] * &other.entries[0][j]
                    + &self.entries[i][1] * &other.entries[1][j];
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Max-entry norm as a float, for growth-rate estimates.
    pub fn norm_f64(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|e| e.to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    pub fn to_u64_entries(&self) -> Option<[[u64; 2]; 2]> {
        let g = |i: usize, j: usize| self.entries[i][j].to_u64();
        Some([[g(0, 0)?, g(0, 1)?], [g(1, 0)?, g(1, 1)?]])
    }
}

impl std::fmt::Display for BidegreeMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.entries[0][0], self.entries[0][1], self.entries[1][0], self.entries[1][1]
        )
    }
}

/// A positive combination of the ruling classes.
#[derive(Debug, Clone, PartialEq)]
pub struct AmpleClass {
    coeff_h: QuadExt,
    coeff_v: QuadExt,
}

impl AmpleClass {
    pub fn new(coeff_h: QuadExt, coeff_v: QuadExt) -> Result<Self, AlgebraError> {
        assert!(coeff_h.is_positive() && coeff_v.is_positive(), "ample class needs positive coordinates");
        // force a common field now so later arithmetic cannot mix
        coeff_h.add(&coeff_v)?;
        Ok(AmpleClass { coeff_h, coeff_v })
    }

    /// `H + V`.
    pub fn symmetric() -> Self {
        AmpleClass { coeff_h: QuadExt::from_int(1), coeff_v: QuadExt::from_int(1) }
    }

    /// The leading eigenclass `lambda H + V` of the family matrix for a
    /// given `d`, with `lambda = d + sqrt(d^2 + 1)`.
    pub fn eigenclass(d: u64) -> Self {
        AmpleClass { coeff_h: lambda_eigenvalue(d), coeff_v: QuadExt::from_int(1) }
    }

    pub fn coeff_h(&self) -> &QuadExt {
        &self.coeff_h
    }

    pub fn coeff_v(&self) -> &QuadExt {
        &self.coeff_v
    }

    /// Self-intersection `L.L = 2 h v`.
    pub fn self_intersection(&self) -> QuadExt {
        let hv = self.coeff_h.mul(&self.coeff_v).expect("same field");
        hv.add(&hv).expect("same field")
    }
}

/// `lambda = d + sqrt(d^2 + 1)`, the leading eigenvalue of the family
/// matrix `[[2d, 1], [1, 0]]`.
pub fn lambda_eigenvalue(d: u64) -> QuadExt {
    let radicand = d * d + 1;
    QuadExt::new(radicand, Rational::from_integer(d.into()), Rational::one())
        .expect("d^2 + 1 is never a perfect square for d >= 1")
}

/// Degree of a map (given by its bidegree matrix) against an ample class:
/// `(M L) . L` under the hyperbolic intersection form.
pub fn deg_ample(matrix: &BidegreeMatrix, class: &AmpleClass) -> QuadExt {
    let to_quad = |b: &BigUint| {
        QuadExt::from_rational(Rational::from_integer(num_bigint::BigInt::from(b.clone())))
    };
    let h = class.coeff_h();
    let v = class.coeff_v();
    let img_h = to_quad(matrix.entry(0, 0))
        .mul(h)
        .and_then(|a| a.add(&to_quad(matrix.entry(0, 1)).mul(v)?))
        .expect("same field");
    let img_v = to_quad(matrix.entry(1, 0))
        .mul(h)
        .and_then(|a| a.add(&to_quad(matrix.entry(1, 1)).mul(v)?))
        .expect("same field");
    // (img_h H + img_v V).(h H + v V) = img_h v + img_v h
    img_h.mul(v).and_then(|a| a.add(&img_v.mul(h)?)).expect("same field")
}
