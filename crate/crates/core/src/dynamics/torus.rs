//! Angle coordinates on the real torus and compiled map evaluation.
//!
//! A circle angle φ corresponds to the affine coordinate `-cot(φ/2)`
//! through the Cayley transform; as a real projective pair that is
//! `(sin(φ/2) : -cos(φ/2))`, smooth across the affine infinity at φ = 0.
//! Maps evaluate on normalized projective pairs through their
//! bihomogeneous forms, and a vanishing pair (an indeterminacy pullback)
//! surfaces as a small evaluation margin caught by the guard.

use num_complex::Complex64;
use serde::Serialize;

use crate::maps::SurfaceMap;

use super::DynError;

pub const GUARD_RADIUS: f64 = 1e-8;

const TAU: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorusPoint {
    pub phi1: f64,
    pub phi2: f64,
}

impl TorusPoint {
    pub fn new(phi1: f64, phi2: f64) -> Self {
        TorusPoint { phi1: wrap_to_tau(phi1), phi2: wrap_to_tau(phi2) }
    }

    /// Affine coordinates `(-cot(φ1/2), -cot(φ2/2))`; infinite at φ = 0.
    pub fn to_affine(&self) -> (f64, f64) {
        (angle_to_affine(self.phi1), angle_to_affine(self.phi2))
    }

    pub fn from_affine(x: f64, y: f64) -> Self {
        TorusPoint::new(affine_to_angle(x), affine_to_angle(y))
    }

    /// Max of the two angular distances.
    pub fn dist(&self, other: &TorusPoint) -> f64 {
        angle_dist(self.phi1, other.phi1).max(angle_dist(self.phi2, other.phi2))
    }
}

pub fn wrap_to_tau(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r == TAU {
        0.0
    } else {
        r
    }
}

/// Signed difference wrapped into (-π, π].
pub fn wrap_to_pm_pi(delta: f64) -> f64 {
    let r = delta.rem_euclid(TAU);
    if r > std::f64::consts::PI {
        r - TAU
    } else {
        r
    }
}

pub fn angle_dist(a: f64, b: f64) -> f64 {
    wrap_to_pm_pi(a - b).abs()
}

fn angle_to_affine(phi: f64) -> f64 {
    let (s, c) = (0.5 * phi).sin_cos();
    -c / s
}

fn affine_to_angle(x: f64) -> f64 {
    // angle of (x - i)/(x + i) for real x, via the pair formula
    pair_to_angle(1.0, x)
}

/// Angle of the circle point associated with the real pair `(x0 : x1)`.
fn pair_to_angle(x0: f64, x1: f64) -> f64 {
    wrap_to_tau((-2.0 * x0 * x1).atan2(x1 * x1 - x0 * x0))
}

fn angle_to_pair(phi: f64) -> (f64, f64) {
    let (s, c) = (0.5 * phi).sin_cos();
    (s, -c)
}

struct CompiledForm {
    terms: Vec<(u32, u32, u32, u32, f64)>,
}

struct CompiledPair {
    num: CompiledForm,
    den: CompiledForm,
    a: u32,
    b: u32,
    scale: f64,
}

impl CompiledPair {
    fn new(pair: &crate::exact::bihom::BiHomPair) -> Self {
        let (a, b) = pair.bidegree();
        let compile = |p: &crate::exact::bipoly::BiPoly<crate::exact::rational::Rational>| {
            CompiledForm {
                terms: p
                    .terms()
                    .map(|(i, j, c)| (a - i, i, b - j, j, crate::exact::rational::to_f64(c)))
                    .collect(),
            }
        };
        let num = compile(pair.num());
        let den = compile(pair.den());
        let scale = num
            .terms
            .iter()
            .chain(den.terms.iter())
            .map(|t| t.4.abs())
            .sum::<f64>()
            .max(1.0);
        CompiledPair { num, den, a, b, scale }
    }
}

macro_rules! eval_pair_impl {
    ($name:ident, $scalar:ty, $one:expr, $abs:expr) => {
        fn $name(pair: &CompiledPair, x0: $scalar, x1: $scalar, y0: $scalar, y1: $scalar) -> ($scalar, $scalar, f64) {
            let top_x = pair.a as usize;
            let top_y = pair.b as usize;
            let pows = |base: $scalar, top: usize| {
                let mut v = Vec::with_capacity(top + 1);
                let mut acc: $scalar = $one;
                for _ in 0..=top {
                    v.push(acc);
                    acc = acc * base;
                }
                v
            };
            let px0 = pows(x0, top_x);
            let px1 = pows(x1, top_x);
            let py0 = pows(y0, top_y);
            let py1 = pows(y1, top_y);
            let eval = |form: &CompiledForm| {
                let mut acc: $scalar = $one * 0.0;
                for &(e0, e1, f0, f1, c) in &form.terms {
                    acc = acc
                        + px0[e0 as usize] * px1[e1 as usize] * py0[f0 as usize] * py1[f1 as usize] * c;
                }
                acc
            };
            let n = eval(&pair.num);
            let d = eval(&pair.den);
            let margin = $abs(n).max($abs(d)) / pair.scale;
            (n, d, margin)
        }
    };
}

eval_pair_impl!(eval_pair_real, f64, 1.0f64, f64::abs);
eval_pair_impl!(eval_pair_complex, Complex64, Complex64::new(1.0, 0.0), Complex64::norm);

/// A surface map compiled for fast repeated evaluation in angle
/// coordinates on the real torus.
pub struct RealTorusMap {
    cx: CompiledPair,
    cy: CompiledPair,
}

impl RealTorusMap {
    pub fn new(map: &SurfaceMap) -> Self {
        RealTorusMap { cx: CompiledPair::new(map.coord_x()), cy: CompiledPair::new(map.coord_y()) }
    }

    /// One step in angle coordinates; the returned margin is the smaller
    /// of the two normalized pair magnitudes (small means the point is
    /// near an indeterminacy pullback or a contracted curve).
    pub fn step_with_margin(&self, p: &TorusPoint) -> (TorusPoint, f64) {
        let (x0, x1) = angle_to_pair(p.phi1);
        let (y0, y1) = angle_to_pair(p.phi2);
        let (nx, dx, mx) = eval_pair_real(&self.cx, x0, x1, y0, y1);
        let (ny, dy, my) = eval_pair_real(&self.cy, x0, x1, y0, y1);
        // image pair is (den : num)
        let phi1 = pair_to_angle(dx, nx);
        let phi2 = pair_to_angle(dy, ny);
        (TorusPoint::new(phi1, phi2), mx.min(my))
    }

    pub fn step(&self, p: &TorusPoint, step_index: usize) -> Result<TorusPoint, DynError> {
        let (next, margin) = self.step_with_margin(p);
        if margin < GUARD_RADIUS {
            return Err(DynError::SingularityApproach { step: step_index });
        }
        Ok(next)
    }
}

/// Complex projective state for one P1 factor, kept normalized.
#[derive(Debug, Clone, Copy)]
pub struct ProjPoint {
    pub z0: Complex64,
    pub z1: Complex64,
}

impl ProjPoint {
    pub fn normalize(z0: Complex64, z1: Complex64) -> Self {
        let m = z0.norm().max(z1.norm());
        if m == 0.0 {
            ProjPoint { z0, z1 }
        } else {
            ProjPoint { z0: z0 / m, z1: z1 / m }
        }
    }

    /// From a circle-chart value `w`: the affine coordinate is
    /// `i (1 + w) / (1 - w)`, projectively `(1 - w : i (1 + w))`.
    pub fn from_circle(w: Complex64) -> Self {
        let i = Complex64::new(0.0, 1.0);
        Self::normalize(Complex64::new(1.0, 0.0) - w, i * (Complex64::new(1.0, 0.0) + w))
    }

    /// Back to the circle chart: `w = (x - i)/(x + i)`; `None` when the
    /// point is the chart pole `x = -i`.
    pub fn to_circle(&self) -> Option<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        let num = self.z1 - i * self.z0;
        let den = self.z1 + i * self.z0;
        if den.norm() == 0.0 {
            None
        } else {
            Some(num / den)
        }
    }

    pub fn chordal(&self, other: &ProjPoint) -> f64 {
        let cross = (self.z0 * other.z1 - self.z1 * other.z0).norm();
        let na = (self.z0.norm_sqr() + self.z1.norm_sqr()).sqrt();
        let nb = (other.z0.norm_sqr() + other.z1.norm_sqr()).sqrt();
        cross / (na * nb)
    }
}

/// Complexified evaluation of a map on pairs of projective points.
pub struct ComplexTorusMap {
    cx: CompiledPair,
    cy: CompiledPair,
}

impl ComplexTorusMap {
    pub fn new(map: &SurfaceMap) -> Self {
        ComplexTorusMap {
            cx: CompiledPair::new(map.coord_x()),
            cy: CompiledPair::new(map.coord_y()),
        }
    }

    /// One step; margin as in the real case.
    pub fn step(&self, x: &ProjPoint, y: &ProjPoint) -> (ProjPoint, ProjPoint, f64) {
        let (nx, dx, mx) = eval_pair_complex(&self.cx, x.z0, x.z1, y.z0, y.z1);
        let (ny, dy, my) = eval_pair_complex(&self.cy, x.z0, x.z1, y.z0, y.z1);
        (
            ProjPoint::normalize(dx, nx),
            ProjPoint::normalize(dy, ny),
            mx.min(my),
        )
    }
}
