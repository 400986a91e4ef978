//! Indeterminacy loci and disjointness certificates.
//!
//! A coordinate pair is undefined where its two bihomogeneous forms
//! vanish simultaneously. The locus is computed per affine chart of
//! P1 x P1 (four charts, `u = 1/x`, `v = 1/y`), by resultant elimination
//! plus certified numeric root isolation; chart overlaps are deduplicated
//! in the chordal metric.
//!
//! Disjointness of two loci is decided exactly. Any common solution of
//! systems `A` and `B` in a chart projects to a common root of their
//! x-eliminants, so a coprime eliminant pair certifies disjointness
//! outright; otherwise the y-gcds of both systems are computed modulo
//! the square-free common eliminant factor (splitting the modulus at
//! zero divisors), which decides exactly whether a shared fiber point
//! exists. Overlaps are reported as certified numeric points, upgraded
//! to exact ones when the coordinates are recognizably Gaussian
//! rational.

use num_complex::Complex64;
use serde::Serialize;

use crate::exact::bipoly::{BiPoly, Var};
use crate::exact::gauss::{gauss, GaussRational};
use crate::exact::rational::{rat, Rational};
use crate::exact::modular::systems_share_point_above;
use crate::exact::resultant::resultant_upoly;
use crate::exact::scalar::PolyScalar;
use crate::exact::upoly::UPoly;
use crate::numeric::complex_roots;

use super::surface_map::SurfaceMap;
use super::MapError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// (x, y)
    XY,
    /// (1/x, y)
    UY,
    /// (x, 1/y)
    XV,
    /// (1/x, 1/y)
    UV,
}

impl Chart {
    pub const ALL: [Chart; 4] = [Chart::XY, Chart::UY, Chart::XV, Chart::UV];

    pub fn name(&self) -> &'static str {
        match self {
            Chart::XY => "xy",
            Chart::UY => "uy",
            Chart::XV => "xv",
            Chart::UV => "uv",
        }
    }

    fn inverts_x(&self) -> bool {
        matches!(self, Chart::UY | Chart::UV)
    }

    fn inverts_y(&self) -> bool {
        matches!(self, Chart::XV | Chart::UV)
    }
}

/// One coordinate of a point of P1, possibly at infinity.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum PointCoord {
    Finite { re: f64, im: f64 },
    Infinity,
}

impl PointCoord {
    pub fn finite(z: Complex64) -> Self {
        PointCoord::Finite { re: z.re, im: z.im }
    }

    pub fn as_complex(&self) -> Option<Complex64> {
        match self {
            PointCoord::Finite { re, im } => Some(Complex64::new(*re, *im)),
            PointCoord::Infinity => None,
        }
    }

    /// Chordal distance on P1, bounded by 1.
    pub fn chordal(&self, other: &Self) -> f64 {
        match (self.as_complex(), other.as_complex()) {
            (Some(a), Some(b)) => {
                (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
            }
            (Some(a), None) | (None, Some(a)) => 1.0 / (1.0 + a.norm_sqr()).sqrt(),
            (None, None) => 0.0,
        }
    }

    /// Distance from the real circle inside P1: |Im z| for finite points,
    /// 0 at infinity (which is a real point).
    pub fn dist_from_real(&self) -> f64 {
        match self {
            PointCoord::Finite { im, .. } => im.abs(),
            PointCoord::Infinity => 0.0,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            PointCoord::Finite { re, im } => PointCoord::Finite { re: *re, im: -*im },
            PointCoord::Infinity => PointCoord::Infinity,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IndPoint {
    pub x: PointCoord,
    pub y: PointCoord,
    /// A posteriori radius: a true solution of the defining system lies
    /// within this distance in chart coordinates.
    pub radius: f64,
    /// Set when the point was confirmed by exact Gaussian-rational
    /// evaluation of the defining system.
    pub exact: bool,
}

impl IndPoint {
    pub fn chordal(&self, other: &Self) -> f64 {
        self.x.chordal(&other.x).max(self.y.chordal(&other.y))
    }

    pub fn dist_from_real(&self) -> f64 {
        self.x.dist_from_real().max(self.y.dist_from_real())
    }
}

/// A defining system `{p = 0, q = 0}` in one chart.
#[derive(Debug, Clone)]
pub struct ChartSystem {
    pub chart: Chart,
    /// 0 for the x-coordinate pair, 1 for the y-coordinate pair.
    pub coord: usize,
    pub p: BiPoly<Rational>,
    pub q: BiPoly<Rational>,
}

impl ChartSystem {
    /// Mixed-bidegree solution bound for the system on P1 x P1.
    pub fn bezout_bound(&self) -> u64 {
        (self.p.deg_x() as u64) * (self.q.deg_y() as u64)
            + (self.q.deg_x() as u64) * (self.p.deg_y() as u64)
    }
}

#[derive(Debug, Clone)]
pub struct IndSet {
    pub systems: Vec<ChartSystem>,
    pub points: Vec<IndPoint>,
}

impl IndSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest distance of any locus point from the real locus; `None`
    /// when the locus is empty.
    pub fn min_dist_from_real(&self) -> Option<f64> {
        self.points.iter().map(|p| p.dist_from_real()).min_by(f64::total_cmp)
    }

    /// Whether the point set is closed under complex conjugation, within
    /// tolerance.
    pub fn conjugation_symmetric(&self, tol: f64) -> bool {
        self.points.iter().all(|p| {
            let conj = IndPoint { x: p.x.conj(), y: p.y.conj(), radius: p.radius, exact: false };
            self.points.iter().any(|q| q.chordal(&conj) < tol)
        })
    }
}

/// Expresses `p` (part of a pair with bidegree `(a, b)`) in a chart.
/// In inverted charts each monomial exponent `i` becomes `a - i`, which
/// is the dehomogenization of the associated bihomogeneous form there.
fn chart_poly(p: &BiPoly<Rational>, a: u32, b: u32, chart: Chart) -> BiPoly<Rational> {
    BiPoly::from_terms(p.terms().map(|(i, j, c)| {
        let ei = if chart.inverts_x() { a - i } else { i };
        let ej = if chart.inverts_y() { b - j } else { j };
        (ei, ej, c.clone())
    }))
}

#[derive(Debug, Clone, Copy)]
struct ChartPoint {
    s: Complex64,
    t: Complex64,
    radius: f64,
}

/// All common zeros of a coprime system in one chart, polished by a 2-d
/// Newton iteration and carrying a first-order error radius.
fn solve_system(p: &BiPoly<Rational>, q: &BiPoly<Rational>, chart: Chart) -> Result<Vec<ChartPoint>, MapError> {
    if p.is_zero() || q.is_zero() {
        return Err(MapError::PositiveDimensionalLocus(chart.name()));
    }
    if p.is_constant() || q.is_constant() {
        return Ok(vec![]);
    }
    let ex = resultant_upoly(p, q, Var::Y)?;
    if ex.is_zero() {
        return Err(MapError::PositiveDimensionalLocus(chart.name()));
    }
    let xroots = roots_of(&ex);
    if xroots.is_empty() {
        return Ok(vec![]);
    }
    let px = BiPolyDeriv::new(p);
    let qx = BiPolyDeriv::new(q);
    // residuals are judged against the sum of term magnitudes at the
    // point itself, so coefficient size never loosens the filter
    let rel_residual = |s: Complex64, t: Complex64| {
        let (vp, mp) = px.f.eval_c64_with_scale(s, t);
        let (vq, mq) = qx.f.eval_c64_with_scale(s, t);
        (vp.norm() / (mp + 1e-300)).max(vq.norm() / (mq + 1e-300))
    };
    let mut found: Vec<ChartPoint> = Vec::new();
    for (xr, xrad) in &xroots {
        if xr.norm() > 4.5 {
            continue;
        }
        // candidate fiber values: roots of the better-conditioned
        // specialization of the system above this x
        for (yr, yrad) in &fiber_roots(p, q, *xr) {
            let (mut s, mut t) = (*xr, *yr);
            if rel_residual(s, t) > 1e-3 {
                continue;
            }
            // Newton polish on (p, q)
            let mut rad = f64::INFINITY;
            for _ in 0..16 {
                let fp = px.f.eval_c64(s, t);
                let fq = qx.f.eval_c64(s, t);
                let j11 = px.dx.eval_c64(s, t);
                let j12 = px.dy.eval_c64(s, t);
                let j21 = qx.dx.eval_c64(s, t);
                let j22 = qx.dy.eval_c64(s, t);
                let det = j11 * j22 - j12 * j21;
                let jmag = [j11, j12, j21, j22].iter().map(|z| z.norm()).sum::<f64>();
                if det.norm() < 1e-14 * jmag * jmag {
                    break;
                }
                let ds = (fp * j22 - fq * j12) / det;
                let dt = (fq * j11 - fp * j21) / det;
                s -= ds;
                t -= dt;
                rad = ds.norm().hypot(dt.norm());
                if rad < 1e-14 {
                    break;
                }
            }
            // the polish can push an exact chart zero off by rounding
            // noise, which would later invert to a bogus huge coordinate;
            // snap back when zero itself still solves the system
            let zero = Complex64::new(0.0, 0.0);
            if s.norm() < 1e-10 && rel_residual(zero, t) < 1e-9 {
                s = zero;
            }
            if t.norm() < 1e-10 && rel_residual(s, zero) < 1e-9 {
                t = zero;
            }
            // a solution with a large chart coordinate is the shadow of a
            // point that some other chart sees with both moduli at most 1,
            // where it is well conditioned; keep only the good view
            if s.norm() > 4.0 || t.norm() > 4.0 {
                continue;
            }
            if rel_residual(s, t) < 1e-9 {
                let newton_term = if rad.is_finite() { 4.0 * rad } else { 0.0 };
                let radius = newton_term.max(*xrad).max(*yrad).max(1e-13);
                found.push(ChartPoint { s, t, radius });
            }
        }
    }
    // dedup candidates that polished to the same solution, keeping the
    // sharpest representative
    let mut dedup: Vec<ChartPoint> = Vec::new();
    for c in found {
        match dedup.iter_mut().find(|d| {
            let tol = 1e-7f64.max(d.radius).max(c.radius);
            (d.s - c.s).norm() < tol && (d.t - c.t).norm() < tol
        }) {
            Some(existing) => {
                if c.radius < existing.radius {
                    *existing = c;
                }
            }
            None => dedup.push(c),
        }
    }
    Ok(dedup)
}

fn roots_of(e: &UPoly<Rational>) -> Vec<(Complex64, f64)> {
    if e.degree().map_or(true, |d| d == 0) {
        return vec![];
    }
    // multiplicities ruin both the iteration and the radius bound; the
    // square-free part has the same roots, all simple
    let e = e.squarefree_part();
    let coeffs = e.canonical().dense_c64();
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0_f64, f64::max);
    let normalized: Vec<Complex64> = coeffs.iter().map(|c| c / max).collect();
    complex_roots(&normalized).into_iter().map(|r| (r.value, r.radius)).collect()
}

/// Roots in `y` of the system specialized at `x = xr`, taken from
/// whichever polynomial keeps the larger coefficient mass there.
fn fiber_roots(p: &BiPoly<Rational>, q: &BiPoly<Rational>, xr: Complex64) -> Vec<(Complex64, f64)> {
    let specialize = |poly: &BiPoly<Rational>| -> (Vec<Complex64>, f64) {
        let top = poly.deg_y() as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); top + 1];
        let mut mass = 0.0f64;
        for (i, j, c) in poly.terms() {
            let term = c.to_c64() * xr.powu(i);
            coeffs[j as usize] += term;
            mass += term.norm();
        }
        (coeffs, mass)
    };
    let (pc, pm) = specialize(p);
    let (qc, qm) = specialize(q);
    let (coeffs, mass) = if pm >= qm { (pc, pm) } else { (qc, qm) };
    if mass < 1e-300 {
        return vec![];
    }
    // wipe numerically-dead coefficients so near-degenerate leading terms
    // do not spawn phantom huge roots
    let cleaned: Vec<Complex64> = coeffs
        .iter()
        .map(|c| if c.norm() < 1e-13 * mass { Complex64::new(0.0, 0.0) } else { *c })
        .collect();
    let max = cleaned.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if max == 0.0 {
        return vec![];
    }
    let normalized: Vec<Complex64> = cleaned.iter().map(|c| c / max).collect();
    complex_roots(&normalized).into_iter().map(|r| (r.value, r.radius)).collect()
}

struct BiPolyDeriv {
    f: BiPoly<Rational>,
    dx: BiPoly<Rational>,
    dy: BiPoly<Rational>,
}

impl BiPolyDeriv {
    fn new(p: &BiPoly<Rational>) -> Self {
        let dx = BiPoly::from_terms(p.terms().filter(|(i, _, _)| *i > 0).map(|(i, j, c)| {
            (i - 1, j, c * rat(i as i64, 1))
        }));
        let dy = BiPoly::from_terms(p.terms().filter(|(_, j, _)| *j > 0).map(|(i, j, c)| {
            (i, j - 1, c * rat(j as i64, 1))
        }));
        BiPolyDeriv { f: p.clone(), dx, dy }
    }
}

fn chart_point_to_global(pt: &ChartPoint, chart: Chart) -> IndPoint {
    let lift = |value: Complex64, inverted: bool| -> PointCoord {
        if !inverted {
            PointCoord::finite(value)
        } else if value.norm() == 0.0 {
            PointCoord::Infinity
        } else {
            PointCoord::finite(value.inv())
        }
    };
    IndPoint {
        x: lift(pt.s, chart.inverts_x()),
        y: lift(pt.t, chart.inverts_y()),
        radius: pt.radius,
        exact: false,
    }
}

/// Attempts exact confirmation at a Gaussian-rational approximation of
/// the chart point.
fn confirm_exact(p: &BiPoly<Rational>, q: &BiPoly<Rational>, pt: &ChartPoint) -> bool {
    let (Some(s), Some(t)) = (to_gauss(pt.s), to_gauss(pt.t)) else {
        return false;
    };
    let pe = p.map_coeffs(|c| <GaussRational as PolyScalar>::from_rational(c)).eval(&s, &t);
    let qe = q.map_coeffs(|c| <GaussRational as PolyScalar>::from_rational(c)).eval(&s, &t);
    PolyScalar::is_zero(&pe) && PolyScalar::is_zero(&qe)
}

fn to_gauss(z: Complex64) -> Option<GaussRational> {
    Some(gauss(small_rational(z.re)?, small_rational(z.im)?))
}

fn small_rational(x: f64) -> Option<Rational> {
    for den in 1..=48i64 {
        let num = (x * den as f64).round();
        if num.abs() > 1e6 {
            return None;
        }
        if (x - num / den as f64).abs() < 1e-9 {
            return Some(rat(num as i64, den));
        }
    }
    None
}

/// Indeterminacy locus of a map: union over both coordinate pairs of
/// their common zero sets, across the four charts, deduplicated.
pub fn indeterminacy_set(f: &SurfaceMap) -> Result<IndSet, MapError> {
    let mut systems = Vec::new();
    let mut points: Vec<IndPoint> = Vec::new();
    for (coord, pair) in [f.coord_x(), f.coord_y()].into_iter().enumerate() {
        let (a, b) = pair.bidegree();
        for chart in Chart::ALL {
            let p = chart_poly(pair.num(), a, b, chart);
            let q = chart_poly(pair.den(), a, b, chart);
            let system = ChartSystem { chart, coord, p, q };
            let sols = solve_system(&system.p, &system.q, chart)?;
            if sols.len() as u64 > system.bezout_bound() {
                return Err(MapError::PositiveDimensionalLocus(chart.name()));
            }
            for sol in &sols {
                let mut global = chart_point_to_global(sol, chart);
                global.exact = confirm_exact(&system.p, &system.q, sol);
                let merged = points.iter_mut().find(|e| {
                    let tol = 1e-7_f64.max(global.radius).max(e.radius);
                    e.chordal(&global) < tol
                });
                match merged {
                    Some(existing) => {
                        let exact = existing.exact | global.exact;
                        let radius = existing.radius.min(global.radius);
                        if global.radius < existing.radius && !existing.exact {
                            *existing = global;
                        }
                        existing.exact = exact;
                        existing.radius = radius;
                    }
                    None => points.push(global),
                }
            }
            systems.push(system);
        }
    }
    Ok(IndSet { systems, points })
}

#[derive(Debug, Clone, Serialize)]
pub enum DisjointnessCertificate {
    /// Every pair of defining systems was separated exactly, through
    /// coprime eliminants or the modular fiber computation.
    Disjoint {
        pairs_checked: usize,
    },
    Overlap {
        points: Vec<IndPoint>,
    },
}

impl DisjointnessCertificate {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, DisjointnessCertificate::Disjoint { .. })
    }
}

/// Decides exactly whether two chart systems have a common solution.
fn systems_intersect(a: &ChartSystem, b: &ChartSystem) -> Result<bool, MapError> {
    let ea = resultant_upoly(&a.p, &a.q, Var::Y)?.canonical();
    let eb = resultant_upoly(&b.p, &b.q, Var::Y)?.canonical();
    if ea.is_zero() || eb.is_zero() {
        return Err(MapError::PositiveDimensionalLocus(a.chart.name()));
    }
    // any common point projects to a common eliminant root
    let g = ea.gcd(&eb);
    if g.degree() == Some(0) {
        return Ok(false);
    }
    let h = g.squarefree_part();
    Ok(systems_share_point_above((&a.p, &a.q), (&b.p, &b.q), &h)?)
}

/// Exact disjointness certificate for `Ind(f)` and `Ind(f^-1)`. Needs an
/// explicit inverse on `f`.
pub fn ind_disjoint(f: &SurfaceMap) -> Result<DisjointnessCertificate, MapError> {
    let inverse = f.inverse().ok_or(MapError::MissingInverse)?;
    let ind_f = indeterminacy_set(f)?;
    let ind_inv = indeterminacy_set(inverse)?;
    let mut pairs_checked = 0usize;
    let mut overlap: Vec<IndPoint> = Vec::new();
    for chart in Chart::ALL {
        let systems_f: Vec<&ChartSystem> =
            ind_f.systems.iter().filter(|s| s.chart == chart).collect();
        let systems_b: Vec<&ChartSystem> =
            ind_inv.systems.iter().filter(|s| s.chart == chart).collect();
        for a in &systems_f {
            for b in &systems_b {
                pairs_checked += 1;
                if !systems_intersect(a, b)? {
                    continue;
                }
                // candidate overlap: match numeric solutions of both systems
                let sa = solve_system(&a.p, &a.q, chart)?;
                let sb = solve_system(&b.p, &b.q, chart)?;
                for pa in &sa {
                    for pb in &sb {
                        let tol = (pa.radius + pb.radius).max(1e-8);
                        if (pa.s - pb.s).norm() < tol && (pa.t - pb.t).norm() < tol {
                            let mut pt = chart_point_to_global(pa, chart);
                            pt.exact = confirm_exact(&a.p, &a.q, pa) && confirm_exact(&b.p, &b.q, pa);
                            if !overlap.iter().any(|e| e.chordal(&pt) < 1e-7) {
                                overlap.push(pt);
                            }
                        }
                    }
                }
            }
        }
    }
    if overlap.is_empty() {
        Ok(DisjointnessCertificate::Disjoint { pairs_checked })
    } else {
        Ok(DisjointnessCertificate::Overlap { points: overlap })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::bipoly::Var;

    fn y_over_x_map() -> SurfaceMap {
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
    fn identity_has_empty_locus() {
        let ind = indeterminacy_set(&SurfaceMap::identity()).unwrap();
        assert!(ind.is_empty());
    }

    #[test]
    fn y_over_x_locus() {
        // Ind((y, y/x)) = {(0,0), (inf, inf)}
        let ind = indeterminacy_set(&y_over_x_map()).unwrap();
        assert_eq!(ind.points.len(), 2);
        let has_origin = ind.points.iter().any(|p| {
            matches!(p.x, PointCoord::Finite { re, im } if re.abs() < 1e-12 && im.abs() < 1e-12)
                && matches!(p.y, PointCoord::Finite { re, im } if re.abs() < 1e-12 && im.abs() < 1e-12)
        });
        let has_inf_inf = ind.points.iter().any(|p| {
            matches!(p.x, PointCoord::Infinity) && matches!(p.y, PointCoord::Infinity)
        });
        assert!(has_origin && has_inf_inf, "{:?}", ind.points);
        // both are rational points, so exact confirmation must fire
        assert!(ind.points.iter().all(|p| p.exact));
    }

    #[test]
    fn overlap_detected_for_unstable_map() {
        let cert = ind_disjoint(&y_over_x_map()).unwrap();
        match cert {
            DisjointnessCertificate::Overlap { points } => {
                assert_eq!(points.len(), 2);
                assert!(points.iter().all(|p| p.exact));
            }
            _ => panic!("expected overlap"),
        }
    }

    #[test]
    fn swap_is_disjoint() {
        let cert = ind_disjoint(&SurfaceMap::swap()).unwrap();
        assert!(cert.is_disjoint());
    }

    #[test]
    fn missing_inverse_is_an_error() {
        let f = y_over_x_map().without_inverse();
        assert!(matches!(ind_disjoint(&f), Err(MapError::MissingInverse)));
    }

    #[test]
    fn coincident_projections_still_separate() {
        // A = {y = 0, x^2 + 1 = 0} and B = {y - 1 = 0, x^2 + 1 = 0} share
        // both eliminant factors in x but no common point
        let mk = |c: i64| ChartSystem {
            chart: Chart::XY,
            coord: 0,
            p: BiPoly::from_terms([(0u32, 1u32, rat(1, 1)), (0, 0, rat(-c, 1))]),
            q: BiPoly::from_terms([(2u32, 0u32, rat(1, 1)), (0, 0, rat(1, 1))]),
        };
        assert!(!systems_intersect(&mk(0), &mk(1)).unwrap());
        assert!(systems_intersect(&mk(1), &mk(1)).unwrap());
    }
}
