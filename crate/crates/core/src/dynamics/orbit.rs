//! Torus orbits with continuous lifts and rotation vectors.

use serde::Serialize;

use crate::maps::SurfaceMap;

use super::torus::{wrap_to_pm_pi, RealTorusMap, TorusPoint, GUARD_RADIUS};
use super::DynError;

#[derive(Debug, Clone, Serialize)]
pub struct OrbitRecord {
    pub seed: TorusPoint,
    /// continuous lifts in R^2, length `steps + 1`
    pub lifts: Vec<[f64; 2]>,
    pub steps: usize,
    /// smallest evaluation margin seen along the orbit
    pub min_margin: f64,
}

impl OrbitRecord {
    pub fn point_at(&self, k: usize) -> TorusPoint {
        TorusPoint::new(self.lifts[k][0], self.lifts[k][1])
    }
}

/// Iterates `steps` forward steps from `seed`, accumulating a continuous
/// lift (consecutive increments lie in (-π, π]). Aborts with the step
/// index if an evaluation comes within the guard radius of a coordinate
/// singularity.
pub fn orbit(map: &SurfaceMap, seed: TorusPoint, steps: usize) -> Result<OrbitRecord, DynError> {
    let compiled = RealTorusMap::new(map);
    orbit_compiled(&compiled, seed, steps)
}

pub(crate) fn orbit_compiled(
    compiled: &RealTorusMap,
    seed: TorusPoint,
    steps: usize,
) -> Result<OrbitRecord, DynError> {
    let mut lifts = Vec::with_capacity(steps + 1);
    lifts.push([seed.phi1, seed.phi2]);
    let mut current = seed;
    let mut min_margin = f64::INFINITY;
    for k in 0..steps {
        let (next, margin) = compiled.step_with_margin(&current);
        if margin < GUARD_RADIUS {
            return Err(DynError::SingularityApproach { step: k });
        }
        min_margin = min_margin.min(margin);
        let last = lifts[k];
        lifts.push([
            last[0] + wrap_to_pm_pi(next.phi1 - current.phi1),
            last[1] + wrap_to_pm_pi(next.phi2 - current.phi2),
        ]);
        current = next;
    }
    Ok(OrbitRecord { seed, lifts, steps, min_margin })
}

/// Birkhoff average of the lift increments, with an error estimate given
/// by the spread between the half-orbit and full-orbit averages.
pub fn rotation_vector(record: &OrbitRecord) -> ((f64, f64), (f64, f64)) {
    let n = record.steps;
    assert!(n >= 2, "rotation vector needs at least 2 steps");
    let avg = |upto: usize| {
        let first = record.lifts[0];
        let last = record.lifts[upto];
        ((last[0] - first[0]) / upto as f64, (last[1] - first[1]) / upto as f64)
    };
    let full = avg(n);
    let half = avg(n / 2);
    let err = ((full.0 - half.0).abs(), (full.1 - half.1).abs());
    (full, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::bipoly::{BiPoly, Var};
    use crate::exact::rational::rat;
    use crate::family::builders::build_rotation;

    #[test]
    fn rotation_orbit_has_exact_rotation_vector() {
        let r = build_rotation(&rat(1, 1), &rat(0, 1));
        let rec = orbit(&r, TorusPoint::new(0.3, 1.1), 400).unwrap();
        let ((r1, r2), (e1, e2)) = rotation_vector(&rec);
        assert!((r1 - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!(r2.abs() < 1e-12);
        assert!(e1 < 1e-12 && e2 < 1e-12);
        // second angle never moves
        assert!(rec.lifts.iter().all(|l| (l[1] - 1.1).abs() < 1e-9));
    }

    #[test]
    fn identity_orbit_is_constant() {
        let rec = orbit(&SurfaceMap::identity(), TorusPoint::new(2.0, 3.0), 50).unwrap();
        let ((r1, r2), _) = rotation_vector(&rec);
        assert_eq!(rec.lifts.len(), 51);
        assert!(r1.abs() < 1e-15 && r2.abs() < 1e-15);
    }

    #[test]
    fn singular_seed_aborts_cleanly() {
        // (y, y/x) sends the line x = 0 through an indeterminacy point at
        // the origin; starting exactly there must trip the guard
        let f = SurfaceMap::from_fractions(
            BiPoly::var(Var::Y),
            BiPoly::one(),
            BiPoly::var(Var::Y),
            BiPoly::var(Var::X),
        )
        .unwrap();
        // affine (0, 0) is angle (π, π)
        let seed = TorusPoint::new(std::f64::consts::PI, std::f64::consts::PI);
        match orbit(&f, seed, 10) {
            Err(DynError::SingularityApproach { step: 0 }) => {}
            other => panic!("expected immediate singularity, got {other:?}"),
        }
    }

    #[test]
    fn lift_increments_stay_in_principal_branch() {
        let r = build_rotation(&rat(7, 1), &rat(-3, 1));
        let rec = orbit(&r, TorusPoint::new(0.0, 0.0), 200).unwrap();
        for k in 1..rec.lifts.len() {
            let d1 = rec.lifts[k][0] - rec.lifts[k - 1][0];
            let d2 = rec.lifts[k][1] - rec.lifts[k - 1][1];
            assert!(d1.abs() <= std::f64::consts::PI + 1e-12);
            assert!(d2.abs() <= std::f64::consts::PI + 1e-12);
        }
    }
}
