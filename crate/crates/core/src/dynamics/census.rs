//! Fixed-point census on the torus against the Euler-characteristic
//! prediction.
//!
//! Newton refinement on `G(φ) = f(φ) - φ` (componentwise mod 2π) from a
//! uniform grid of seeds, with central-difference Jacobians. Converged
//! points are deduplicated and classified through `det(df - I)`: the
//! torus has Euler characteristic 0, so a map isotopic to the identity
//! with only rotation-like fixed points must show an empty census.

use serde::Serialize;

use crate::maps::SurfaceMap;
use crate::par::map_indexed;

use super::torus::{wrap_to_pm_pi, RealTorusMap, TorusPoint, GUARD_RADIUS};
use super::DynError;

const FD_STEP: f64 = 1e-6;
const RESIDUAL_TOL: f64 = 1e-9;
const DEGENERATE_DET_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FixedPointClass {
    RotationLike,
    Degenerate,
    Hyperbolic,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointRecord {
    pub location: TorusPoint,
    pub residual: f64,
    pub jacobian: [[f64; 2]; 2],
    pub det_df_minus_id: f64,
    pub class: FixedPointClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub grid: u32,
    pub seeds: usize,
    pub fixed_points: Vec<FixedPointRecord>,
    /// records that are not degenerate (the count Lefschetz sees)
    pub isolated_count: usize,
    pub nonconverged_seeds: usize,
    pub singular_jacobian_seeds: usize,
    /// `df` is the identity at virtually every seed: the map has an
    /// identity factor (or is a rigid rotation) in angle coordinates
    pub identity_factor_suspected: bool,
    /// isolated count equals the torus Euler characteristic, 0
    pub euler_characteristic_match: bool,
    /// isolated fixed points with `det(df - I) < 0`
    pub positive_det_violations: usize,
}

enum SeedResult {
    Converged(FixedPointRecord),
    NoConverge,
    SingularJacobian,
    IdentityJacobianNoFix,
}

fn torus_gap(f: &RealTorusMap, p: &TorusPoint) -> Option<(f64, f64, f64)> {
    let (img, margin) = f.step_with_margin(p);
    if margin < GUARD_RADIUS {
        return None;
    }
    Some((wrap_to_pm_pi(img.phi1 - p.phi1), wrap_to_pm_pi(img.phi2 - p.phi2), margin))
}

/// Central-difference Jacobian of the angle map at `p`.
fn jacobian(f: &RealTorusMap, p: &TorusPoint) -> Option<[[f64; 2]; 2]> {
    let mut j = [[0.0f64; 2]; 2];
    for (col, delta) in [(0usize, (FD_STEP, 0.0)), (1usize, (0.0, FD_STEP))] {
        let plus = TorusPoint::new(p.phi1 + delta.0, p.phi2 + delta.1);
        let minus = TorusPoint::new(p.phi1 - delta.0, p.phi2 - delta.1);
        let (ip, mp) = f.step_with_margin(&plus);
        let (im, mm) = f.step_with_margin(&minus);
        if mp < GUARD_RADIUS || mm < GUARD_RADIUS {
            return None;
        }
        j[0][col] = wrap_to_pm_pi(ip.phi1 - im.phi1) / (2.0 * FD_STEP);
        j[1][col] = wrap_to_pm_pi(ip.phi2 - im.phi2) / (2.0 * FD_STEP);
    }
    Some(j)
}

fn classify(j: [[f64; 2]; 2]) -> (f64, FixedPointClass) {
    let a = j[0][0] - 1.0;
    let b = j[0][1];
    let c = j[1][0];
    let d = j[1][1] - 1.0;
    let det = a * d - b * c;
    if det.abs() < DEGENERATE_DET_TOL {
        return (det, FixedPointClass::Degenerate);
    }
    // eigenvalues of df: complex pair means rotation-like behavior
    let tr = j[0][0] + j[1][1];
    let det_df = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let disc = tr * tr - 4.0 * det_df;
    if disc < 0.0 {
        (det, FixedPointClass::RotationLike)
    } else {
        (det, FixedPointClass::Hyperbolic)
    }
}

fn refine_seed(f: &RealTorusMap, seed: TorusPoint) -> SeedResult {
    let mut p = seed;
    for _ in 0..40 {
        let Some((g1, g2, _)) = torus_gap(f, &p) else {
            return SeedResult::NoConverge;
        };
        let res = g1.abs().max(g2.abs());
        let Some(j) = jacobian(f, &p) else {
            return SeedResult::NoConverge;
        };
        if res < RESIDUAL_TOL {
            let (det, class) = classify(j);
            return SeedResult::Converged(FixedPointRecord {
                location: p,
                residual: res,
                jacobian: j,
                det_df_minus_id: det,
                class,
            });
        }
        let a = j[0][0] - 1.0;
        let b = j[0][1];
        let c = j[1][0];
        let d = j[1][1] - 1.0;
        let det = a * d - b * c;
        let identity_jacobian =
            a.abs() < 1e-4 && b.abs() < 1e-4 && c.abs() < 1e-4 && d.abs() < 1e-4;
        if det.abs() < 1e-12 {
            return if identity_jacobian {
                SeedResult::IdentityJacobianNoFix
            } else {
                SeedResult::SingularJacobian
            };
        }
        let d1 = (g1 * d - g2 * b) / det;
        let d2 = (g2 * a - g1 * c) / det;
        // damped full step; fixed points of interest are well separated
        let step1 = d1.clamp(-1.0, 1.0);
        let step2 = d2.clamp(-1.0, 1.0);
        p = TorusPoint::new(p.phi1 - step1, p.phi2 - step2);
    }
    SeedResult::NoConverge
}

pub fn fixed_point_census(f: &SurfaceMap, grid: u32, tol: f64) -> Result<CensusReport, DynError> {
    fixed_point_census_impl(f, grid, tol, cfg!(feature = "parallel"))
}

pub(crate) fn fixed_point_census_impl(
    f: &SurfaceMap,
    grid: u32,
    tol: f64,
    parallel: bool,
) -> Result<CensusReport, DynError> {
    if grid < 4 {
        return Err(DynError::BadArgument(format!("grid must be at least 4, got {grid}")));
    }
    let compiled = RealTorusMap::new(f);
    let n = (grid as usize) * (grid as usize);
    let results = map_indexed(n, parallel, |idx| {
        let i = idx / grid as usize;
        let j = idx % grid as usize;
        let tau = 2.0 * std::f64::consts::PI;
        // offset keeps seeds away from symmetric special points
        let seed = TorusPoint::new(
            tau * (i as f64 + 0.37) / grid as f64,
            tau * (j as f64 + 0.61) / grid as f64,
        );
        refine_seed(&compiled, seed)
    });
    let mut fixed_points: Vec<FixedPointRecord> = Vec::new();
    let mut nonconverged = 0usize;
    let mut singular = 0usize;
    let mut identity_like = 0usize;
    for r in results {
        match r {
            SeedResult::Converged(rec) => {
                if rec.class == FixedPointClass::Degenerate {
                    identity_like += 1;
                }
                if let Some(existing) =
                    fixed_points.iter().find(|e| e.location.dist(&rec.location) < tol)
                {
                    let _ = existing;
                } else {
                    fixed_points.push(rec);
                }
            }
            SeedResult::NoConverge => nonconverged += 1,
            SeedResult::SingularJacobian => singular += 1,
            SeedResult::IdentityJacobianNoFix => {
                identity_like += 1;
            }
        }
    }
    let isolated_count =
        fixed_points.iter().filter(|r| r.class != FixedPointClass::Degenerate).count();
    let positive_det_violations = fixed_points
        .iter()
        .filter(|r| r.class != FixedPointClass::Degenerate && r.det_df_minus_id < 0.0)
        .count();
    Ok(CensusReport {
        grid,
        seeds: n,
        isolated_count,
        nonconverged_seeds: nonconverged,
        singular_jacobian_seeds: singular,
        identity_factor_suspected: identity_like * 10 >= n * 9,
        euler_characteristic_match: isolated_count == 0,
        positive_det_violations,
        fixed_points,
    })
}
