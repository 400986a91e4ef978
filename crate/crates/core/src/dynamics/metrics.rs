//! Uniform distance between two maps on the real torus.

use crate::maps::SurfaceMap;
use crate::par::fold_indexed;

use super::torus::{RealTorusMap, TorusPoint, GUARD_RADIUS};
use super::DynError;

/// Max over a `grid x grid` net of torus points of the distance between
/// the two images (max of the two angular distances).
pub fn sup_distance(f: &SurfaceMap, g: &SurfaceMap, grid: u32) -> Result<f64, DynError> {
    sup_distance_impl(f, g, grid, cfg!(feature = "parallel"))
}

pub(crate) fn sup_distance_impl(
    f: &SurfaceMap,
    g: &SurfaceMap,
    grid: u32,
    parallel: bool,
) -> Result<f64, DynError> {
    if grid < 2 {
        return Err(DynError::BadArgument(format!("grid must be at least 2, got {grid}")));
    }
    let cf = RealTorusMap::new(f);
    let cg = RealTorusMap::new(g);
    let tau = 2.0 * std::f64::consts::PI;
    let result = fold_indexed(
        grid as usize,
        parallel,
        Ok(0.0f64),
        |row| {
            let phi1 = tau * (row as f64 + 0.5) / grid as f64;
            let mut worst = 0.0f64;
            for col in 0..grid {
                let p = TorusPoint::new(phi1, tau * (col as f64 + 0.5) / grid as f64);
                let (pf, mf) = cf.step_with_margin(&p);
                let (pg, mg) = cg.step_with_margin(&p);
                if mf < GUARD_RADIUS || mg < GUARD_RADIUS {
                    return Err(DynError::SingularityApproach { step: 0 });
                }
                worst = worst.max(pf.dist(&pg));
            }
            Ok(worst)
        },
        |a, b| match (a, b) {
            (Err(e), _) | (_, Err(e)) => Err(e),
            (Ok(x), Ok(y)) => Ok(x.max(y)),
        },
    );
    result
}
