//! Double-precision dynamics on and near the real locus.
//!
//! The real locus of P1 x P1 is a torus; all computation here happens in
//! unit-circle coordinates obtained from the Cayley transform, through
//! real (or complex) projective pairs, so the affine point at infinity is
//! an ordinary interior point and no formula ever divides by a vanishing
//! chart denominator without being caught by the guard.

pub mod census;
pub mod dioph;
pub mod metrics;
pub mod orbit;
pub mod probe;
pub mod torus;

pub use census::{fixed_point_census, CensusReport, FixedPointClass, FixedPointRecord};
pub use dioph::{diophantine_check, DiophantineReport};
pub use metrics::sup_distance;
pub use orbit::{orbit, rotation_vector, OrbitRecord};
pub use probe::{complex_probe, ProbeReport};
pub use torus::{RealTorusMap, TorusPoint};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynError {
    #[error("trajectory came within the guard radius of a coordinate singularity at step {step}")]
    SingularityApproach { step: usize },
    #[error("invalid argument: {0}")]
    BadArgument(String),
}

/// Sequential twins of the data-parallel entry points, used by the
/// benchmark suite to compare scheduling overhead against rayon.
pub mod seq {
    use super::*;
    use crate::maps::SurfaceMap;

    pub fn diophantine_check(alpha: (f64, f64), beta: f64, k_max: i64) -> DiophantineReport {
        dioph::diophantine_check_impl(alpha, beta, k_max, false)
    }

    pub fn sup_distance(f: &SurfaceMap, g: &SurfaceMap, grid: u32) -> Result<f64, DynError> {
        metrics::sup_distance_impl(f, g, grid, false)
    }

    pub fn fixed_point_census(
        f: &SurfaceMap,
        grid: u32,
        tol: f64,
    ) -> Result<CensusReport, DynError> {
        census::fixed_point_census_impl(f, grid, tol, false)
    }
}
