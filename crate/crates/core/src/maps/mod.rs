//! Birational self-maps of P1 x P1 as first-class values.

pub mod bidegree;
pub mod compose;
pub mod ind;
pub mod surface_map;
pub mod xie;

pub use bidegree::{deg_ample, AmpleClass, BidegreeMatrix};
pub use compose::{compose, degree_sequence, DegreeSequence};
pub use ind::{
    ind_disjoint, indeterminacy_set, Chart, ChartSystem, DisjointnessCertificate, IndPoint,
    IndSet, PointCoord,
};
pub use surface_map::SurfaceMap;
pub use xie::{xie_from_matrices, xie_lower_bound, StabilityEvidence, XieOutcome};

use thiserror::Error;

use crate::exact::AlgebraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error("composition degenerates: a cleared coordinate pair vanished identically")]
    DegenerateComposition,
    #[error("indeterminacy locus is positive dimensional in chart {0}: an eliminant vanished identically")]
    PositiveDimensionalLocus(&'static str),
    #[error("symbolic degree {got} exceeds the cap {cap}")]
    DegreeCapExceeded { got: u64, cap: u64 },
    #[error("the map has no explicit inverse")]
    MissingInverse,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
