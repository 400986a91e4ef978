//! Builders for the explicit map family and its verification pipeline.
//!
//! The family is `f = R ∘ g^2` where `g(x, y) = (F(x) y, x)` twists the
//! coordinate swap by a rational fraction `F` that is close to 1 on the
//! real line, and `R` is the pair of circle rotations written in affine
//! coordinates through half-angle tangents.

pub mod builders;
pub mod fraction;
pub mod verify;

pub use builders::{build_family_map, build_rotation, build_twist, FamilyParams};
pub use fraction::{closed_form, FractionReport};
pub use verify::{verify_theorem, ClosedFormIndReport, TheoremReport, VerifyOptions};

use thiserror::Error;

use crate::maps::MapError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("{which} has a repeated root; zeros and poles must be simple")]
    SimplicityViolation { which: &'static str },
    #[error("{which} has {count} real root(s); the construction needs none")]
    RealRootDetected { which: &'static str, count: usize },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Map(#[from] MapError),
}
