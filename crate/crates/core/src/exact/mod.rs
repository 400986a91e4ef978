//! Exact arithmetic: rationals, Gaussian rationals, real quadratic
//! extensions, and sparse bivariate polynomials over them.

pub mod bihom;
pub mod bipoly;
pub mod gauss;
pub mod gcd;
pub mod modular;
pub mod quad;
pub mod rational;
pub mod resultant;
pub mod scalar;
pub mod upoly;

pub use bihom::BiHomPair;
pub use bipoly::{BiPoly, Var};
pub use gauss::GaussRational;
pub use quad::QuadExt;
pub use rational::Rational;
pub use scalar::PolyScalar;
pub use upoly::UPoly;

use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("resultant of two zero polynomials")]
    BothZero,
    #[error("quadratic extensions over different radicands: sqrt({0}) vs sqrt({1})")]
    MixedField(u64, u64),
    #[error("radicand {0} is a perfect square; value is rational")]
    SquareRadicand(u64),
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
}
