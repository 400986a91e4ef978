//! Exact and numerical toolkit for birational self-maps of the quadric
//! surface P1 x P1.
//!
//! The crate is organized in four layers:
//!
//! * [`exact`] — arbitrary-precision rational, Gaussian-rational and real
//!   quadratic-field arithmetic, plus sparse bivariate polynomial algebra
//!   (gcd, resultants, bihomogenization, Sturm counts).
//! * [`maps`] — birational self-maps as first-class values: composition
//!   with common-factor clearing, bidegree matrices, ample-class degrees,
//!   the degree-growth lower-bound criterion, indeterminacy loci and
//!   disjointness certificates.
//! * [`family`] — builders for the explicit map family studied here
//!   (a twisted coordinate swap composed with a pair of circle rotations)
//!   and the verification pipeline for its degree-growth and
//!   indeterminacy claims.
//! * [`dynamics`] — double-precision dynamics on the real locus (a torus):
//!   orbits with lifts, rotation vectors, fixed-point censuses, Diophantine
//!   scans and complex-neighborhood probes.
//!
//! Grid scans, seed sweeps and pairwise certificate checks are data
//! parallel; they run on rayon when the `parallel` feature (default) is
//! enabled and fall back to sequential loops otherwise. The sequential
//! implementations stay available under [`dynamics::seq`] for benchmarks.

pub mod dynamics;
pub mod exact;
pub mod family;
pub mod maps;
pub mod numeric;

pub(crate) mod par;

pub use exact::{GaussRational, QuadExt, Rational};
pub use maps::{AmpleClass, BidegreeMatrix, SurfaceMap};
