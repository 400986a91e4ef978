//! Exact lower bound on the dynamical degree from one squared iterate.
//!
//! If `deg_L(f^2) > C * deg_L(f)` with `C = 2^(3/2) * 3^18`, the
//! dynamical degree satisfies
//! `lambda(f) > deg_L(f^2) / (C * deg_L(f)) > 1`.
//! The criterion is one-directional: failing it proves nothing.
//!
//! `C` is irrational, so the comparison squares both sides: all three of
//! `deg_L(f^2)^2`, `C^2 = 8 * 3^36` and `deg_L(f)^2` live in the same
//! real quadratic field and compare exactly. The certified bound itself
//! lives in a biquadratic extension, so it is reported through its exact
//! square plus a decimal enclosure.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::exact::quad::QuadExt;
use crate::exact::rational::{decimal_string, Rational};

use super::bidegree::{deg_ample, AmpleClass, BidegreeMatrix};
use super::compose::compose_with_cap;
use super::surface_map::SurfaceMap;
use super::MapError;

/// `C^2 = 8 * 3^36`, exact.
pub fn criterion_constant_squared() -> Rational {
    let three36 = BigInt::from(3u32).pow(36);
    Rational::from_integer(BigInt::from(8u32) * three36)
}

/// How the identity `(f^2)* = (f*)^2` was justified on the matrix path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum StabilityEvidence {
    /// `f^2` was composed symbolically; no stability assumption needed.
    SymbolicComposition,
    /// A disjointness certificate for `Ind(f)` and `Ind(f^-1)`.
    DisjointnessCertificate,
    /// Caller-supplied assumption, recorded verbatim in reports.
    Assumed(String),
}

#[derive(Debug, Clone, Serialize)]
pub enum XieOutcome {
    /// The criterion holds: `lambda(f) >= bound > 1`, with the exact
    /// square of the bound and an outward-rounded decimal enclosure.
    Certified {
        deg_f: String,
        deg_f2: String,
        bound_squared: String,
        bound_enclosure: (String, String),
        stability: StabilityEvidence,
    },
    /// The strict inequality fails; the lemma is silent.
    Inconclusive {
        deg_f: String,
        deg_f2: String,
        /// decimal enclosure of `deg_L(f^2)^2 / (C^2 deg_L(f)^2)`
        ratio_squared_enclosure: (String, String),
        stability: StabilityEvidence,
    },
}

impl XieOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, XieOutcome::Certified { .. })
    }
}

/// Applies the criterion to exact degrees computed from bidegree
/// matrices of `f` and `f^2`.
pub fn xie_from_matrices(
    m_f: &BidegreeMatrix,
    m_f2: &BidegreeMatrix,
    class: &AmpleClass,
    stability: StabilityEvidence,
) -> XieOutcome {
    let deg1 = deg_ample(m_f, class);
    let deg2 = deg_ample(m_f2, class);
    debug_assert!(deg1.is_positive() && deg2.is_positive());
    let c_sq = QuadExt::from_rational(criterion_constant_squared());
    let lhs = deg2.mul(&deg2).expect("same field");
    let rhs = c_sq.mul(&deg1.mul(&deg1).expect("same field")).expect("same field");
    // ratio_sq = deg2^2 / (C^2 deg1^2); certified iff ratio_sq > 1
    let ratio_sq = lhs.div(&rhs).expect("positive denominator");
    let certified = lhs.cmp_exact(&rhs).expect("same field") == std::cmp::Ordering::Greater;
    let digits = 12u32;
    let (lo_sq, hi_sq) = ratio_sq.enclosure(digits + 4);
    if certified {
        let lo = sqrt_rational_floor(&lo_sq, digits);
        let hi = sqrt_rational_ceil(&hi_sq, digits);
        XieOutcome::Certified {
            deg_f: deg1.to_string(),
            deg_f2: deg2.to_string(),
            bound_squared: ratio_sq.to_string(),
            bound_enclosure: (
                decimal_string(&lo, digits, true),
                decimal_string(&hi, digits, false),
            ),
            stability,
        }
    } else {
        XieOutcome::Inconclusive {
            deg_f: deg1.to_string(),
            deg_f2: deg2.to_string(),
            ratio_squared_enclosure: (
                decimal_string(&lo_sq, digits, true),
                decimal_string(&hi_sq, digits, false),
            ),
            stability,
        }
    }
}

/// Full symbolic route: composes `f` with itself and reads both degrees
/// from cleared coordinates. No stability assumption enters.
pub fn xie_lower_bound(
    f: &SurfaceMap,
    class: &AmpleClass,
    cap: Option<u64>,
) -> Result<XieOutcome, MapError> {
    let m1 = BidegreeMatrix::from_map(f);
    let f2 = compose_with_cap(f, f, cap)?;
    let m2 = BidegreeMatrix::from_map(&f2);
    Ok(xie_from_matrices(&m1, &m2, class, StabilityEvidence::SymbolicComposition))
}

/// The sufficient inequality `4 d^2 >= 3^18 sqrt(2)` for the map family,
/// decided exactly by squaring.
pub fn family_surd_condition(d: u64) -> bool {
    let lhs = BigInt::from(16u32) * BigInt::from(d).pow(4);
    let rhs = BigInt::from(2u32) * BigInt::from(3u32).pow(36);
    lhs >= rhs
}

fn sqrt_rational_floor(q: &Rational, digits: u32) -> Rational {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (q * Rational::from_integer(&scale * &scale)).floor().to_integer();
    if scaled < BigInt::from(0) {
        return Rational::from_integer(BigInt::from(0));
    }
    Rational::new(scaled.sqrt(), scale)
}

fn sqrt_rational_ceil(q: &Rational, digits: u32) -> Rational {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (q * Rational::from_integer(&scale * &scale)).ceil().to_integer();
    if scaled < BigInt::from(0) {
        return Rational::from_integer(BigInt::from(0));
    }
    Rational::new(scaled.sqrt() + BigInt::one(), scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::bidegree::AmpleClass;

    fn family_outcome(d: u64) -> XieOutcome {
        let a = BidegreeMatrix::new(2 * d, 1, 1, 0);
        let class = AmpleClass::eigenclass(d);
        xie_from_matrices(
            &a.pow(2),
            &a.pow(4),
            &class,
            StabilityEvidence::Assumed("test".into()),
        )
    }

    #[test]
    fn threshold_is_razor_sharp() {
        assert!(family_outcome(16552).is_certified());
        assert!(!family_outcome(16551).is_certified());
        assert!(!family_outcome(1).is_certified());
    }

    #[test]
    fn surd_condition_boundary() {
        // 16 d^4 >= 2 * 3^36 turns true at d = 11704; it is a necessary
        // consequence of the certification regime, not the sharp threshold
        assert!(family_surd_condition(16552));
        assert!(family_surd_condition(16551));
        assert!(family_surd_condition(11704));
        assert!(!family_surd_condition(11703));
    }

    #[test]
    fn certified_bound_encloses_a_value_above_one() {
        if let XieOutcome::Certified { bound_enclosure: (lo, hi), .. } = family_outcome(16552) {
            let lo: f64 = lo.parse().unwrap();
            let hi: f64 = hi.parse().unwrap();
            assert!(lo > 1.0, "lower end {lo}");
            assert!(hi > lo);
            assert!(hi < 1.001, "bound should be barely above 1, got {hi}");
        } else {
            panic!("expected certification at d = 16552");
        }
    }
}
