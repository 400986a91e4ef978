//! The central rational fraction `F(x) = (x^2d + (2/n) x^d + 1) / (x^2d + 1)`
//! and its zero/pole structure.
//!
//! Everything asserted about it here is certified exactly on the sparse
//! polynomials: coprimality and simplicity through gcds, absence of real
//! roots through Sturm counts, and stability of the pole set under
//! `x -> -1/x` through the reversal identity. Numeric root lists are
//! attached only at desk-scale degrees.

use num_complex::Complex64;

use crate::exact::rational::{rat, Rational};
use crate::exact::upoly::UPoly;
use crate::numeric::complex_roots;

use super::FamilyError;

/// Largest degree for which numeric roots are materialized.
pub const NUMERIC_ROOT_DEGREE_CAP: u32 = 512;

#[derive(Debug, Clone)]
pub struct FractionReport {
    pub n: u64,
    pub d: u64,
    /// `x^2d + (2/n) x^d + 1`
    pub numerator: UPoly<Rational>,
    /// `x^2d + 1`
    pub denominator: UPoly<Rational>,
    pub coprime: bool,
    pub zeros_simple: bool,
    pub poles_simple: bool,
    pub real_zero_count: usize,
    pub real_pole_count: usize,
    /// pole set closed under `x -> -1/x`, exactly
    pub pole_reversal_stable: bool,
    /// numeric roots, present only when `2d <= NUMERIC_ROOT_DEGREE_CAP`
    pub zeros: Option<Vec<Complex64>>,
    pub poles: Option<Vec<Complex64>>,
}

/// Builds the fraction and certifies its structure. Simplicity or
/// reality violations are reported as errors rather than silently
/// accepted; `n = 1` is the known repeated-zero case.
pub fn build_fraction(n: u64, d: u64) -> Result<FractionReport, FamilyError> {
    if n == 0 || d == 0 {
        return Err(FamilyError::BadParams(format!("need n >= 1 and d >= 1, got n = {n}, d = {d}")));
    }
    let dd = d as u32;
    let numerator = UPoly::from_terms([
        (2 * dd, Rational::from_integer(1.into())),
        (dd, rat(2, n as i64)),
        (0, Rational::from_integer(1.into())),
    ]);
    let denominator = UPoly::from_terms([
        (2 * dd, Rational::from_integer(1.into())),
        (0, Rational::from_integer(1.into())),
    ]);
    let coprime = numerator.gcd(&denominator).degree() == Some(0);
    let zeros_simple = numerator.gcd(&numerator.derivative()).degree() == Some(0);
    let poles_simple = denominator.gcd(&denominator.derivative()).degree() == Some(0);
    let real_zero_count = numerator.count_real_roots();
    let real_pole_count = denominator.count_real_roots();
    let pole_reversal_stable = denominator.reversal_stable();
    let numeric = 2 * dd <= NUMERIC_ROOT_DEGREE_CAP;
    let roots = |p: &UPoly<Rational>| -> Vec<Complex64> {
        let coeffs = p.dense_c64();
        let max = coeffs.iter().map(|c| c.norm()).fold(1.0_f64, f64::max);
        let scaled: Vec<Complex64> = coeffs.iter().map(|c| c / max).collect();
        complex_roots(&scaled).into_iter().map(|r| r.value).collect()
    };
    let report = FractionReport {
        n,
        d,
        coprime,
        zeros_simple,
        poles_simple,
        real_zero_count,
        real_pole_count,
        pole_reversal_stable,
        zeros: numeric.then(|| roots(&numerator)),
        poles: numeric.then(|| roots(&denominator)),
        numerator,
        denominator,
    };
    if !report.zeros_simple {
        return Err(FamilyError::SimplicityViolation { which: "numerator" });
    }
    if !report.poles_simple {
        return Err(FamilyError::SimplicityViolation { which: "denominator" });
    }
    if report.real_zero_count > 0 {
        return Err(FamilyError::RealRootDetected { which: "numerator", count: report.real_zero_count });
    }
    if report.real_pole_count > 0 {
        return Err(FamilyError::RealRootDetected { which: "denominator", count: report.real_pole_count });
    }
    Ok(report)
}

/// Closed-form predictions for the zero and pole sets as points on the
/// unit circle.
pub mod closed_form {
    use num_complex::Complex64;

    /// Pole angles `(±π/2 + 2kπ) / d`.
    pub fn pole_angles(d: u64) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * d as usize);
        for k in 0..d {
            for sign in [1.0f64, -1.0] {
                out.push((sign * std::f64::consts::FRAC_PI_2
                    + 2.0 * std::f64::consts::PI * k as f64)
                    / d as f64);
            }
        }
        out
    }

    /// Zero angles. The `pi_shifted` variant reads
    /// `(π ∓ arccos(1/n) + 2kπ) / d`, which is what direct factorization
    /// of the numerator gives (`x^d = -1/n ± i sqrt(1 - 1/n^2)`); the
    /// unshifted variant `(±arccos(1/n) + 2kπ) / d` is kept as the
    /// competing candidate so reports can document which one matches.
    pub fn zero_angles(n: u64, d: u64, pi_shifted: bool) -> Vec<f64> {
        let a = (1.0 / n as f64).acos();
        let base = if pi_shifted {
            [std::f64::consts::PI - a, std::f64::consts::PI + a]
        } else {
            [a, -a]
        };
        let mut out = Vec::with_capacity(2 * d as usize);
        for k in 0..d {
            for b in base {
                out.push((b + 2.0 * std::f64::consts::PI * k as f64) / d as f64);
            }
        }
        out
    }

    pub fn points_from_angles(angles: &[f64]) -> Vec<Complex64> {
        angles.iter().map(|&a| Complex64::from_polar(1.0, a)).collect()
    }

    /// Smallest chordal gap between the zero set and the pole set,
    /// computed from the angle residues shared by the `2πk/d` lattice.
    pub fn zero_pole_separation(n: u64, d: u64) -> f64 {
        let a = (1.0 / n as f64).acos();
        let zeros = [std::f64::consts::PI - a, std::f64::consts::PI + a];
        let poles = [std::f64::consts::FRAC_PI_2, -std::f64::consts::FRAC_PI_2];
        let mut min_gap = f64::INFINITY;
        for z in zeros {
            for p in poles {
                // minimal |z - p + 2πm| over integers m
                let diff = (z - p).rem_euclid(2.0 * std::f64::consts::PI);
                let gap = diff.min(2.0 * std::f64::consts::PI - diff);
                min_gap = min_gap.min(gap);
            }
        }
        // angular gap scales by 1/d; chord length of that arc
        2.0 * (min_gap / d as f64 / 2.0).sin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fraction_structure() {
        let r = build_fraction(2, 1).unwrap();
        assert!(r.coprime && r.zeros_simple && r.poles_simple);
        assert_eq!(r.real_zero_count, 0);
        assert_eq!(r.real_pole_count, 0);
        assert!(r.pole_reversal_stable);
        // zeros at exp(±2πi/3), poles at ±i
        let zeros = r.zeros.unwrap();
        for z in &zeros {
            assert!((z.norm() - 1.0).abs() < 1e-10);
            assert!((z.re + 0.5).abs() < 1e-10, "Re z = {}", z.re);
        }
        let poles = r.poles.unwrap();
        for p in &poles {
            assert!(p.re.abs() < 1e-10 && (p.im.abs() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn repeated_zero_rejected() {
        // n = 1 makes the numerator (x^d + 1)^2
        assert!(matches!(
            build_fraction(1, 1),
            Err(FamilyError::SimplicityViolation { which: "numerator" })
        ));
        assert!(matches!(
            build_fraction(1, 3),
            Err(FamilyError::SimplicityViolation { which: "numerator" })
        ));
    }

    #[test]
    fn zero_params_rejected() {
        assert!(matches!(build_fraction(0, 1), Err(FamilyError::BadParams(_))));
        assert!(matches!(build_fraction(2, 0), Err(FamilyError::BadParams(_))));
    }

    #[test]
    fn large_degree_certificates_stay_exact() {
        let r = build_fraction(2, 16552).unwrap();
        assert!(r.coprime && r.zeros_simple && r.poles_simple && r.pole_reversal_stable);
        assert!(r.zeros.is_none(), "numeric roots skipped at large degree");
    }

    #[test]
    fn closed_form_pole_points_are_roots() {
        // the pole prediction must match the actual denominator roots
        for d in [1u64, 2, 3] {
            let r = build_fraction(3, d).unwrap();
            let predicted = closed_form::points_from_angles(&closed_form::pole_angles(d));
            let actual = r.poles.unwrap();
            for p in predicted {
                let best = actual.iter().map(|a| (a - p).norm()).fold(f64::INFINITY, f64::min);
                assert!(best < 1e-10, "pole {p} unmatched at d = {d}");
            }
        }
    }

    #[test]
    fn shifted_zero_form_matches_actual_roots() {
        for (n, d) in [(2u64, 1u64), (2, 2), (3, 2), (4, 3)] {
            let r = build_fraction(n, d).unwrap();
            let actual = r.zeros.unwrap();
            let shifted =
                closed_form::points_from_angles(&closed_form::zero_angles(n, d, true));
            for p in shifted {
                let best = actual.iter().map(|a| (a - p).norm()).fold(f64::INFINITY, f64::min);
                assert!(best < 1e-9, "shifted zero {p} unmatched at n = {n}, d = {d}");
            }
            let displayed =
                closed_form::points_from_angles(&closed_form::zero_angles(n, d, false));
            let worst_displayed = displayed
                .iter()
                .map(|p| actual.iter().map(|a| (a - p).norm()).fold(f64::INFINITY, f64::min))
                .fold(0.0_f64, f64::max);
            assert!(
                worst_displayed > 1e-3,
                "unshifted form unexpectedly matches at n = {n}, d = {d}"
            );
        }
    }

    #[test]
    fn separation_positive_at_huge_degree() {
        let s = closed_form::zero_pole_separation(2, 16552);
        assert!(s > 0.0);
        assert!(s < 1e-3);
    }
}
