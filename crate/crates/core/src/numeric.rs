//! Numeric root isolation for univariate polynomials.
//!
//! Durand-Kerner simultaneous iteration with a Newton polish and an
//! a posteriori error radius: every returned approximation `z` comes
//! with `radius = deg * |p(z) / p'(z)|`, which bounds the distance from
//! `z` to the nearest true root of `p`. Exact elimination remains the
//! authority for all verdicts; these points are for display, matching
//! and separation estimates.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct CertifiedRoot {
    pub value: Complex64,
    pub radius: f64,
}

fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn eval_deriv(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (e, c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * z + c * (e as f64);
    }
    acc
}

/// All complex roots of the polynomial with coefficients
/// `[c0, c1, ..., cn]` (low to high). Leading zeros are trimmed; zero
/// roots are deflated exactly.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<CertifiedRoot> {
    let mut coeffs: Vec<Complex64> = coeffs.to_vec();
    while coeffs.last().map_or(false, |c| c.norm() == 0.0) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return vec![];
    }
    let mut zero_roots = 0usize;
    while coeffs.first().map_or(false, |c| c.norm() == 0.0) {
        coeffs.remove(0);
        zero_roots += 1;
    }
    let n = coeffs.len() - 1;
    let mut roots: Vec<CertifiedRoot> = Vec::with_capacity(n + zero_roots);
    for _ in 0..zero_roots {
        roots.push(CertifiedRoot { value: Complex64::new(0.0, 0.0), radius: 0.0 });
    }
    if n == 0 {
        return roots;
    }
    // scale-invariant initial guesses on a circle of the Cauchy-bound radius
    let lead = coeffs[n].norm();
    let bound = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0_f64, f64::max);
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(0.5 * bound.min(4.0), theta)
        })
        .collect();
    for _ in 0..600 {
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let mut denom = coeffs[n];
            for j in 0..n {
                if i != j {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() == 0.0 {
                zs[i] += Complex64::new(1e-6, 1e-6);
                continue;
            }
            let step = eval(&coeffs, zs[i]) / denom;
            zs[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * bound.max(1.0) {
            break;
        }
    }
    // Newton polish, then certify
    for z in zs.iter_mut() {
        for _ in 0..3 {
            let d = eval_deriv(&coeffs, *z);
            if d.norm() == 0.0 {
                break;
            }
            *z -= eval(&coeffs, *z) / d;
        }
    }
    for z in zs {
        let d = eval_deriv(&coeffs, z);
        let radius = if d.norm() == 0.0 {
            f64::INFINITY
        } else {
            (n as f64) * (eval(&coeffs, z) / d).norm()
        };
        roots.push(CertifiedRoot { value: z, radius });
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_roots() {
        // x^2 + 1
        let roots = complex_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!((r.value.norm() - 1.0).abs() < 1e-12);
            assert!(r.value.re.abs() < 1e-12);
            assert!(r.radius < 1e-10);
        }
    }

    #[test]
    fn cyclotomic_cluster() {
        // x^2 + x + 1: roots at exp(+-2 pi i / 3)
        let roots = complex_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let mut res: Vec<f64> = roots.iter().map(|r| (r.value.re + 0.5).abs()).collect();
        res.sort_by(f64::total_cmp);
        assert!(res[1] < 1e-12);
        assert!(roots.iter().all(|r| (r.value.im.abs() - 0.75f64.sqrt()).abs() < 1e-12));
    }

    #[test]
    fn zero_deflation_and_degenerate_input() {
        // x^3 - x^2 = x^2 (x - 1)
        let roots = complex_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(roots.len(), 3);
        let ones = roots.iter().filter(|r| (r.value - c(1.0, 0.0)).norm() < 1e-10).count();
        assert_eq!(ones, 1);
        assert!(complex_roots(&[c(3.0, 0.0)]).is_empty());
        assert!(complex_roots(&[]).is_empty());
    }

    #[test]
    fn high_degree_sparse() {
        // x^12 + 1: all roots on the unit circle
        let mut coeffs = vec![c(0.0, 0.0); 13];
        coeffs[0] = c(1.0, 0.0);
        coeffs[12] = c(1.0, 0.0);
        let roots = complex_roots(&coeffs);
        assert_eq!(roots.len(), 12);
        for r in &roots {
            assert!((r.value.norm() - 1.0).abs() < 1e-9, "|z| = {}", r.value.norm());
            assert!(r.radius < 1e-8);
        }
    }
}
