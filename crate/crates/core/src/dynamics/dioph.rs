//! Finite-range Diophantine checker.
//!
//! Scans every integer triple `0 < max(|k1|,|k2|,|k3|) <= K` and minimizes
//! `|k1 a1 + k2 a2 + 2π k3| * max(|k|)^β`. The empirical constant is an
//! upper bound for any true Diophantine constant of exponent β; an exact
//! floating-point zero pinpoints a resonance.

use serde::Serialize;

use crate::par::fold_indexed;

#[derive(Debug, Clone, Serialize)]
pub struct DiophantineReport {
    pub alpha: (f64, f64),
    pub beta: f64,
    pub k_max: i64,
    /// minimum of `|k . (a1, a2, 2π)| * ||k||^β` over the scanned range
    pub c_emp: f64,
    /// the minimizing triple
    pub argmin: (i64, i64, i64),
    /// combination value at the argmin, before the norm weight
    pub resonance_value: f64,
    pub exact_resonance: bool,
}

/// Value `|k1 a1 + k2 a2 + 2π k3|` for one triple.
pub fn combination_value(alpha: (f64, f64), k: (i64, i64, i64)) -> f64 {
    (k.0 as f64 * alpha.0 + k.1 as f64 * alpha.1 + 2.0 * std::f64::consts::PI * k.2 as f64).abs()
}

pub fn diophantine_check(alpha: (f64, f64), beta: f64, k_max: i64) -> DiophantineReport {
    diophantine_check_impl(alpha, beta, k_max, cfg!(feature = "parallel"))
}

pub(crate) fn diophantine_check_impl(
    alpha: (f64, f64),
    beta: f64,
    k_max: i64,
    parallel: bool,
) -> DiophantineReport {
    assert!(k_max >= 1, "need k_max >= 1");
    let side = 2 * k_max + 1;
    let best = fold_indexed(
        (side * side) as usize,
        parallel,
        (f64::INFINITY, (0i64, 0i64, 0i64), f64::INFINITY),
        |idx| {
            let k1 = idx as i64 / side - k_max;
            let k2 = idx as i64 % side - k_max;
            let mut local = (f64::INFINITY, (0i64, 0i64, 0i64), f64::INFINITY);
            for k3 in -k_max..=k_max {
                if k1 == 0 && k2 == 0 && k3 == 0 {
                    continue;
                }
                let norm = k1.abs().max(k2.abs()).max(k3.abs()) as f64;
                let value = combination_value(alpha, (k1, k2, k3));
                let weighted = value * norm.powf(beta);
                if better(weighted, (k1, k2, k3), local) {
                    local = (weighted, (k1, k2, k3), value);
                }
            }
            local
        },
        |a, b| if better(b.0, b.1, a) { b } else { a },
    );
    DiophantineReport {
        alpha,
        beta,
        k_max,
        c_emp: best.0,
        argmin: best.1,
        resonance_value: best.2,
        exact_resonance: best.2 == 0.0,
    }
}

/// Strict total tie-break so parallel reduction stays deterministic.
fn better(w: f64, k: (i64, i64, i64), incumbent: (f64, (i64, i64, i64), f64)) -> bool {
    if w < incumbent.0 {
        return true;
    }
    if w > incumbent.0 {
        return false;
    }
    k < incumbent.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn resonant_pairs_hit_exact_zero() {
        // a1 = a2: k = (1, -1, 0) cancels exactly
        let r = diophantine_check((1.234, 1.234), 2.0, 8);
        assert_eq!(r.c_emp, 0.0);
        assert!(r.exact_resonance);
        assert_eq!(combination_value((1.234, 1.234), (1, -1, 0)), 0.0);
        // (π, π): k = (1, 1, -1)
        let r = diophantine_check((PI, PI), 2.0, 8);
        assert_eq!(r.c_emp, 0.0);
        assert_eq!(combination_value((PI, PI), (1, 1, -1)), 0.0);
    }

    #[test]
    fn generic_pair_stays_positive() {
        let alpha = (2.0 * PI * (2.0f64.sqrt() - 1.0), 2.0 * PI * (3.0f64.sqrt() - 1.0));
        let r = diophantine_check(alpha, 2.0, 24);
        assert!(r.c_emp > 0.0);
        assert!(!r.exact_resonance);
    }

    #[test]
    fn monotone_in_range() {
        let alpha = (2.0 * PI * (2.0f64.sqrt() - 1.0), 2.0 * PI * (3.0f64.sqrt() - 1.0));
        let wide = diophantine_check(alpha, 2.0, 32);
        let narrow = diophantine_check(alpha, 2.0, 8);
        assert!(narrow.c_emp >= wide.c_emp);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_agree() {
        let alpha = (0.7853, 2.234);
        let a = diophantine_check_impl(alpha, 1.5, 20, true);
        let b = diophantine_check_impl(alpha, 1.5, 20, false);
        assert_eq!(a.c_emp, b.c_emp);
        assert_eq!(a.argmin, b.argmin);
    }
}
