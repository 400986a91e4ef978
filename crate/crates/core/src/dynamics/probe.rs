//! Complex-neighborhood probe around the real locus.
//!
//! Seeds sit at a prescribed logarithmic offset from the unit torus in
//! circle coordinates and are iterated forward and backward. The probe
//! records how far each orbit drifts from the real locus and how close
//! it ever comes to the indeterminacy points. A "bounded" outcome is
//! heuristic evidence for membership in a rotation-type Fatou region,
//! explicitly not a proof; the escape and approach events are what make
//! the probe falsifiable.

use num_complex::Complex64;
use serde::Serialize;

use crate::maps::{IndPoint, SurfaceMap};
use crate::par::map_indexed;

use super::torus::{ComplexTorusMap, ProjPoint, GUARD_RADIUS};
use super::DynError;

#[derive(Debug, Clone, Serialize)]
pub struct SeedOutcome {
    pub seed_index: usize,
    pub bounded: bool,
    /// first step (in either direction) at which the drift bound broke
    pub escaped_at: Option<usize>,
    /// first step at which an indeterminacy point came within range
    pub ind_approach_at: Option<usize>,
    pub max_log_drift: f64,
    pub min_ind_distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub offset: f64,
    pub seeds: usize,
    pub steps: usize,
    pub outcomes: Vec<SeedOutcome>,
    pub all_bounded: bool,
    pub max_log_drift: f64,
    pub min_ind_distance: f64,
    /// per-step envelope rows `[max |Im x|, max |Im y|, min dist to Ind]`
    /// across seeds and both time directions
    pub envelope: Vec<[f64; 3]>,
}

const IND_APPROACH_RADIUS: f64 = 1e-6;

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn unit(state: &mut u64) -> f64 {
    (splitmix(state) >> 11) as f64 / (1u64 << 53) as f64
}

fn ind_to_proj(p: &IndPoint) -> (ProjPoint, ProjPoint) {
    let lift = |c: &crate::maps::PointCoord| match c.as_complex() {
        Some(z) => ProjPoint::normalize(Complex64::new(1.0, 0.0), z),
        None => ProjPoint { z0: Complex64::new(0.0, 0.0), z1: Complex64::new(1.0, 0.0) },
    };
    (lift(&p.x), lift(&p.y))
}

fn log_drift(p: &ProjPoint) -> f64 {
    match p.to_circle() {
        Some(w) => {
            let n = w.norm();
            if n == 0.0 {
                f64::INFINITY
            } else {
                n.ln().abs()
            }
        }
        None => f64::INFINITY,
    }
}

fn abs_im_affine(p: &ProjPoint) -> f64 {
    if p.z0.norm() < 1e-300 {
        f64::INFINITY
    } else {
        (p.z1 / p.z0).im.abs()
    }
}

struct SeedTrace {
    outcome: SeedOutcome,
    /// per step: [max |Im x|, max |Im y|, min ind distance]
    rows: Vec<[f64; 3]>,
}

fn run_seed(
    idx: usize,
    forward: &ComplexTorusMap,
    backward: &ComplexTorusMap,
    ind: &[(ProjPoint, ProjPoint)],
    offset: f64,
    steps: usize,
    escape_bound: f64,
    seed_base: u64,
) -> SeedTrace {
    let mut state = seed_base ^ (idx as u64).wrapping_mul(0xa076_1d64_78bd_642f);
    let tau = 2.0 * std::f64::consts::PI;
    let phi1 = tau * unit(&mut state);
    let phi2 = tau * unit(&mut state);
    let s1 = if unit(&mut state) < 0.5 { -1.0 } else { 1.0 };
    let s2 = if unit(&mut state) < 0.5 { -1.0 } else { 1.0 };
    let w1 = Complex64::from_polar((s1 * offset).exp(), phi1);
    let w2 = Complex64::from_polar((s2 * offset).exp(), phi2);
    let start = (ProjPoint::from_circle(w1), ProjPoint::from_circle(w2));
    let mut rows = vec![[0.0f64, 0.0, f64::INFINITY]; steps + 1];
    let mut outcome = SeedOutcome {
        seed_index: idx,
        bounded: true,
        escaped_at: None,
        ind_approach_at: None,
        max_log_drift: 0.0,
        min_ind_distance: f64::INFINITY,
    };
    for (dir_map, _dir) in [(forward, 1i32), (backward, -1i32)] {
        let (mut x, mut y) = start;
        for step in 0..=steps {
            let drift = log_drift(&x).max(log_drift(&y));
            let ind_dist = ind
                .iter()
                .map(|(ix, iy)| x.chordal(ix).max(y.chordal(iy)))
                .fold(f64::INFINITY, f64::min);
            outcome.max_log_drift = outcome.max_log_drift.max(drift);
            outcome.min_ind_distance = outcome.min_ind_distance.min(ind_dist);
            let row = &mut rows[step];
            row[0] = row[0].max(abs_im_affine(&x));
            row[1] = row[1].max(abs_im_affine(&y));
            row[2] = row[2].min(ind_dist);
            if ind_dist < IND_APPROACH_RADIUS && outcome.ind_approach_at.is_none() {
                outcome.ind_approach_at = Some(step);
                outcome.bounded = false;
            }
            if drift > escape_bound && outcome.escaped_at.is_none() {
                outcome.escaped_at = Some(step);
                outcome.bounded = false;
            }
            if !outcome.bounded {
                break;
            }
            if step == steps {
                break;
            }
            let (nx, ny, margin) = dir_map.step(&x, &y);
            if margin < GUARD_RADIUS {
                outcome.ind_approach_at = Some(step + 1);
                outcome.bounded = false;
                break;
            }
            x = nx;
            y = ny;
        }
        if !outcome.bounded {
            break;
        }
    }
    SeedTrace { outcome, rows }
}

/// Runs the probe. `ind_points` are the indeterminacy points of the map
/// and of its inverse (both directions are iterated).
pub fn complex_probe(
    map: &SurfaceMap,
    ind_points: &[IndPoint],
    offset: f64,
    seeds: usize,
    steps: usize,
) -> Result<ProbeReport, DynError> {
    complex_probe_impl(map, ind_points, offset, seeds, steps, cfg!(feature = "parallel"))
}

pub(crate) fn complex_probe_impl(
    map: &SurfaceMap,
    ind_points: &[IndPoint],
    offset: f64,
    seeds: usize,
    steps: usize,
    parallel: bool,
) -> Result<ProbeReport, DynError> {
    if offset <= 0.0 {
        return Err(DynError::BadArgument("offset must be positive".into()));
    }
    let inverse = map
        .inverse()
        .ok_or_else(|| DynError::BadArgument("probe needs a map with an explicit inverse".into()))?;
    let forward = ComplexTorusMap::new(map);
    let backward = ComplexTorusMap::new(inverse);
    let ind: Vec<(ProjPoint, ProjPoint)> = ind_points.iter().map(ind_to_proj).collect();
    let escape_bound = (3.0 * offset).max(14.0);
    let traces = map_indexed(seeds, parallel, |idx| {
        run_seed(idx, &forward, &backward, &ind, offset, steps, escape_bound, 0x0b17_a710_5eed_c0de)
    });
    let mut envelope = vec![[0.0f64, 0.0, f64::INFINITY]; steps + 1];
    let mut outcomes = Vec::with_capacity(seeds);
    let mut max_drift = 0.0f64;
    let mut min_ind = f64::INFINITY;
    for t in traces {
        for (k, row) in t.rows.iter().enumerate() {
            envelope[k][0] = envelope[k][0].max(row[0]);
            envelope[k][1] = envelope[k][1].max(row[1]);
            envelope[k][2] = envelope[k][2].min(row[2]);
        }
        max_drift = max_drift.max(t.outcome.max_log_drift);
        min_ind = min_ind.min(t.outcome.min_ind_distance);
        outcomes.push(t.outcome);
    }
    Ok(ProbeReport {
        offset,
        seeds,
        steps,
        all_bounded: outcomes.iter().all(|o| o.bounded),
        outcomes,
        max_log_drift: max_drift,
        min_ind_distance: min_ind,
        envelope,
    })
}
