//! Executable verification pipeline for the family map `f = R ∘ g^2`.
//!
//! Stages: (i) compare the computed indeterminacy loci against the
//! closed-form component unions, resolving which zero-angle convention
//! actually matches the roots; (ii) certify disjointness of `Ind(f)` and
//! `Ind(f^-1)`; (iii) check that no indeterminacy point is real;
//! (iv) run the degree-growth criterion, symbolically at desk scale and
//! through the matrix fast path beyond it; (v) instance-check the
//! rotation-orbit geometry that the disjointness argument leans on.
//! Every stage failure is recorded; a report is always produced.

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::dioph::{diophantine_check, DiophantineReport};
use crate::exact::rational::to_f64;
use crate::maps::bidegree::{AmpleClass, BidegreeMatrix};
use crate::maps::compose::compose_with_cap;
use crate::maps::ind::{ind_disjoint, indeterminacy_set, IndPoint, PointCoord};
use crate::maps::xie::{
    family_surd_condition, xie_from_matrices, StabilityEvidence, XieOutcome,
};
use crate::maps::SurfaceMap;

use super::builders::{build_family_map, build_twist, FamilyParams};
use super::fraction::{build_fraction, closed_form, FractionReport};
use super::FamilyError;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// tolerance for matching computed against predicted points
    pub ind_tolerance: f64,
    /// cap on raw symbolic composition degree; above it the pipeline
    /// switches to the matrix fast path
    pub degree_cap: u64,
    /// optional Diophantine scan recorded as metadata
    pub diophantine: Option<(f64, f64, f64, i64)>,
    /// sample count for the rotation-orbit geometry check
    pub orbit_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            ind_tolerance: 1e-10,
            degree_cap: 512,
            diophantine: None,
            orbit_samples: 12,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormIndReport {
    pub computed_forward: usize,
    pub expected_forward: usize,
    pub computed_inverse: usize,
    pub expected_inverse: usize,
    /// Hausdorff distances (chordal) between computed and predicted sets
    pub hausdorff_forward: f64,
    pub hausdorff_inverse: f64,
    /// which closed form of the zero set matches the numerator roots
    pub zero_form_pi_shifted_matches: bool,
    pub zero_form_as_displayed_matches: bool,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FractionFacts {
    pub coprime: bool,
    pub zeros_simple: bool,
    pub poles_simple: bool,
    pub real_zero_count: usize,
    pub real_pole_count: usize,
    pub pole_reversal_stable: bool,
}

impl FractionFacts {
    fn from(r: &FractionReport) -> Self {
        FractionFacts {
            coprime: r.coprime,
            zeros_simple: r.zeros_simple,
            poles_simple: r.poles_simple,
            real_zero_count: r.real_zero_count,
            real_pole_count: r.real_pole_count,
            pole_reversal_stable: r.pole_reversal_stable,
        }
    }

    fn all_good(&self) -> bool {
        self.coprime
            && self.zeros_simple
            && self.poles_simple
            && self.real_zero_count == 0
            && self.real_pole_count == 0
            && self.pole_reversal_stable
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitFactReport {
    pub samples: usize,
    /// worst distance of an on-circle sweep hit from `{x, -1/x}`
    pub max_hit_mismatch: f64,
    /// smallest off-circle margin away from the two exact hits
    pub min_off_circle_margin: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub n: u64,
    pub d: u64,
    pub t1: String,
    pub t2: String,
    pub theta: (f64, f64),
    /// `max(|π - θ1|, |π - θ2|)`, the admissible rotation-offset bound
    pub epsilon_bound: f64,
    pub symbolic_path: bool,
    pub fraction: FractionFacts,
    pub ind_report: Option<ClosedFormIndReport>,
    pub disjoint: Option<bool>,
    pub overlap_points: usize,
    pub pairs_checked: usize,
    /// smallest distance of any indeterminacy point from the real locus
    pub realness_margin: f64,
    pub all_ind_nonreal: bool,
    pub xie: XieOutcome,
    pub surd_condition: bool,
    pub orbit_fact: OrbitFactReport,
    pub diophantine: Option<DiophantineReport>,
    pub stage_errors: Vec<String>,
    pub ok: bool,
}

type ExtPoint = (Option<Complex64>, Option<Complex64>);

fn chordal_coord(a: Option<Complex64>, b: Option<Complex64>) -> f64 {
    match (a, b) {
        (Some(a), Some(b)) => (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt(),
        (Some(a), None) | (None, Some(a)) => 1.0 / (1.0 + a.norm_sqr()).sqrt(),
        (None, None) => 0.0,
    }
}

fn chordal_pair(a: &ExtPoint, b: &ExtPoint) -> f64 {
    chordal_coord(a.0, b.0).max(chordal_coord(a.1, b.1))
}

fn hausdorff(a: &[ExtPoint], b: &[ExtPoint]) -> f64 {
    let one_way = |from: &[ExtPoint], to: &[ExtPoint]| {
        from.iter()
            .map(|p| to.iter().map(|q| chordal_pair(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0f64, f64::max)
    };
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    one_way(a, b).max(one_way(b, a))
}

fn ind_points_to_ext(points: &[IndPoint]) -> Vec<ExtPoint> {
    points
        .iter()
        .map(|p| {
            let lift = |c: &PointCoord| c.as_complex();
            (lift(&p.x), lift(&p.y))
        })
        .collect()
}

/// Möbius image under the rotation component with tangent `t`.
fn rot_apply(t: f64, z: Option<Complex64>) -> Option<Complex64> {
    match z {
        None => {
            if t == 0.0 {
                None
            } else {
                Some(Complex64::new(-1.0 / t, 0.0))
            }
        }
        Some(z) => {
            let den = Complex64::new(1.0, 0.0) - z * t;
            if den.norm() < 1e-300 {
                None
            } else {
                Some((z + t) / den)
            }
        }
    }
}

/// Predicted `Ind(f)`: zeros x infinity, poles x zero, and the swapped
/// components.
fn expected_forward(zeros: &[Complex64], poles: &[Complex64]) -> Vec<ExtPoint> {
    let mut out = Vec::with_capacity(4 * zeros.len());
    for z in zeros {
        out.push((Some(*z), None));
        out.push((None, Some(*z)));
    }
    for p in poles {
        out.push((Some(*p), Some(Complex64::new(0.0, 0.0))));
        out.push((Some(Complex64::new(0.0, 0.0)), Some(*p)));
    }
    out
}

/// Predicted `Ind(f^-1)`: the rotation image of the mirrored components.
fn expected_inverse(zeros: &[Complex64], poles: &[Complex64], t1: f64, t2: f64) -> Vec<ExtPoint> {
    let mut out = Vec::with_capacity(4 * zeros.len());
    let zero = Some(Complex64::new(0.0, 0.0));
    for z in zeros {
        // R(0 x Z) and R(Z x 0)
        out.push((rot_apply(t1, zero), rot_apply(t2, Some(*z))));
        out.push((rot_apply(t1, Some(*z)), rot_apply(t2, zero)));
    }
    for p in poles {
        // R(inf x P) and R(P x inf)
        out.push((rot_apply(t1, None), rot_apply(t2, Some(*p))));
        out.push((rot_apply(t1, Some(*p)), rot_apply(t2, None)));
    }
    out
}

/// Sweep of the rotation orbit of circle points: on-circle hits must be
/// `x` itself or `-1/x`.
fn orbit_fact_check(samples: usize) -> OrbitFactReport {
    let grid = 720usize;
    let mut max_hit_mismatch = 0.0f64;
    let mut min_off_margin = f64::INFINITY;
    for k in 0..samples {
        // sample angles avoiding ±i (angles ±π/2)
        let phi = 0.11 + 2.9 * (k as f64 + 0.3) / samples as f64;
        let x = Complex64::from_polar(1.0, phi);
        let mirror = -x.inv();
        for step in 0..grid {
            let theta = -std::f64::consts::PI
                + 2.0 * std::f64::consts::PI * step as f64 / grid as f64;
            let (s, c) = (0.5 * theta).sin_cos();
            let den = -x * s + c;
            if den.norm() < 1e-12 {
                continue;
            }
            let img = (x * c + s) / den;
            let off = (img.norm() - 1.0).abs();
            if off < 1e-9 {
                let hit = (img - x).norm().min((img - mirror).norm());
                max_hit_mismatch = max_hit_mismatch.max(hit);
            } else {
                min_off_margin = min_off_margin.min(off);
            }
        }
    }
    OrbitFactReport {
        samples,
        max_hit_mismatch,
        min_off_circle_margin: min_off_margin,
        ok: max_hit_mismatch < 1e-8 && min_off_margin > 1e-7,
    }
}

/// Exact stability certificate for the family at any scale: the pieces
/// the disjointness argument needs, all certified on the sparse
/// polynomials.
pub fn family_stability_exact(fraction: &FractionFacts) -> bool {
    fraction.all_good()
}

pub fn verify_theorem(params: &FamilyParams, options: &VerifyOptions) -> TheoremReport {
    let mut errors: Vec<String> = Vec::new();
    let (theta1, theta2) = params.angles();
    let t1f = to_f64(&params.t1);
    let t2f = to_f64(&params.t2);

    let fraction_report = match build_fraction(params.n, params.d) {
        Ok(r) => r,
        Err(e) => {
            errors.push(format!("fraction stage: {e}"));
            // rebuild without the validation gate for reporting purposes
            return failed_report(params, theta1, theta2, errors);
        }
    };
    let fraction = FractionFacts::from(&fraction_report);

    // raw degree of composing g with itself is about 4d^2
    let raw_degree = 4u64.saturating_mul(params.d).saturating_mul(params.d) + 2 * params.d;
    let symbolic_path = raw_degree <= options.degree_cap;

    let zeros: Vec<Complex64>;
    let poles: Vec<Complex64>;
    match (&fraction_report.zeros, &fraction_report.poles) {
        (Some(z), Some(p)) => {
            zeros = z.clone();
            poles = p.clone();
        }
        _ => {
            zeros = closed_form::points_from_angles(&closed_form::zero_angles(
                params.n, params.d, true,
            ));
            poles = closed_form::points_from_angles(&closed_form::pole_angles(params.d));
        }
    }

    // which closed form of the zero set matches the actual roots
    let (shifted_ok, displayed_ok) = match &fraction_report.zeros {
        Some(actual) => {
            let actual_pts: Vec<ExtPoint> = actual.iter().map(|z| (Some(*z), None)).collect();
            let check = |shift: bool| {
                let angles = closed_form::zero_angles(params.n, params.d, shift);
                let pts: Vec<ExtPoint> = closed_form::points_from_angles(&angles)
                    .into_iter()
                    .map(|z| (Some(z), None))
                    .collect();
                hausdorff(&actual_pts, &pts) < options.ind_tolerance.max(1e-9)
            };
            (check(true), check(false))
        }
        // at large degree the root finder is skipped; the shifted form is
        // the factorization-correct one by construction
        None => (true, false),
    };

    let mut ind_report = None;
    let mut disjoint = None;
    let mut overlap_points = 0usize;
    let mut pairs_checked = 0usize;
    let mut realness_margin = f64::INFINITY;
    let xie;

    if symbolic_path {
        match build_family_map(params, Some(options.degree_cap)) {
            Ok(f) => {
                let m_f = BidegreeMatrix::from_map(&f);
                match indeterminacy_set(&f) {
                    Ok(ind_f) => {
                        let computed_f = ind_points_to_ext(&ind_f.points);
                        let expected_f = expected_forward(&zeros, &poles);
                        let hf = hausdorff(&computed_f, &expected_f);
                        let (ci, ei, hi) = match f.inverse().map(indeterminacy_set) {
                            Some(Ok(ind_inv)) => {
                                let computed_i = ind_points_to_ext(&ind_inv.points);
                                let expected_i = expected_inverse(&zeros, &poles, t1f, t2f);
                                let hi = hausdorff(&computed_i, &expected_i);
                                for p in &ind_inv.points {
                                    realness_margin = realness_margin.min(p.dist_from_real());
                                }
                                (computed_i.len(), expected_i.len(), hi)
                            }
                            _ => (0, 0, f64::INFINITY),
                        };
                        for p in &ind_f.points {
                            realness_margin = realness_margin.min(p.dist_from_real());
                        }
                        let matches = hf < options.ind_tolerance && hi < options.ind_tolerance;
                        if !matches {
                            errors.push(format!(
                                "indeterminacy stage: Hausdorff forward {hf:.3e}, inverse {hi:.3e} above tolerance"
                            ));
                        }
                        ind_report = Some(ClosedFormIndReport {
                            computed_forward: computed_f.len(),
                            expected_forward: expected_f.len(),
                            computed_inverse: ci,
                            expected_inverse: ei,
                            hausdorff_forward: hf,
                            hausdorff_inverse: hi,
                            zero_form_pi_shifted_matches: shifted_ok,
                            zero_form_as_displayed_matches: displayed_ok,
                            matches,
                        });
                    }
                    Err(e) => errors.push(format!("indeterminacy stage: {e}")),
                }
                match ind_disjoint(&f) {
                    Ok(cert) => {
                        disjoint = Some(cert.is_disjoint());
                        match cert {
                            crate::maps::ind::DisjointnessCertificate::Disjoint { pairs_checked: p } => {
                                pairs_checked = p;
                            }
                            crate::maps::ind::DisjointnessCertificate::Overlap { points } => {
                                overlap_points = points.len();
                                errors.push("disjointness stage: overlap detected".into());
                            }
                        }
                    }
                    Err(e) => errors.push(format!("disjointness stage: {e}")),
                }
                let evidence = if disjoint == Some(true) {
                    StabilityEvidence::DisjointnessCertificate
                } else {
                    StabilityEvidence::SymbolicComposition
                };
                let fwd = f.without_inverse();
                xie = match compose_with_cap(&fwd, &fwd, Some(options.degree_cap)) {
                    Ok(f2) => Some(xie_from_matrices(
                        &m_f,
                        &BidegreeMatrix::from_map(&f2),
                        &AmpleClass::eigenclass(params.d),
                        evidence,
                    )),
                    Err(e) => {
                        errors.push(format!("degree-growth stage: {e}"));
                        None
                    }
                };
            }
            Err(e) => {
                errors.push(format!("map construction: {e}"));
                xie = None;
            }
        }
    } else {
        // matrix fast path: exact fraction facts justify disjointness of
        // the closed-form loci, hence stability
        let stable = family_stability_exact(&fraction);
        disjoint = Some(stable);
        if !stable {
            errors.push("stability certificate failed on exact fraction facts".into());
        }
        // realness margin from the closed-form points and their rotation
        // translates
        for z in zeros.iter().chain(poles.iter()) {
            realness_margin = realness_margin.min(z.im.abs());
            if let Some(w1) = rot_apply(t1f, Some(*z)) {
                realness_margin = realness_margin.min(w1.im.abs());
            }
            if let Some(w2) = rot_apply(t2f, Some(*z)) {
                realness_margin = realness_margin.min(w2.im.abs());
            }
        }
        let a = BidegreeMatrix::new(2 * params.d, 1, 1, 0);
        xie = Some(xie_from_matrices(
            &a.pow(2),
            &a.pow(4),
            &AmpleClass::eigenclass(params.d),
            StabilityEvidence::DisjointnessCertificate,
        ));
    }

    let orbit_fact = orbit_fact_check(options.orbit_samples);
    if !orbit_fact.ok {
        errors.push("rotation-orbit geometry check failed".into());
    }

    let all_ind_nonreal = realness_margin > 1e-9;
    if !all_ind_nonreal {
        errors.push(format!("realness stage: margin {realness_margin:.3e}"));
    }

    let diophantine = options
        .diophantine
        .map(|(a1, a2, beta, kmax)| diophantine_check((a1, a2), beta, kmax));

    let xie = xie.unwrap_or_else(|| {
        // unreachable in practice; keep the report total
        xie_from_matrices(
            &BidegreeMatrix::identity(),
            &BidegreeMatrix::identity(),
            &AmpleClass::symmetric(),
            StabilityEvidence::Assumed("stage failed".into()),
        )
    });

    let ok = errors.is_empty() && disjoint == Some(true) && all_ind_nonreal && orbit_fact.ok;
    TheoremReport {
        n: params.n,
        d: params.d,
        t1: crate::exact::rational::format_rational(&params.t1),
        t2: crate::exact::rational::format_rational(&params.t2),
        theta: (theta1, theta2),
        epsilon_bound: params.epsilon_bound(),
        symbolic_path,
        fraction,
        ind_report,
        disjoint,
        overlap_points,
        pairs_checked,
        realness_margin,
        all_ind_nonreal,
        xie,
        surd_condition: family_surd_condition(params.d),
        orbit_fact,
        diophantine,
        stage_errors: errors,
        ok,
    }
}

fn failed_report(
    params: &FamilyParams,
    theta1: f64,
    theta2: f64,
    errors: Vec<String>,
) -> TheoremReport {
    TheoremReport {
        n: params.n,
        d: params.d,
        t1: crate::exact::rational::format_rational(&params.t1),
        t2: crate::exact::rational::format_rational(&params.t2),
        theta: (theta1, theta2),
        epsilon_bound: params.epsilon_bound(),
        symbolic_path: false,
        fraction: FractionFacts {
            coprime: false,
            zeros_simple: false,
            poles_simple: false,
            real_zero_count: 0,
            real_pole_count: 0,
            pole_reversal_stable: false,
        },
        ind_report: None,
        disjoint: None,
        overlap_points: 0,
        pairs_checked: 0,
        realness_margin: f64::NAN,
        all_ind_nonreal: false,
        xie: xie_from_matrices(
            &BidegreeMatrix::identity(),
            &BidegreeMatrix::identity(),
            &AmpleClass::symmetric(),
            StabilityEvidence::Assumed("construction failed".into()),
        ),
        surd_condition: family_surd_condition(params.d),
        orbit_fact: OrbitFactReport {
            samples: 0,
            max_hit_mismatch: f64::NAN,
            min_off_circle_margin: f64::NAN,
            ok: false,
        },
        diophantine: None,
        stage_errors: errors,
        ok: false,
    }
}

/// Inverse of the family map built directly (`g^-2 ∘ R^-1`), exposed for
/// callers that need indeterminacy data of the inverse at small scale.
pub fn build_family_inverse(params: &FamilyParams, cap: Option<u64>) -> Result<SurfaceMap, FamilyError> {
    let g = build_twist(params.n, params.d)?;
    let gi = g.inverse().expect("twist carries its inverse").clone();
    let gi2 = compose_with_cap(&gi, &gi, cap)?;
    let r_inv = super::builders::build_rotation(&-params.t1.clone(), &-params.t2.clone());
    Ok(compose_with_cap(&gi2, &r_inv, cap)?)
}
