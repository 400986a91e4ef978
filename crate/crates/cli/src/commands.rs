//! Subcommand orchestration.
//!
//! Exit codes: 0 on success, 2 when a verdict fails (an indeterminacy
//! overlap, a fixed-point census contradicting the Euler characteristic,
//! a verification stage failure), 1 on usage or runtime errors.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use biratio_core::dynamics::{
    complex_probe, diophantine_check, fixed_point_census, orbit, rotation_vector, TorusPoint,
};
use biratio_core::exact::rational::parse_rational;
use biratio_core::family::builders::{build_family_map, FamilyParams};
use biratio_core::family::fraction::build_fraction;
use biratio_core::family::verify::{build_family_inverse, verify_theorem, VerifyOptions};
use biratio_core::maps::{
    degree_sequence, ind_disjoint, indeterminacy_set, xie_from_matrices, xie_lower_bound,
    AmpleClass, BidegreeMatrix, DisjointnessCertificate, IndPoint, StabilityEvidence, SurfaceMap,
    XieOutcome,
};

use crate::expr::parse_map;
use crate::report::{fmt_float, orbit_csv, probe_csv, RunReport};

pub const DEFAULT_DEGREE_CAP: u64 = 512;

fn degree_cap() -> u64 {
    std::env::var("BIRATIO_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_DEGREE_CAP)
}

#[derive(Parser)]
#[command(
    name = "biratio",
    version,
    about = "Workbench for birational self-maps of P1 x P1: exact degree-growth certificates, indeterminacy loci, and torus dynamics"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// write orbit/probe CSV data here
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// family instance as `n,d,t1,t2` with rational tangents
    #[arg(long)]
    family: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full verification pipeline for a family instance
    Verify {
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, default_value = "1/3")]
        t1: String,
        #[arg(long, default_value = "2/5")]
        t2: String,
        /// record a Diophantine scan for this angle pair `a1,a2`
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 2.0)]
        beta: f64,
        #[arg(long, default_value_t = 50)]
        kmax: i64,
    },
    /// Degree-growth certificate for the family map at a given d
    Xie {
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, default_value = "1/3")]
        t1: String,
        #[arg(long, default_value = "2/5")]
        t2: String,
        /// skip symbolic composition; justify stability through the exact
        /// family certificate
        #[arg(long)]
        matrix_only: bool,
    },
    /// Indeterminacy locus (and disjointness when an inverse is known)
    Ind {
        /// map literal `(expr1, expr2)` or a file containing one
        #[arg(long, conflicts_with = "family")]
        map: Option<String>,
        /// explicit inverse for `--map`
        #[arg(long, requires = "map")]
        inverse: Option<String>,
        #[arg(long)]
        family: Option<String>,
    },
    /// Bidegree matrices of the first iterates by explicit composition
    Degrees {
        #[arg(long)]
        map: String,
        #[arg(long)]
        iters: u32,
    },
    /// Torus orbit with continuous lift and rotation vector
    Orbit {
        #[command(flatten)]
        family: FamilyArgs,
        /// starting angles `phi1,phi2`
        #[arg(long)]
        seed: String,
        #[arg(long)]
        steps: usize,
    },
    /// Fixed-point census against the Euler characteristic
    FixedPoints {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 32)]
        grid: u32,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Finite-range Diophantine scan
    Dioph {
        /// angle pair `a1,a2`
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 2.0)]
        beta: f64,
        #[arg(long, default_value_t = 100)]
        kmax: i64,
    },
    /// Complex-neighborhood probe around the real locus
    Probe {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        offset: f64,
        #[arg(long, default_value_t = 100)]
        seeds: usize,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message (also for --help/--version)
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn parse_family_spec(spec: &str) -> Result<FamilyParams, String> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("--family expects `n,d,t1,t2`, got {spec:?}"));
    }
    let n: u64 = parts[0].trim().parse().map_err(|_| format!("bad n in {spec:?}"))?;
    let d: u64 = parts[1].trim().parse().map_err(|_| format!("bad d in {spec:?}"))?;
    let t1 = parse_rational(parts[2]).map_err(|e| format!("bad t1: {e}"))?;
    let t2 = parse_rational(parts[3]).map_err(|e| format!("bad t2: {e}"))?;
    Ok(FamilyParams::new(n, d, t1, t2))
}

fn parse_pair_f64(spec: &str, what: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("{what} expects `a,b`, got {spec:?}"));
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| format!("bad {what}: {spec:?}"))?;
    let b: f64 = parts[1].trim().parse().map_err(|_| format!("bad {what}: {spec:?}"))?;
    Ok((a, b))
}

/// `--map` arguments are inline literals, or paths to files holding one.
fn load_map_text(arg: &str) -> Result<String, String> {
    let trimmed = arg.trim();
    if trimmed.starts_with('(') {
        return Ok(trimmed.to_string());
    }
    let path = Path::new(trimmed);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|e| format!("reading {trimmed:?}: {e}"));
    }
    Ok(trimmed.to_string())
}

fn build_family_with_inverse(params: &FamilyParams, cap: u64) -> Result<SurfaceMap, String> {
    let f = build_family_map(params, Some(cap)).map_err(|e| e.to_string())?;
    if f.inverse().is_some() {
        Ok(f)
    } else {
        let inv = build_family_inverse(params, Some(cap)).map_err(|e| e.to_string())?;
        Ok(f.with_inverse(inv))
    }
}

fn ind_point_value(p: &IndPoint) -> serde_json::Value {
    let coord = |c: &biratio_core::maps::PointCoord| match c.as_complex() {
        Some(z) => json!({ "re": fmt_float(z.re), "im": fmt_float(z.im) }),
        None => json!("inf"),
    };
    json!({
        "x": coord(&p.x),
        "y": coord(&p.y),
        "radius": fmt_float(p.radius),
        "exact": p.exact,
    })
}

fn matrix_value(m: &BidegreeMatrix) -> serde_json::Value {
    json!([
        [m.entry(0, 0).to_string(), m.entry(0, 1).to_string()],
        [m.entry(1, 0).to_string(), m.entry(1, 1).to_string()],
    ])
}

fn xie_value(outcome: &XieOutcome) -> (serde_json::Value, serde_json::Value) {
    match outcome {
        XieOutcome::Certified { deg_f, deg_f2, bound_squared, bound_enclosure, stability } => (
            json!({
                "deg_L_f": deg_f,
                "deg_L_f2": deg_f2,
                "lambda_lower_bound_squared": bound_squared,
                "lambda_lower_bound_enclosure": [bound_enclosure.0, bound_enclosure.1],
                "stability": serde_json::to_value(stability).unwrap(),
                "statement": "lambda_lower_bound > 1",
            }),
            json!({ "certified": true, "verdict": "lambda(f) > 1" }),
        ),
        XieOutcome::Inconclusive { deg_f, deg_f2, ratio_squared_enclosure, stability } => (
            json!({
                "deg_L_f": deg_f,
                "deg_L_f2": deg_f2,
                "ratio_squared_over_C_squared_enclosure":
                    [ratio_squared_enclosure.0, ratio_squared_enclosure.1],
                "stability": serde_json::to_value(stability).unwrap(),
            }),
            json!({ "certified": false, "verdict": "inconclusive" }),
        ),
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    let started = Instant::now();
    let out_path = cli.out.clone();
    let csv_path = cli.csv.clone();
    let cap = degree_cap();
    let mut exit = 0i32;
    let report = match cli.command {
        Cmd::Verify { n, d, t1, t2, alpha, beta, kmax } => {
            let t1 = parse_rational(&t1).map_err(|e| e.to_string())?;
            let t2 = parse_rational(&t2).map_err(|e| e.to_string())?;
            let params = FamilyParams::new(n, d, t1, t2);
            let dioph = match alpha {
                Some(spec) => {
                    let (a1, a2) = parse_pair_f64(&spec, "--alpha")?;
                    Some((a1, a2, beta, kmax))
                }
                None => {
                    let (a1, a2) = params.angles();
                    Some((a1, a2, beta, kmax))
                }
            };
            let options = VerifyOptions { degree_cap: cap, diophantine: dioph, ..VerifyOptions::default() };
            let report = verify_theorem(&params, &options);
            if !report.ok {
                exit = 2;
            }
            let value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
            RunReport {
                command: "verify".into(),
                parameters: json!({
                    "n": n, "d": d,
                    "t1": report.t1, "t2": report.t2,
                    "beta": beta, "kmax": kmax,
                }),
                results: value,
                verdicts: json!({
                    "ok": report.ok,
                    "disjoint": report.disjoint,
                    "all_ind_nonreal": report.all_ind_nonreal,
                    "xie_certified": report.xie.is_certified(),
                }),
                elapsed_seconds: started.elapsed().as_secs_f64(),
            }
        }
        Cmd::Xie { d, n, t1, t2, matrix_only } => {
            let t1 = parse_rational(&t1).map_err(|e| e.to_string())?;
            let t2 = parse_rational(&t2).map_err(|e| e.to_string())?;
            let class = AmpleClass::eigenclass(d);
            let (outcome, path) = if matrix_only {
                // the stability identity (f^2)* = (f*)^2 is justified by the
                // exact structure certificates on the defining fraction
                let fraction = build_fraction(n, d).map_err(|e| e.to_string())?;
                debug_assert!(fraction.coprime && fraction.pole_reversal_stable);
                let a = BidegreeMatrix::new(2 * d, 1, 1, 0);
                (
                    xie_from_matrices(
                        &a.pow(2),
                        &a.pow(4),
                        &class,
                        StabilityEvidence::DisjointnessCertificate,
                    ),
                    "matrix",
                )
            } else {
                let params = FamilyParams::new(n, d, t1, t2);
                let f = build_family_map(&params, Some(cap)).map_err(|e| {
                    format!("{e}; retry with --matrix-only for large d")
                })?;
                (
                    xie_lower_bound(&f.without_inverse(), &class, Some(cap))
                        .map_err(|e| e.to_string())?,
                    "symbolic",
                )
            };
            let (results, verdicts) = xie_value(&outcome);
            let mut results = results;
            results["path"] = json!(path);
            RunReport {
                command: "xie".into(),
                parameters: json!({ "d": d, "n": n, "matrix_only": matrix_only }),
                results,
                verdicts,
                elapsed_seconds: started.elapsed().as_secs_f64(),
            }
        }
        Cmd::Ind { map, inverse, family } => {
            let f = match (&map, &family) {
                (Some(text), None) => {
                    let mut f = parse_map(&load_map_text(text)?).map_err(|e| e.to_string())?;
                    if let Some(inv_text) = &inverse {
                        let inv =
                            parse_map(&load_map_text(inv_text)?).map_err(|e| e.to_string())?;
                        f = f.with_inverse(inv);
                    }
                    f
                }
                (None, Some(spec)) => {
                    let params = parse_family_spec(spec)?;
                    build_family_with_inverse(&params, cap)?
                }
                _ => return Err("ind needs exactly one of --map or --family".into()),
            };
            let ind = indeterminacy_set(&f).map_err(|e| e.to_string())?;
            let points: Vec<_> = ind.points.iter().map(ind_point_value).collect();
            let disjointness = if f.inverse().is_some() {
                let cert = ind_disjoint(&f).map_err(|e| e.to_string())?;
                match &cert {
                    DisjointnessCertificate::Disjoint { pairs_checked } => {
                        json!({ "verdict": "disjoint", "pairs_checked": pairs_checked })
                    }
                    DisjointnessCertificate::Overlap { points } => {
                        exit = 2;
                        json!({
                            "verdict": "overlap",
                            "points": points.iter().map(ind_point_value).collect::<Vec<_>>(),
                        })
                    }
                }
            } else {
                json!("not checked: no inverse supplied")
            };
            RunReport {
                command: "ind".into(),
                parameters: json!({ "map": map, "family": family }),
                results: json!({
                    "points": points,
                    "count": ind.points.len(),
                    "min_dist_from_real": ind.min_dist_from_real().map(fmt_float),
                    "disjointness": disjointness,
                }),
                verdicts: json!({ "overlap": exit == 2 }),
                elapsed_seconds: started.elapsed().as_secs_f64(),
            }
        }
        Cmd::Degrees { map, iters } => {
            let f = parse_map(&load_map_text(&map)?).map_err(|e| e.to_string())?;
            let seq = degree_sequence(&f, iters.max(1), Some(cap)).map_err(|e| e.to_string())?;
            let matrices: Vec<_> = seq.matrices.iter().map(matrix_value).collect();
            RunReport {
                command: "degrees".into(),
                parameters: json!({ "map": map, "iters": iters }),
                results: json!({
                    "matrices": matrices,
                    "growth_estimate": fmt_float(seq.growth_estimate),
                }),
                verdicts: json!({}),
                elapsed_seconds: started.elapsed().as_secs_f64(),
            }
        }
        Cmd::Orbit { family, seed, steps } => {
            let params = parse_family_spec(&family.family)?;
            let f = build_family_map(&params, Some(cap)).map_err(|e| e.to_string())?;
            let (p1, p2) = parse_pair_f64(&seed, "--seed")?;
            let record =
                orbit(&f, TorusPoint::new(p1, p2), steps).map_err(|e| e.to_string())?;
            let (rho, err) = rotation_vector(&record);
            if let Some(csv) = &csv_path {
                std::fs::write(csv, orbit_csv(&record)).map_err(|e| e.to_string())?;
            }
            RunReport {
                command: "orbit".into(),
                parameters: json!({ "family": family.family, "seed": seed, "steps": steps }),
                results: json!({
                    "rotation_vector": [fmt_float(rho.0), fmt_float(rho.1)],
                    "rotation_vector_error": [fmt_float(err.0), fmt_float(err.1)],
                    "min_margin": fmt_float(record.min_margin),
                }),
                verdicts: json!({}),
                elapsed_seconds: started.elapsed().as_secs_f64(),
            }
        }
        Cmd::FixedPoints { family, grid, tol } => {
            let params = parse_family_spec(&family.family)?;
            let f = build_family_map(&params, Some(cap)).map_err(|e| e.to_string())?;
            let report = fixed_point_census(&f, grid, tol).map_err(|e| e.to_string())?;
            if !report.euler_characteristic_match || report.positive_det_violations > 0 {
                exit = 2;
            }
            let value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
            RunReport {
                command: "fixed-points".into(),
                parameters: json!({ "family": family.family, "grid": grid, "tol": fmt_float(tol) }),
                results: value,
                verdicts: json!({
                    "euler_characteristic_match": report.euler_characteristic_match,
                    "positive_det_violations": report.positive_det_violations,
                }),
                elapsed_seconds: started.elapsed().as_secs_f64(),
            }
        }
        Cmd::Dioph { alpha, beta, kmax } => {
            let (a1, a2) = parse_pair_f64(&alpha, "--alpha")?;
            let report = diophantine_check((a1, a2), beta, kmax);
            let value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
            RunReport {
                command: "dioph".into(),
                parameters: json!({ "alpha": alpha, "beta": fmt_float(beta), "kmax": kmax }),
                results: value,
                verdicts: json!({ "exact_resonance": report.exact_resonance }),
                elapsed_seconds: started.elapsed().as_secs_f64(),
            }
        }
        Cmd::Probe { family, offset, seeds, steps } => {
            let params = parse_family_spec(&family.family)?;
            let f = build_family_with_inverse(&params, cap)?;
            let mut ind_points = indeterminacy_set(&f).map_err(|e| e.to_string())?.points;
            ind_points
                .extend(indeterminacy_set(f.inverse().unwrap()).map_err(|e| e.to_string())?.points);
            let report =
                complex_probe(&f, &ind_points, offset, seeds, steps).map_err(|e| e.to_string())?;
            if let Some(csv) = &csv_path {
                std::fs::write(csv, probe_csv(&report)).map_err(|e| e.to_string())?;
            }
            let unbounded = report.outcomes.iter().filter(|o| !o.bounded).count();
            RunReport {
                command: "probe".into(),
                parameters: json!({
                    "family": family.family,
                    "offset": fmt_float(offset),
                    "seeds": seeds,
                    "steps": steps,
                }),
                results: json!({
                    "all_bounded": report.all_bounded,
                    "unbounded_seeds": unbounded,
                    "max_log_drift": fmt_float(report.max_log_drift),
                    "min_ind_distance": fmt_float(report.min_ind_distance),
                    "note": "heuristic evidence only; boundedness here proves nothing",
                }),
                verdicts: json!({ "all_bounded": report.all_bounded }),
                elapsed_seconds: started.elapsed().as_secs_f64(),
            }
        }
    };
    report.emit(out_path.as_deref()).map_err(|e| e.to_string())?;
    Ok(exit)
}
