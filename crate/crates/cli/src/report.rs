//! Deterministic report emission.
//!
//! JSON objects serialize with sorted keys (the default map in
//! serde_json); every non-integral float is rewritten as a fixed
//! `%.12e` string so reports from identical inputs are byte-identical.
//! Wall-clock data lives only under the `timings` key, which consumers
//! comparing runs are expected to strip.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

pub fn fmt_float(x: f64) -> String {
    format!("{x:.12e}")
}

/// Rewrites every non-integral JSON number into its `%.12e` string form.
pub fn canonicalize_floats(value: Value) -> Value {
    match value {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.is_f64() {
                    return Value::String(fmt_float(f));
                }
            }
            Value::Number(n)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize_floats).collect()),
        Value::Object(map) => {
            let mut out = Map::new();
            for (k, v) in map {
                out.insert(k, canonicalize_floats(v));
            }
            Value::Object(out)
        }
        other => other,
    }
}

pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub verdicts: Value,
    pub elapsed_seconds: f64,
}

impl RunReport {
    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": canonicalize_floats(self.parameters.clone()),
            "results": canonicalize_floats(self.results.clone()),
            "verdicts": canonicalize_floats(self.verdicts.clone()),
            "timings": { "elapsed_seconds": self.elapsed_seconds },
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("report serializes")
    }

    /// Writes to `path`, or stdout when no path is given.
    pub fn emit(&self, path: Option<&Path>) -> std::io::Result<()> {
        let body = self.to_json_string();
        match path {
            Some(p) => fs::write(p, body + "\n"),
            None => {
                let mut out = std::io::stdout().lock();
                writeln!(out, "{body}")
            }
        }
    }
}

/// Orbit CSV: `step,phi1,phi2,lift1,lift2`.
pub fn orbit_csv(record: &biratio_core::dynamics::OrbitRecord) -> String {
    let mut out = String::from("step,phi1,phi2,lift1,lift2\n");
    for (k, lift) in record.lifts.iter().enumerate() {
        let p = record.point_at(k);
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            k,
            fmt_float(p.phi1),
            fmt_float(p.phi2),
            fmt_float(lift[0]),
            fmt_float(lift[1]),
        ));
    }
    out
}

/// Probe CSV: per-step worst-case envelope across seeds and both time
/// directions: `step,abs_im_x,abs_im_y,dist_to_ind`.
pub fn probe_csv(report: &biratio_core::dynamics::ProbeReport) -> String {
    let mut out = String::from("step,abs_im_x,abs_im_y,dist_to_ind\n");
    for (k, row) in report.envelope.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            k,
            fmt_float(row[0]),
            fmt_float(row[1]),
            fmt_float(row[2]),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_become_fixed_strings() {
        let v = json!({"a": 0.5, "b": 3, "c": [1.25, "x"]});
        let c = canonicalize_floats(v);
        assert_eq!(c["a"], Value::String("5.000000000000e-1".into()));
        assert_eq!(c["b"], json!(3));
        assert_eq!(c["c"][0], Value::String("1.250000000000e0".into()));
    }

    #[test]
    fn keys_are_sorted() {
        let r = RunReport {
            command: "t".into(),
            parameters: json!({"zeta": 1, "alpha": 2}),
            results: json!({}),
            verdicts: json!({}),
            elapsed_seconds: 0.0,
        };
        let s = r.to_json_string();
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert!(s.find("\"command\"").unwrap() < s.find("\"version\"").unwrap());
    }
}
