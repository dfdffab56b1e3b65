//! Report assembly and rendering. The canonical byte form strips wall-clock
//! fields so that reports from runs with different worker counts compare
//! bitwise equal.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-infeasible")]
    SkippedInfeasible,
    #[serde(rename = "skipped-inapplicable")]
    SkippedInapplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::SkippedInfeasible => "skipped-infeasible",
            Verdict::SkippedInapplicable => "skipped-inapplicable",
        }
    }

    pub fn is_skip(self) -> bool {
        matches!(self, Verdict::SkippedInfeasible | Verdict::SkippedInapplicable)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub paper_eq: String,
    pub n: usize,
    pub residual_abs: f64,
    pub residual_rel: f64,
    pub scale: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub wall_ms: u64,
}

/// A named judgement where the listing and the measurement disagree; the
/// measured value decides, the note records both readings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Adjudication {
    pub id: String,
    pub n: usize,
    pub measured: f64,
    pub quoted: f64,
    pub adopted: f64,
    pub note: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn tally(results: &[CheckResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                _ => s.skipped += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub n: Vec<usize>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    pub adjudications: Vec<Adjudication>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// JSON with every wall_ms removed; used for determinism comparisons.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut value = serde_json::to_value(self).expect("report serializes");
        if let Some(checks) = value.get_mut("checks").and_then(|c| c.as_array_mut()) {
            for c in checks {
                if let Some(obj) = c.as_object_mut() {
                    obj.remove("wall_ms");
                }
            }
        }
        let mut bytes = serde_json::to_vec_pretty(&value).expect("report serializes");
        bytes.push(b'\n');
        bytes
    }

    /// Plain-text table, one row per (check, n).
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let ns = self
            .n
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",");
        writeln!(out, "identity catalogue verification  (n = {ns})").unwrap();
        writeln!(
            out,
            "{:<12} {:<10} {:>2}  {:>12} {:>12}  {:<21} {:>8}",
            "id", "eq", "n", "abs", "rel", "verdict", "ms"
        )
        .unwrap();
        let rule = "-".repeat(86);
        writeln!(out, "{rule}").unwrap();
        for c in &self.checks {
            if c.verdict.is_skip() {
                writeln!(
                    out,
                    "{:<12} {:<10} {:>2}  {:>12} {:>12}  {:<21} {:>8}",
                    c.id, c.paper_eq, c.n, "-", "-", c.verdict.as_str(), c.wall_ms
                )
                .unwrap();
            } else {
                writeln!(
                    out,
                    "{:<12} {:<10} {:>2}  {:>12.3e} {:>12.3e}  {:<21} {:>8}",
                    c.id,
                    c.paper_eq,
                    c.n,
                    c.residual_abs,
                    c.residual_rel,
                    c.verdict.as_str(),
                    c.wall_ms
                )
                .unwrap();
            }
        }
        writeln!(out, "{rule}").unwrap();
        writeln!(
            out,
            "pass {}  fail {}  skipped {}",
            self.summary.pass, self.summary.fail, self.summary.skipped
        )
        .unwrap();
        for a in &self.adjudications {
            writeln!(
                out,
                "adjudication {} (n={}): measured {:.6e}, quoted {:.6e}, adopted {:.6e}; {}",
                a.id, a.n, a.measured, a.quoted, a.adopted, a.note
            )
            .unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            version: "0.1.0".into(),
            n: vec![3],
            checks: vec![CheckResult {
                id: "C2".into(),
                paper_eq: "(2)".into(),
                n: 3,
                residual_abs: 1.1e-16,
                residual_rel: 2.8e-17,
                scale: 4.0,
                tolerance: 1e-9,
                verdict: Verdict::Pass,
                wall_ms: 7,
            }],
            summary: Summary {
                pass: 1,
                fail: 0,
                skipped: 0,
            },
            adjudications: vec![],
        }
    }

    #[test]
    fn canonical_bytes_ignore_wall_clock() {
        let a = sample();
        let mut b = sample();
        b.checks[0].wall_ms = 99_999;
        assert_eq!(a.canonical_bytes(), b.canonical_bytes());
        assert_ne!(a.to_json(), b.to_json());
    }

    #[test]
    fn json_round_trips() {
        let a = sample();
        let back: Report = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back.checks[0].id, "C2");
        assert_eq!(back.checks[0].verdict, Verdict::Pass);
        assert_eq!(back.summary, a.summary);
    }

    #[test]
    fn text_table_includes_every_row() {
        let txt = sample().to_text();
        assert!(txt.contains("C2"));
        assert!(txt.contains("pass 1  fail 0  skipped 0"));
    }
}
