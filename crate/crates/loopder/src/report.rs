//! Machine (JSON) and human renderings of a [`VerificationReport`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use loopder_core::{Matrix, VerificationReport};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisJson {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertionJson {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// The report schema written by `--json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub claim: String,
    pub hypotheses: Vec<HypothesisJson>,
    pub dimensions: BTreeMap<String, usize>,
    pub assertions: Vec<AssertionJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    pub verdict: String,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        ReportJson {
            claim: r.claim.clone(),
            hypotheses: r.hypotheses.iter().map(|h| HypothesisJson { name: h.name.clone(), pass: h.pass }).collect(),
            dimensions: r.dimensions.clone(),
            assertions: r
                .assertions
                .iter()
                .map(|a| AssertionJson { name: a.name.clone(), pass: a.pass, witness: a.witness.clone() })
                .collect(),
            values: r.values.clone(),
            verdict: if r.verdict() { "pass".into() } else { "fail".into() },
        }
    }
}

pub fn to_json(r: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(&ReportJson::from(r)).expect("report serializes");
    s.push('\n');
    s
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn to_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "claim: {}", r.claim);
    if !r.hypotheses.is_empty() {
        out.push_str("hypotheses:\n");
        for h in &r.hypotheses {
            let _ = writeln!(out, "  {} {}", mark(h.pass), h.name);
        }
    }
    if !r.dimensions.is_empty() {
        out.push_str("dimensions:\n");
        for (k, v) in &r.dimensions {
            let _ = writeln!(out, "  dim {k} = {v}");
        }
    }
    if !r.assertions.is_empty() {
        out.push_str("assertions:\n");
        for a in &r.assertions {
            match &a.witness {
                Some(w) => {
                    let _ = writeln!(out, "  {} {} (witness: {w})", mark(a.pass), a.name);
                }
                None => {
                    let _ = writeln!(out, "  {} {}", mark(a.pass), a.name);
                }
            }
        }
    }
    if !r.values.is_empty() {
        out.push_str("values:\n");
        for (k, v) in &r.values {
            let _ = writeln!(out, "  {k} = {v}");
        }
    }
    let _ = writeln!(out, "verdict: {}", mark(r.verdict()));
    out
}

/// `[[a, b], [c, d]]` with scalar literals.
pub fn matrix_literal(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = m.row(r).iter().map(|c| c.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}
