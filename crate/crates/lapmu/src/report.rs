//! Verification report renderers: `CHECK <id> <status> <details>` lines and
//! a JSON document with the same content.

use std::fmt::Write as _;

use lapmu_core::VerificationReport;
use serde_json::{json, Value};

use crate::format::g17;

pub fn render_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    writeln!(out, "GRAPH n={} edges={}", report.n, report.edges).unwrap();
    for c in &report.checks {
        let measured: Vec<String> = c
            .measured
            .iter()
            .map(|m| format!("{}={}", m.label, g17(m.value)))
            .collect();
        write!(
            out,
            "CHECK {} {} {} | {}",
            c.id.number(),
            c.status.as_str(),
            c.id.claim(),
            measured.join(" ")
        )
        .unwrap();
        if c.tolerance > 0.0 {
            write!(out, " | tol={}", g17(c.tolerance)).unwrap();
        }
        if !c.details.is_empty() {
            write!(out, " | {}", c.details).unwrap();
        }
        out.push('\n');
    }
    writeln!(
        out,
        "RESULT {}",
        if report.all_passed() { "PASS" } else { "FAIL" }
    )
    .unwrap();
    out
}

fn number(v: f64) -> Value {
    // JSON has no infinity; the label already says which p a value belongs to
    if v.is_finite() {
        json!(v)
    } else {
        json!(g17(v))
    }
}

pub fn render_json(report: &VerificationReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "id": c.id.number(),
                "claim": c.id.claim(),
                "status": c.status.as_str(),
                "tolerance": c.tolerance,
                "measured": c.measured.iter().map(|m| json!({
                    "label": m.label,
                    "value": number(m.value),
                })).collect::<Vec<_>>(),
                "details": c.details,
            })
        })
        .collect();
    json!({
        "graph": { "n": report.n, "edges": report.edges },
        "checks": checks,
        "all_passed": report.all_passed(),
    })
}
