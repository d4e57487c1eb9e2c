//! Human-readable report rendering. Text reports carry the same numeric
//! content as the JSON forms.

use std::fmt::Write;

use qpi_core::error::Result;
use qpi_core::geometry::IntersectionReport;
use qpi_core::isotropy::{ConstraintPath, IsotropyResult, RealizabilityVerdict};
use qpi_core::scalar::QSpec;
use qpi_core::torus::{Classification, GroupReport, TorsionPoint};

fn spec_text(spec: &QSpec) -> String {
    match spec {
        QSpec::Transcendental => "transcendental".into(),
        QSpec::RootOfUnity(n) => format!("primitive root of unity of order {n}"),
    }
}

fn structure_text(report: &GroupReport) -> String {
    let (d1, d2) = report.invariants;
    let torsion = match (d1, d2) {
        (1, _) => "trivial".to_string(),
        (d1, 1) => format!("Z_{d1}"),
        (d1, d2) => format!("Z_{d1} + Z_{d2}"),
    };
    match report.classification {
        Classification::FullTorus => "k* x k* (the full torus)".into(),
        Classification::Infinite => {
            if d1 == 1 {
                "k* (a 1-torus)".to_string()
            } else {
                format!("{torsion} x k*")
            }
        }
        Classification::Finite => torsion,
    }
}

fn points_line(points: &[TorsionPoint]) -> String {
    points
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn group_report_text(report: &GroupReport) -> Result<String> {
    let mut out = String::new();
    let class = match report.classification {
        Classification::FullTorus => "full torus",
        Classification::Infinite => "infinite",
        Classification::Finite => "finite",
    };
    let _ = writeln!(out, "classification: {class}");
    let _ = writeln!(out, "structure:      {}", structure_text(report));
    let _ = writeln!(out, "torus rank:     {}", report.torus_rank);
    let _ = writeln!(
        out,
        "invariants:     ({}, {})",
        report.invariants.0, report.invariants.1
    );
    if let Some(order) = report.order {
        let _ = writeln!(out, "order:          {order}");
    }
    if let Some(c) = &report.primitive_character {
        let _ = writeln!(out, "primitive char: ({}, {})", c.m, c.n);
    }
    if !report.generators.is_empty() {
        let _ = writeln!(out, "generators:     {}", points_line(&report.generators));
    }
    if report.classification == Classification::Finite && report.order.is_some_and(|o| o <= 60) {
        let _ = writeln!(out, "elements:       {}", points_line(&report.elements()?));
    }
    Ok(out)
}

pub fn isotropy_text(result: &IsotropyResult) -> Result<String> {
    let mut out = String::new();
    let path = match result.path {
        ConstraintPath::InnerShortcut => "inner shortcut (constraints from w)",
        ConstraintPath::GeneralImages => "general images (constraints from dx, dy)",
    };
    let _ = writeln!(out, "path:           {path}");
    let constraints = if result.constraints.is_empty() {
        "(none)".to_string()
    } else {
        result
            .constraints
            .iter()
            .map(|c| format!("({}, {})", c.m, c.n))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = writeln!(out, "constraints:    {constraints}");
    out.push_str(&group_report_text(&result.report)?);
    Ok(out)
}

pub fn realize_text(n1: u64, n2: u64, verdict: &RealizabilityVerdict) -> String {
    let mut out = String::new();
    let status = serde_json::to_value(verdict.status)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    let _ = writeln!(out, "target group:   Z_{n1} + Z_{n2}");
    let _ = writeln!(out, "status:         {status}");
    let _ = writeln!(out, "reason:         {}", verdict.reason);
    if let Some(w) = &verdict.witness {
        let _ = writeln!(out, "witness:        w = {w}");
    }
    if let Some(report) = &verdict.verified {
        let _ = writeln!(
            out,
            "verified:       invariants ({}, {}), order {}",
            report.invariants.0,
            report.invariants.1,
            report.order.unwrap_or(0)
        );
    }
    out
}

pub fn intersect_text(a: u64, b: u64, c: u64, d: u64, report: &IntersectionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "curves:         x^{a} y^{b} = 1 and x^{c} y^{d} = 1 (degrees {}, {})",
        report.degrees.0, report.degrees.1
    );
    let _ = writeln!(out, "total:          {}", report.ledger.total);
    let _ = writeln!(out, "affine:         {}", report.ledger.affine);
    let _ = writeln!(out, "at (0:1:0):     {}", report.ledger.at010);
    let _ = writeln!(out, "at (1:0:0):     {}", report.ledger.at100);
    let bd = &report.branch_decomposition;
    let _ = writeln!(
        out,
        "branches:       d1 = {}, d2 = {}, primed exponents ({}, {}, {}, {})",
        bd.d1, bd.d2, bd.primed.0, bd.primed.1, bd.primed.2, bd.primed.3
    );
    let _ = writeln!(out, "affine group:   {}", structure_text(&report.group));
    if report.points.len() <= 60 {
        let _ = writeln!(out, "points:         {}", points_line(&report.points));
    }
    out
}

pub fn distinguish_text(q1: &QSpec, q2: &QSpec, witness: Option<u64>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "q1: {}", spec_text(q1));
    let _ = writeln!(out, "q2: {}", spec_text(q2));
    match witness {
        Some(n) => {
            let (first, second) = match (q1, q2) {
                (_, QSpec::RootOfUnity(m)) if n % m == 0 && !q1.q_power_is_one(n as i64) => {
                    ("q1", "q2")
                }
                _ => ("q2", "q1"),
            };
            let _ = writeln!(
                out,
                "witness:        n = {n} ({first}^{n} != 1 while {second}^{n} = 1)"
            );
            let _ = writeln!(
                out,
                "conclusion:     the two quantum planes are not isomorphic"
            );
        }
        None => {
            let _ = writeln!(out, "witness:        none");
            let _ = writeln!(
                out,
                "conclusion:     no distinguishing exponent exists for this pair"
            );
        }
    }
    out
}
