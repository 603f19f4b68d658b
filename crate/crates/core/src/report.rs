//! Rendering of sweep reports and the zoo listing as CSV, JSON and text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::sweep::{SweepReport, VERDICT_ORDER};
use crate::zoo::ZooEntry;

pub const CSV_HEADER: &str = "h,mu,lambda,c_trunc,quad_error,gb_residual";

/// `x` with 6 significant digits, trailing zeros dropped, in the style of
/// C's `%g`.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        return format!("{m}e{exp}");
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Full-precision CSV: one row per sample, 17 significant digits.
pub fn render_csv(report: &SweepReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in &report.samples {
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.h,
            s.mu,
            s.lambda,
            s.c_trunc,
            s.quad_error,
            report.gb_residual(s)
        );
    }
    out
}

pub fn render_json(report: &SweepReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<SweepReport, serde_json::Error> {
    serde_json::from_str(text)
}

fn header(report: &SweepReport) -> String {
    let l = match (&report.l_estimate, report.l_error) {
        (crate::sweep::Reported::Value(v), Some(e)) => format!("{} +- {}", sig6(*v), sig6(e)),
        (l, _) => fmt_reported(l),
    };
    format!(
        "surface {}  chi = {}  h1 = {}  L = {}  c_total = {}\n",
        report.surface,
        report.chi,
        fmt_reported(&report.h1),
        l,
        fmt_reported(&report.c_total)
    )
}

fn fmt_reported(r: &crate::sweep::Reported) -> String {
    match r {
        crate::sweep::Reported::Value(v) => sig6(*v),
        crate::sweep::Reported::Label(s) => s.clone(),
    }
}

fn opt6(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), sig6)
}

/// The verdict table alone: identity, status, residual, bound, note.
pub fn render_verdict_table(report: &SweepReport) -> String {
    let mut out = header(report);
    let _ = writeln!(
        out,
        "{:<24} {:<15} {:>12} {:>12}  note",
        "identity", "status", "residual", "bound"
    );
    for name in VERDICT_ORDER {
        if let Some(v) = report.verdicts.get(name) {
            let _ = writeln!(
                out,
                "{:<24} {:<15} {:>12} {:>12}  {}",
                name,
                v.status.to_string(),
                opt6(v.residual),
                opt6(v.bound),
                v.note
            );
        }
    }
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

/// Samples and verdicts with 6 significant digits.
pub fn render_human(report: &SweepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "h", "mu", "lambda", "c_trunc", "quad_error", "gb_residual"
    );
    for s in &report.samples {
        let _ = writeln!(
            out,
            "{:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
            sig6(s.h),
            sig6(s.mu),
            sig6(s.lambda),
            sig6(s.c_trunc),
            sig6(s.quad_error),
            sig6(report.gb_residual(s))
        );
    }
    out.push('\n');
    out.push_str(&render_verdict_table(report));
    out
}

/// One zoo entry in the listing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ListRecord {
    pub name: String,
    pub chi: i64,
    pub hypothesis_holds: bool,
    pub c_total: f64,
}

pub fn list_records(entries: &[ZooEntry]) -> Vec<ListRecord> {
    entries
        .iter()
        .map(|e| ListRecord {
            name: e.model.name.clone(),
            chi: e.oracle.chi,
            hypothesis_holds: e.oracle.hypothesis_holds,
            c_total: e.oracle.c_total(),
        })
        .collect()
}

pub fn render_list_human(records: &[ListRecord]) -> String {
    records
        .iter()
        .map(|r| {
            format!(
                "{} chi={} hypothesis={} c_total={}\n",
                r.name,
                r.chi,
                r.hypothesis_holds,
                sig6(r.c_total)
            )
        })
        .collect()
}

pub fn render_list_json(records: &[ListRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}
