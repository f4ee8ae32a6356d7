//! Result files and text tables. Floats are written with 17 significant digits so that
//! output is byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;

use crate::engine::{PairingResult, RegulatorStep};
use crate::real::C;

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn key(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn pair(c: C<f64>) -> String {
    format!("[{}, {}]", num(c.re), num(c.im))
}

fn coefficient_block(out: &mut String, coeffs: &[(String, C<f64>)], indent: &str) {
    out.push('{');
    for (i, (k, c)) in coeffs.iter().enumerate() {
        let sep = if i == 0 { "" } else { "," };
        let _ = write!(out, "{sep}\n{indent}  {}: {}", key(k), pair(*c));
    }
    if !coeffs.is_empty() {
        let _ = write!(out, "\n{indent}");
    }
    out.push('}');
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_else(|| "null".to_string())
}

fn trace_block(out: &mut String, trace: &[RegulatorStep]) {
    out.push('[');
    for (i, s) in trace.iter().enumerate() {
        let sep = if i == 0 { "" } else { "," };
        let _ = write!(
            out,
            "{sep}\n      {{\"epsilon\": {}, \"radius\": {}, \"terms\": {}, \"coefficients\": ",
            num(s.epsilon),
            num(s.radius),
            s.terms
        );
        coefficient_block(out, &s.coefficients, "      ");
        out.push('}');
    }
    if !trace.is_empty() {
        out.push_str("\n    ");
    }
    out.push(']');
}

/// The result document `{coefficients, diagnostics}`.
pub fn pairing_json(r: &PairingResult) -> String {
    let d = &r.diagnostics;
    let mut out = String::from("{\n  \"coefficients\": ");
    coefficient_block(&mut out, &r.coefficients, "  ");
    out.push_str(",\n  \"diagnostics\": {\n");
    let mut fields: Vec<(String, String)> = vec![
        ("mode".into(), key(d.mode.name())),
        ("precision".into(), key(d.precision)),
        ("truncation".into(), d.truncation.to_string()),
        ("terms_summed".into(), r.terms_summed.to_string()),
        ("tail_bound".into(), num(r.tail_bound)),
        ("tolerance".into(), num(d.tolerance)),
        ("converged".into(), d.converged.to_string()),
        ("radius".into(), num(d.radius)),
        ("shell_ratio".into(), opt(d.shell_ratio)),
        ("raw_tail".into(), opt(d.raw_tail)),
        ("probe_radius".into(), opt(d.probe_radius)),
        ("accelerated".into(), d.accelerated.to_string()),
        ("rounding".into(), num(d.rounding)),
        ("dim_moduli".into(), d.dim_moduli.to_string()),
        ("center_order".into(), d.center_order.to_string()),
    ];
    let ext = match &d.extrapolation {
        None => "null".to_string(),
        Some(e) => {
            let nodes: Vec<String> = e.nodes.iter().map(|&x| num(x)).collect();
            let terms: Vec<String> = e.terms.iter().map(|t| t.to_string()).collect();
            format!(
                "{{\"variable\": {}, \"nodes\": [{}], \"terms\": [{}], \"error\": {}}}",
                key(e.variable),
                nodes.join(", "),
                terms.join(", "),
                num(e.error)
            )
        }
    };
    fields.push(("extrapolation".into(), ext));
    let mut trace = String::new();
    trace_block(&mut trace, &r.regulator_trace);
    fields.push(("regulator_trace".into(), trace));
    for (i, (k, v)) in fields.iter().enumerate() {
        let sep = if i + 1 == fields.len() { "" } else { "," };
        let _ = writeln!(out, "    {}: {v}{sep}", key(k));
    }
    out.push_str("  }\n}\n");
    out
}

/// Schema of emitted result files.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub coefficients: BTreeMap<String, [f64; 2]>,
    pub diagnostics: ResultDiagnostics,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDiagnostics {
    pub mode: String,
    pub precision: String,
    pub truncation: u32,
    pub terms_summed: u64,
    pub tail_bound: f64,
    pub tolerance: f64,
    pub converged: bool,
    pub radius: f64,
    pub shell_ratio: Option<f64>,
    pub raw_tail: Option<f64>,
    pub probe_radius: Option<f64>,
    pub accelerated: bool,
    pub rounding: f64,
    pub dim_moduli: i64,
    pub center_order: u64,
    pub extrapolation: Option<ResultExtrapolation>,
    pub regulator_trace: Vec<ResultStep>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultExtrapolation {
    pub variable: String,
    pub nodes: Vec<f64>,
    pub terms: Vec<u64>,
    pub error: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultStep {
    pub epsilon: f64,
    pub radius: f64,
    pub terms: u64,
    pub coefficients: BTreeMap<String, [f64; 2]>,
}

pub fn parse_result(text: &str) -> serde_json::Result<ResultFile> {
    serde_json::from_str(text)
}

/// Left-aligned first column, right-aligned others.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let n = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate().take(n) {
            width[i] = width[i].max(c.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { format!("{c:<w$}", w = width[i]) } else { format!("{c:>w$}", w = width[i]) })
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    out.push_str(&line(width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect()));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.iter().map(|s| s.as_str()).collect()));
        out.push('\n');
    }
    out
}

pub fn pairing_table(r: &PairingResult) -> String {
    let rows: Vec<Vec<String>> = r.coefficients.iter().map(|(k, c)| vec![k.clone(), num(c.re), num(c.im)]).collect();
    let mut out = table(&["monomial", "re", "im"], &rows);
    let d = &r.diagnostics;
    let _ = writeln!(
        out,
        "\nmode {}  terms {}  tail bound {}  converged {}{}",
        d.mode.name(),
        r.terms_summed,
        num(r.tail_bound),
        d.converged,
        if d.accelerated { "  (extrapolated)" } else { "" }
    );
    out
}
