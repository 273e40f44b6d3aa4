//! JSON values for library types, and the CSV and plot-data writers.

use std::io::Write;

use degseq_core::gallery::{ExpectedLaw, GalleryEntry, GalleryMap};
use degseq_core::growth::{Fit, GrowthReport, ThresholdReport};
use degseq_core::{DegreeSequence, Truncation};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::config::{RunConfig, SCHEMA_VERSION};

/// The top-level document every command emits.
pub fn envelope(config: &RunConfig, truncation: Option<Value>, result: Value) -> Value {
    json!({
        "schemaVersion": SCHEMA_VERSION,
        "command": config.command_name(),
        "config": config.to_json(),
        "field": config.field.to_string(),
        "partial": truncation.is_some(),
        "truncation": truncation,
        "result": result,
    })
}

pub fn truncation_json(t: &Truncation) -> Value {
    json!({ "at": t.at, "terms": t.terms, "cap": t.cap })
}

/// Budget overruns that carry no index: the run stopped somewhere inside.
pub fn overrun_json(terms: usize, cap: usize) -> Value {
    json!({ "at": null, "terms": terms, "cap": cap })
}

/// Integers as JSON numbers, everything else as the nearest float.
pub fn rational(r: &BigRational) -> Value {
    if r.is_integer() {
        if let Some(i) = r.numer().to_i64() {
            return json!(i);
        }
    }
    json!(r.to_f64())
}

pub fn rational_exact(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A number when it fits in `u64`, otherwise its decimal string.
pub fn big(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn wide(n: Option<u128>) -> Value {
    match n.and_then(|v| u64::try_from(v).ok()) {
        Some(v) => json!(v),
        None => Value::Null,
    }
}

pub fn sequence_json(seq: &DegreeSequence) -> Value {
    let naive: Vec<Value> = (1..=seq.len()).map(|n| wide(seq.naive_degree(n))).collect();
    json!({
        "source": seq.source,
        "dim": seq.dim,
        "strategy": seq.strategy.name(),
        "requested": seq.requested,
        "computed": seq.len(),
        "degrees": seq.degrees,
        "drops": seq.drops,
        "cumulativeNaiveDegree": naive,
    })
}

fn fit_json(f: &Fit) -> Value {
    json!({
        "slope": f.slope,
        "intercept": f.intercept,
        "residual": f.residual,
        "window": [f.window.0, f.window.1],
    })
}

pub fn growth_json(r: &GrowthReport) -> Value {
    json!({
        "label": r.label.name(),
        "dpol": r.dpol,
        "lambda": r.lambda,
        "lambdaEstimates": { "root": r.lambda_estimates.root, "ratio": r.lambda_estimates.ratio },
        "fitResidual": r.fit_residual,
        "polynomialFit": fit_json(&r.polynomial_fit),
        "exponentialFit": fit_json(&r.exponential_fit),
        "window": [r.window.0, r.window.1],
        "tailPeriod": r.tail_period,
        "dim2Category": r.dim2_category.map(|c| c.name()),
    })
}

pub fn threshold_json(t: &ThresholdReport) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "value": r.value,
                "belowRoot": r.below_root,
                "belowLog": r.below_log,
                "pigeonhole": r.pigeonhole,
            })
        })
        .collect();
    json!({
        "d": t.d,
        "q": t.q,
        "C_d": rational(&t.c_d),
        "C_dExact": rational_exact(&t.c_d),
        "C_dq": t.c_dq,
        "rootPredictsBounded": t.root_predicts_bounded,
        "logPredictsBounded": t.log_predicts_bounded,
        "rows": rows,
    })
}

pub fn law_json(law: &ExpectedLaw) -> Value {
    match law {
        ExpectedLaw::Arithmetic { first, step } => json!({ "kind": "arithmetic", "first": first, "step": step }),
        ExpectedLaw::Geometric { base } => json!({ "kind": "geometric", "base": base }),
        ExpectedLaw::Power { exponent } => json!({ "kind": "power", "exponent": exponent }),
        ExpectedLaw::Periodic(cycle) => json!({ "kind": "periodic", "cycle": cycle }),
        ExpectedLaw::Exact(values) => json!({ "kind": "exact", "values": values }),
        ExpectedLaw::GrowthOrder { dpol } => json!({ "kind": "growthOrder", "dpol": dpol }),
    }
}

pub fn entry_json(e: &GalleryEntry) -> Value {
    json!({
        "name": e.name,
        "dim": e.map.dim(),
        "kind": match e.map { GalleryMap::Affine(_) => "affine", GalleryMap::Projective(_) => "projective" },
        "map": e.map.to_string(),
        "expected": law_json(&e.expected),
        "dpol": e.dpol,
        "stated": e.stated.as_ref().map(law_json),
        "provenance": { "kind": e.provenance.kind(), "description": e.provenance.describe() },
    })
}

pub fn write_json(value: &Value, out: &mut dyn Write) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.write_all(b"\n")
}

/// RFC 4180 table with a header row.
pub fn write_csv(header: &[&str], rows: &[Vec<String>], out: &mut dyn Write) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Rows `n, degree, drop, cumulativeNaiveDegree`.
pub fn sequence_rows(seq: &DegreeSequence) -> Vec<Vec<String>> {
    (1..=seq.len())
        .map(|n| {
            vec![
                n.to_string(),
                seq.degrees[n - 1].to_string(),
                seq.drops[n - 1].to_string(),
                seq.naive_degree(n).map(|v| v.to_string()).unwrap_or_default(),
            ]
        })
        .collect()
}

pub const SEQUENCE_HEADER: [&str; 4] = ["n", "degree", "drop", "cumulativeNaiveDegree"];

/// `n degree` per line.
pub fn plot_linear(degrees: &[u64]) -> String {
    degrees.iter().enumerate().map(|(i, d)| format!("{} {}\n", i + 1, d)).collect()
}

/// `ln n  ln degree` per line, natural logarithms.
pub fn plot_loglog(degrees: &[u64]) -> String {
    degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| format!("{:.12} {:.12}\n", ((i + 1) as f64).ln(), (d as f64).ln()))
        .collect()
}
