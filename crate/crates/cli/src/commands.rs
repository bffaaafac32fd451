//! One function per subcommand, each returning a finished report.

use std::path::Path;

use serde_json::{json, Value};

use omega_trace::algebra::GradedAlgebra;
use omega_trace::constructions::{fiber_product, predicted_fiber_trace, predicted_tensor_trace, tensor_product, veronese as veronese_ring};
use omega_trace::difftrace::{
    classify as classify_ring, derivation_slice_witness, diff_trace, is_isolated_singularity, report_generators,
    singular_locus_cross_check, singular_locus_jacobian, singular_locus_trace,
};
use omega_trace::simplicial::{combinatorial_nearly_regular, stanley_reisner_algebra, SimplicialComplex};
use omega_trace::{Error, IdealHandle};

use crate::ringfile::{load_ring, render_ring, RingFileError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    RingFile(#[from] RingFileError),
    #[error(transparent)]
    Compute(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::RingFile(RingFileError::NotHomogeneous { .. }) => 4,
            CliError::RingFile(_) => 2,
            CliError::Compute(e) => match e {
                Error::BudgetExceeded { .. } => 3,
                Error::AssumptionViolation(_) | Error::NotHomogeneous(_) | Error::EmptySpectrum => 4,
                _ => 2,
            },
        }
    }
}

pub type Outcome = Result<Value, CliError>;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub max_steps: u64,
}

fn open(path: &Path, opts: Options) -> Result<GradedAlgebra, CliError> {
    Ok(load_ring(path)?.with_max_steps(opts.max_steps))
}

fn ring_json(s: &GradedAlgebra) -> Value {
    let sig = s.signature();
    let ideal: Vec<String> = s.ideal().generators().iter().map(|g| g.to_string()).collect();
    json!({
        "variables": sig.names(),
        "weights": sig.weights(),
        "ideal": ideal,
        "assumptions": {
            "reduced": s.flags().reduced.as_str(),
            "equidimensional": s.flags().equidimensional.as_str(),
        },
    })
}

fn ideal_json(s: &GradedAlgebra, j: &IdealHandle) -> Result<Value, CliError> {
    let gens: Vec<String> = report_generators(s, j)?.iter().map(|p| p.to_string()).collect();
    Ok(json!(gens))
}

pub fn trace(path: &Path, power: usize, opts: Options) -> Outcome {
    let s = open(path, opts)?;
    let t = diff_trace(&s, power)?;
    Ok(json!({
        "command": "trace",
        "ring": ring_json(&s),
        "power": power,
        "trace": ideal_json(&s, &t)?,
        "is_unit": t.is_unit()?,
        "contains_maximal": s.contains_maximal(&t)?,
    }))
}

pub fn classify(path: &Path, opts: Options) -> Outcome {
    let s = open(path, opts)?;
    let r = classify_ring(&s)?;
    let traces = r.traces.iter().map(|t| ideal_json(&s, t)).collect::<Result<Vec<_>, _>>()?;
    let jacobian = match &r.singular_locus_jacobian {
        Some(j) => ideal_json(&s, j)?,
        None => Value::Null,
    };
    Ok(json!({
        "command": "classify",
        "ring": ring_json(&s),
        "dimension": r.dimension,
        "traces": traces,
        "nearly_regular": r.nearly_regular,
        "regular": r.regular,
        "polynomial_rank": r.polynomial_rank,
        "singular_locus_trace": ideal_json(&s, &r.singular_locus_trace)?,
        "singular_locus_jacobian": jacobian,
        "radicals_agree": r.radicals_agree,
    }))
}

pub fn singular(path: &Path, cross_check: bool, opts: Options) -> Outcome {
    let s = open(path, opts)?;
    let mut out = json!({ "command": "singular", "ring": ring_json(&s), "dimension": s.dimension()? });
    if cross_check {
        let locus = singular_locus_cross_check(&s)?;
        let isolated = is_isolated_singularity(&s)?;
        out["trace"] = ideal_json(&s, &locus.trace)?;
        out["jacobian"] = ideal_json(&s, &locus.jacobian)?;
        out["radicals_agree"] = json!(locus.radicals_agree);
        out["isolated_singularity"] = json!(isolated);
    } else {
        out["trace"] = ideal_json(&s, &singular_locus_trace(&s)?)?;
        out["jacobian"] = ideal_json(&s, &singular_locus_jacobian(&s)?)?;
    }
    Ok(out)
}

pub fn prank(path: &Path, opts: Options) -> Outcome {
    let s = open(path, opts)?;
    let rank = omega_trace::difftrace::polynomial_rank(&s)?;
    let witness = match derivation_slice_witness(&s)? {
        Some(w) => {
            let images: Vec<String> = w.derivation_images().iter().map(|p| p.to_string()).collect();
            json!({ "derivation": images, "slice": w.slice.to_string() })
        }
        None => Value::Null,
    };
    Ok(json!({ "command": "prank", "ring": ring_json(&s), "polynomial_rank": rank, "witness": witness }))
}

pub fn tensor(a: &Path, b: &Path, verify: bool, opts: Options) -> Outcome {
    let (ra, rb) = (open(a, opts)?, open(b, opts)?);
    let r = tensor_product(&ra, &rb)?;
    let d = r.dimension()?;
    let direct = diff_trace(&r, d)?;
    let mut out = json!({
        "command": "tensor",
        "ring": ring_json(&r),
        "dimension": d,
        "trace": ideal_json(&r, &direct)?,
    });
    if verify {
        let p = predicted_tensor_trace(&ra, &rb)?;
        out["predicted"] = ideal_json(&r, &p.product)?;
        out["intersection"] = ideal_json(&r, &p.intersection)?;
        out["product_equals_intersection"] = json!(p.product_equals_intersection);
        out["equal"] = json!(p.product.equals(&direct)?);
    }
    Ok(out)
}

pub fn fiber(a: &Path, b: &Path, verify: bool, opts: Options) -> Outcome {
    let (ra, rb) = (open(a, opts)?, open(b, opts)?);
    let r = fiber_product(&ra, &rb)?;
    let d = r.dimension()?;
    let direct = diff_trace(&r, d)?;
    let mut out = json!({
        "command": "fiber",
        "ring": ring_json(&r),
        "dimension": d,
        "trace": ideal_json(&r, &direct)?,
    });
    if verify {
        let p = predicted_fiber_trace(&ra, &rb)?;
        out["predicted"] = ideal_json(&r, &p)?;
        out["equal"] = json!(p.equals(&direct)?);
    }
    Ok(out)
}

pub fn sr(facets: &str, verify: bool, opts: Options) -> Outcome {
    let delta = SimplicialComplex::parse(facets)?;
    let sr = stanley_reisner_algebra(&delta)?;
    let s = sr.algebra.with_max_steps(opts.max_steps);
    let combinatorial = combinatorial_nearly_regular(&delta)?;
    let components: Vec<String> = delta.components().iter().map(|c| c.to_string()).collect();
    let mut out = json!({
        "command": "sr",
        "facets": delta.to_string(),
        "ring": ring_json(&s),
        "dimension": delta.dim(),
        "components": components,
        "pure": delta.is_pure(),
        "combinatorial": combinatorial,
    });
    if verify {
        let algebraic = omega_trace::difftrace::is_nearly_regular(&s)?;
        out["algebraic"] = json!(algebraic);
        out["agree"] = json!(algebraic == combinatorial);
    }
    Ok(out)
}

pub fn veronese(path: &Path, degree: u32, opts: Options) -> Outcome {
    let s = open(path, opts)?;
    let v = veronese_ring(&s, degree)?;
    Ok(json!({
        "command": "veronese",
        "degree": degree,
        "ring": ring_json(&v),
        "ring_file": render_ring(&v),
    }))
}

/// Plain-text rendering: one `key: value` line per field, nested objects
/// indented, ideal lists in parentheses.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("n/a".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            let parts: Vec<String> = items.iter().map(|i| inline(i).unwrap_or_default()).collect();
            Some(format!("({})", parts.join(", ")))
        }
        _ => None,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_value(out, item, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}[{i}] {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        write_value(out, item, depth + 1);
                    }
                }
            }
        }
        Value::String(s) => {
            for line in s.lines() {
                out.push_str(&format!("{pad}{line}\n"));
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}
