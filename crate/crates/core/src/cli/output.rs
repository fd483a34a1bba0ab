use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::{fundamental_forms, Metric, Surface};
use crate::verify::{ConstancyReport, CurvatureSample, GridSpec};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub tool_version: String,
    pub spec_digest: String,
    pub reports: Vec<ConstancyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_path: Option<String>,
}

/// SHA-256 of the input document re-serialized as compact JSON with sorted
/// keys, so whitespace and key order do not matter.
pub fn spec_digest(text: &str) -> Result<String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| super::spec_doc::json_error(text, &e))?;
    let canonical = serde_json::to_string(&value).expect("values serialize");
    Ok(hex::encode(Sha256::digest(canonical.as_bytes())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Shortest round-trip decimal.
fn num(v: f64) -> String {
    serde_json::to_string(&v).expect("finite")
}

pub fn samples_csv(samples: &[CurvatureSample]) -> String {
    let mut out = String::from("s,t,K,H,EGmF2,character\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            num(s.s),
            num(s.t),
            num(s.k),
            num(s.h),
            num(s.eg_mf2),
            s.character.name()
        );
    }
    out
}

/// `%.9g`: nine significant digits, trailing zeros dropped, exponent form
/// outside `[1e−5, 1e9)`.
pub fn fmt_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp) as usize;
        trim(&format!("{v:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    }
}

/// Wavefront OBJ text: `ns·nt` vertices in row-major order, then two
/// triangles per grid cell, 1-based.
///
/// Every node must be non-degenerate under `metric`; the first offending node
/// aborts the export.
pub fn obj_text(surface: &Surface, metric: Metric, grid: &GridSpec) -> Result<String> {
    if !surface.domain().contains_rect(&grid.rect()) {
        return Err(Error::spec("grid", "grid leaves the surface domain"));
    }
    let mut out = String::new();
    for (s, t) in grid.nodes() {
        fundamental_forms(surface, metric, s, t).map_err(|e| match e {
            e if e.is_node_local() => Error::spec("mesh", format!("cannot export: first offending node {e}")),
            e => e,
        })?;
        let p = surface.position(s, t)?;
        let _ = writeln!(out, "v {} {} {}", fmt_sig9(p[0]), fmt_sig9(p[1]), fmt_sig9(p[2]));
    }
    let idx = |i: usize, j: usize| i * grid.nt + j + 1;
    for i in 0..grid.ns - 1 {
        for j in 0..grid.nt - 1 {
            let (v00, v10, v11, v01) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            let _ = writeln!(out, "f {v00} {v10} {v11}");
            let _ = writeln!(out, "f {v00} {v11} {v01}");
        }
    }
    Ok(out)
}

pub fn export_obj(surface: &Surface, metric: Metric, grid: &GridSpec, path: &Path) -> Result<()> {
    let text = obj_text(surface, metric, grid)?;
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
