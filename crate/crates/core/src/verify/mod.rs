//! Grid sampling, constancy certification and the independent checks:
//! finite-difference oracle, flat-translation classifier, ODE cross-checks
//! and the nonexistence probe.
//!
//! Every parallel loop collects into index order, so results do not depend on
//! the number of worker threads.

mod classify;
mod nelder_mead;
mod ode;
mod oracle;
mod probe;

pub use classify::{classify_flat_translation, is_straight, FlatClass};
pub use nelder_mead::{minimize, NelderMeadOptions, NelderMeadResult};
pub use ode::{convergence_ratio, ode_crosscheck, OdeProblem};
pub use oracle::fd_oracle;
pub use probe::{nonexistence_probe, ProbeProblem, ProbeResult, PROBE_GRID, PROBE_POLY_DEGREE};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{fundamental_forms, CausalCharacter, Metric, Rect, Surface};
use crate::jets::Interval;

/// Tolerance for minimality claims.
pub const H_TOL: f64 = 1.0e-10;
/// Tolerance for flatness claims.
pub const K_TOL: f64 = 1.0e-9;
/// Agreement expected between the jet pipeline and the finite-difference oracle.
pub const ORACLE_TOL: f64 = 1.0e-5;
/// Default finite-difference step.
pub const FD_STEP: f64 = 1.0e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantity {
    K,
    H,
}

impl Quantity {
    pub fn of(self, sample: &CurvatureSample) -> f64 {
        match self {
            Quantity::K => sample.k,
            Quantity::H => sample.h,
        }
    }

    pub fn default_tol(self) -> f64 {
        match self {
            Quantity::K => K_TOL,
            Quantity::H => H_TOL,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::K => "K",
            Quantity::H => "H",
        })
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K" | "k" => Ok(Quantity::K),
            "H" | "h" => Ok(Quantity::H),
            _ => Err(Error::spec("quantity", format!("expected K or H, got {s:?}"))),
        }
    }
}

/// Uniform `ns × nt` grid, end points included. Nodes are enumerated
/// row-major: `s` outer, `t` inner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub s: Interval,
    pub t: Interval,
    pub ns: usize,
    pub nt: usize,
}

impl GridSpec {
    pub fn new(s: Interval, t: Interval, ns: usize, nt: usize) -> Result<Self> {
        if ns < 2 || nt < 2 {
            return Err(Error::spec(
                "grid",
                format!("node counts must be at least 2, got {ns}x{nt}"),
            ));
        }
        Ok(Self { s, t, ns, nt })
    }

    pub fn over(rect: Rect, ns: usize, nt: usize) -> Result<Self> {
        Self::new(rect.s, rect.t, ns, nt)
    }

    pub fn rect(&self) -> Rect {
        Rect::new(self.s, self.t)
    }

    pub fn len(&self) -> usize {
        self.ns * self.nt
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parameters of the node with row-major index `k`.
    pub fn node(&self, k: usize) -> (f64, f64) {
        (self.s.node(k / self.nt, self.ns), self.t.node(k % self.nt, self.nt))
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.len()).map(|k| self.node(k))
    }
}

/// Curvature data at one non-degenerate grid node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSample {
    pub s: f64,
    pub t: f64,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "EGmF2")]
    pub eg_mf2: f64,
    pub character: CausalCharacter,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSamples {
    pub samples: Vec<CurvatureSample>,
    /// Nodes dropped as degenerate or causally inadmissible.
    pub skipped: usize,
}

/// Evaluates the curvatures at every grid node in parallel.
///
/// Degenerate and causality-violating nodes are counted and skipped. Any
/// other failure aborts with the error of the first failing node.
pub fn sample_curvature(surface: &Surface, metric: Metric, grid: &GridSpec) -> Result<CurvatureSamples> {
    if !surface.domain().contains_rect(&grid.rect()) {
        return Err(Error::spec(
            "grid",
            format!(
                "grid {:?} leaves the surface domain {:?}",
                grid.rect().as_array(),
                surface.domain().as_array()
            ),
        ));
    }
    let results: Vec<Result<CurvatureSample>> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let (s, t) = grid.node(k);
            let ff = fundamental_forms(surface, metric, s, t)?;
            Ok(CurvatureSample {
                s,
                t,
                k: ff.gauss(),
                h: ff.mean(),
                eg_mf2: ff.first_det(),
                character: ff.character,
            })
        })
        .collect();
    let mut samples = Vec::with_capacity(results.len());
    let mut skipped = 0;
    for r in results {
        match r {
            Ok(sample) if sample.k.is_finite() && sample.h.is_finite() => samples.push(sample),
            Ok(sample) => {
                return Err(Error::Domain(format!(
                    "non-finite curvature at ({}, {})",
                    sample.s, sample.t
                )));
            }
            Err(e) if e.is_node_local() => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    if samples.is_empty() {
        return Err(Error::AllDegenerate { skipped });
    }
    Ok(CurvatureSamples { samples, skipped })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstancyReport {
    pub quantity: Quantity,
    pub mean: f64,
    pub max_abs_dev: f64,
    pub expected: Option<f64>,
    pub tol: f64,
    pub verdict: Verdict,
    pub n_samples: usize,
    pub skipped_degenerate: usize,
}

impl ConstancyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Largest deviation of the sampled quantity from `expected`, or from the
/// sample mean when no value is expected. An empty sample set fails.
pub fn check_constancy(
    samples: &CurvatureSamples,
    quantity: Quantity,
    expected: Option<f64>,
    tol: f64,
) -> ConstancyReport {
    let values: Vec<f64> = samples.samples.iter().map(|s| quantity.of(s)).collect();
    let n = values.len();
    let mean = if n == 0 {
        0.0
    } else {
        values.iter().sum::<f64>() / n as f64
    };
    let centre = expected.unwrap_or(mean);
    let max_abs_dev = values.iter().map(|v| (v - centre).abs()).fold(0.0, f64::max);
    let verdict = if n > 0 && max_abs_dev <= tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    ConstancyReport {
        quantity,
        mean,
        max_abs_dev,
        expected,
        tol,
        verdict,
        n_samples: n,
        skipped_degenerate: samples.skipped,
    }
}
