//! Optimization-based search for surfaces of constant nonzero Gauss curvature
//! in classes where none should exist. A large best residual is evidence, not
//! proof.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::nelder_mead::{minimize, NelderMeadOptions};
use crate::error::{Error, Result};

/// Degree of the polynomial free functions.
pub const PROBE_POLY_DEGREE: usize = 6;
/// Nodes per axis of the sampling grid on `[−1, 1]²`.
pub const PROBE_GRID: usize = 9;

const N_COEFFS: usize = PROBE_POLY_DEGREE + 1;
const MAX_EVALS_PER_RESTART: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum ProbeProblem {
    /// `z = f(x)g(y)` with polynomial `f, g`.
    HomotheticalNonzeroK { k0: f64 },
    /// `α = (s, 0, f(s))`, `β = (g1(t), t, g2(t))` with polynomial `f, g1, g2`.
    TranslationPlanarGenerator { k0: f64 },
}

impl ProbeProblem {
    pub fn id(&self) -> &'static str {
        match self {
            ProbeProblem::HomotheticalNonzeroK { .. } => "homothetical_nonzero_k",
            ProbeProblem::TranslationPlanarGenerator { .. } => "translation_planar_generator",
        }
    }

    pub fn from_id(id: &str, k0: f64) -> Result<Self> {
        match id {
            "homothetical_nonzero_k" => Ok(ProbeProblem::HomotheticalNonzeroK { k0 }),
            "translation_planar_generator" => Ok(ProbeProblem::TranslationPlanarGenerator { k0 }),
            _ => Err(Error::spec(
                "problem",
                format!("unknown probe {id:?} (expected homothetical_nonzero_k or translation_planar_generator)"),
            )),
        }
    }

    pub fn k0(&self) -> f64 {
        match *self {
            ProbeProblem::HomotheticalNonzeroK { k0 } | ProbeProblem::TranslationPlanarGenerator { k0 } => k0,
        }
    }

    fn n_functions(&self) -> usize {
        match self {
            ProbeProblem::HomotheticalNonzeroK { .. } => 2,
            ProbeProblem::TranslationPlanarGenerator { .. } => 3,
        }
    }

    /// Mean of `(K − K₀)²` over the probe grid for the coefficient vector `p`.
    pub fn residual(&self, p: &[f64]) -> f64 {
        let nodes: Vec<f64> = (0..PROBE_GRID)
            .map(|i| -1.0 + 2.0 * i as f64 / (PROBE_GRID - 1) as f64)
            .collect();
        let jets = |k: usize| -> Vec<[f64; 3]> {
            let c = &p[k * N_COEFFS..(k + 1) * N_COEFFS];
            nodes.iter().map(|&x| poly_jet(c, x)).collect()
        };
        let k0 = self.k0();
        let mut acc = 0.0;
        match self {
            ProbeProblem::HomotheticalNonzeroK { .. } => {
                let (fj, gj) = (jets(0), jets(1));
                for f in &fj {
                    for g in &gj {
                        let num = f[0] * g[0] * f[2] * g[2] - f[1] * f[1] * g[1] * g[1];
                        let den = 1.0 + f[1] * f[1] * g[0] * g[0] + f[0] * f[0] * g[1] * g[1];
                        acc += (num / (den * den) - k0).powi(2);
                    }
                }
            }
            ProbeProblem::TranslationPlanarGenerator { .. } => {
                let (fj, g1j, g2j) = (jets(0), jets(1), jets(2));
                for f in &fj {
                    for (g1, g2) in g1j.iter().zip(&g2j) {
                        let num = f[2] * (g2[2] - f[1] * g1[2]);
                        let cross = g2[1] - f[1] * g1[1];
                        let den = 1.0 + f[1] * f[1] + cross * cross;
                        acc += (num / (den * den) - k0).powi(2);
                    }
                }
            }
        }
        acc / (PROBE_GRID * PROBE_GRID) as f64
    }
}

/// Value, first and second derivative of `Σ c_k x^k`.
fn poly_jet(c: &[f64], x: f64) -> [f64; 3] {
    let (mut v, mut d1, mut d2) = (0.0, 0.0, 0.0);
    for &ck in c.iter().rev() {
        d2 = d2 * x + 2.0 * d1;
        d1 = d1 * x + v;
        v = v * x + ck;
    }
    [v, d1, d2]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub problem: String,
    #[serde(rename = "K0")]
    pub k0: f64,
    pub seed: u64,
    pub budget: usize,
    pub best_residual: f64,
    /// Simplex iterations of the winning restart.
    pub iterations: usize,
    pub best_restart: usize,
    /// Objective evaluations over all restarts.
    pub evaluations: usize,
    /// Polynomial coefficients, lowest degree first, one block per free function.
    pub params: Vec<f64>,
}

/// Minimizes the mean-square deviation of `K` from `K₀` over polynomial
/// free functions, from `budget` random starts drawn from `seed`.
///
/// Restarts run in parallel; the winner is the smallest residual, ties going
/// to the lower restart index, so the result depends only on the arguments.
pub fn nonexistence_probe(problem: &ProbeProblem, seed: u64, budget: usize) -> Result<ProbeResult> {
    if budget == 0 {
        return Err(Error::spec("budget", "must be at least 1"));
    }
    if !problem.k0().is_finite() {
        return Err(Error::spec("K0", "must be finite"));
    }
    let dim = problem.n_functions() * N_COEFFS;
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..budget).map(|_| master.gen()).collect();
    let opts = NelderMeadOptions {
        max_evals: MAX_EVALS_PER_RESTART,
        ..Default::default()
    };
    let runs: Vec<_> = seeds
        .par_iter()
        .map(|&s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let x0: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            minimize(|p| problem.residual(p), &x0, opts)
        })
        .collect();
    let evaluations = runs.iter().map(|r| r.evals).sum();
    let (best_restart, best) = runs
        .into_iter()
        .enumerate()
        .min_by(|a, b| a.1.value.total_cmp(&b.1.value).then(a.0.cmp(&b.0)))
        .expect("budget is positive");
    Ok(ProbeResult {
        problem: problem.id().to_string(),
        k0: problem.k0(),
        seed,
        budget,
        best_residual: best.value,
        iterations: best.iterations,
        best_restart,
        evaluations,
        params: best.x,
    })
}
