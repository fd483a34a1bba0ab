use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::Interval;

/// Integrand magnitude beyond which integration stops.
const MAGNITUDE_CAP: f64 = 1.0e8;

/// First-order reductions with known closed-form solutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "ode", rename_all = "snake_case")]
pub enum OdeProblem {
    /// `g' = k(1 + a²g²)`, solved by `g = tan(aky + d)/a`.
    Tan { a: f64, k: f64, d: f64 },
    /// `f' = bf`, `g' = cg`, solved by `f = pe^(bx)`, `g = qe^(cy)`.
    ExpBranch { b: f64, c: f64, p: f64, q: f64 },
    /// `f' = bf^a`, `g' = cg^(1/a)` for `a ≠ 0, 1`, solved by
    /// `f = ((1−a)bx + p)^(1/(1−a))`, `g = (((a−1)/a)cy + q)^(a/(a−1))`.
    PowerBranch { a: f64, b: f64, c: f64, p: f64, q: f64 },
}

impl OdeProblem {
    pub fn id(&self) -> &'static str {
        match self {
            OdeProblem::Tan { .. } => "tan",
            OdeProblem::ExpBranch { .. } => "exp_branch",
            OdeProblem::PowerBranch { .. } => "power_branch",
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            OdeProblem::Tan { a: 0.0, .. } => Err(Error::spec("a", "must be non-zero")),
            OdeProblem::PowerBranch { a, .. } if a == 0.0 || a == 1.0 => {
                Err(Error::spec("a", "branch exponent must differ from 0 and 1"))
            }
            _ => Ok(()),
        }
    }

    fn rhs(&self, y: [f64; 2]) -> [f64; 2] {
        match *self {
            OdeProblem::Tan { a, k, .. } => [k * (1.0 + a * a * y[0] * y[0]), 0.0],
            OdeProblem::ExpBranch { b, c, .. } => [b * y[0], c * y[1]],
            OdeProblem::PowerBranch { a, b, c, .. } => [b * y[0].powf(a), c * y[1].powf(1.0 / a)],
        }
    }

    fn exact(&self, x: f64) -> Result<[f64; 2]> {
        let v = match *self {
            OdeProblem::Tan { a, k, d } => {
                let u = a * k * x + d;
                if u.cos().abs() < 1e-12 {
                    return Err(Error::Singularity(format!("tan pole at {x}")));
                }
                [u.tan() / a, 0.0]
            }
            OdeProblem::ExpBranch { b, c, p, q } => [p * (b * x).exp(), q * (c * x).exp()],
            OdeProblem::PowerBranch { a, b, c, p, q } => {
                let bf = (1.0 - a) * b * x + p;
                let bg = (a - 1.0) / a * c * x + q;
                if bf <= 0.0 || bg <= 0.0 {
                    return Err(Error::Singularity(format!("power base not positive at {x}")));
                }
                [bf.powf(1.0 / (1.0 - a)), bg.powf(a / (a - 1.0))]
            }
        };
        if v.iter().all(|c| c.is_finite()) {
            Ok(v)
        } else {
            Err(Error::Singularity(format!("closed form is not finite at {x}")))
        }
    }

    fn checked_rhs(&self, x: f64, y: [f64; 2]) -> Result<[f64; 2]> {
        let d = self.rhs(y);
        if d.iter().all(|v| v.is_finite() && v.abs() <= MAGNITUDE_CAP) {
            Ok(d)
        } else {
            Err(Error::Singularity(format!(
                "derivative {d:?} exceeds {MAGNITUDE_CAP:e} at {x}"
            )))
        }
    }
}

/// Integrates `ode` across `interval` with `steps` classical fourth-order
/// Runge–Kutta steps, starting from the closed form at `interval.lo`, and
/// returns the largest deviation from the closed form at the step nodes.
pub fn ode_crosscheck(ode: &OdeProblem, interval: Interval, steps: usize) -> Result<f64> {
    ode.validate()?;
    if steps == 0 {
        return Err(Error::spec("steps", "must be at least 1"));
    }
    let h = interval.width() / steps as f64;
    let mut y = ode.exact(interval.lo)?;
    let mut worst: f64 = 0.0;
    let add = |y: [f64; 2], k: [f64; 2], w: f64| [y[0] + w * k[0], y[1] + w * k[1]];
    for i in 0..steps {
        let x = interval.lo + h * i as f64;
        let k1 = ode.checked_rhs(x, y)?;
        let k2 = ode.checked_rhs(x + 0.5 * h, add(y, k1, 0.5 * h))?;
        let k3 = ode.checked_rhs(x + 0.5 * h, add(y, k2, 0.5 * h))?;
        let k4 = ode.checked_rhs(x + h, add(y, k3, h))?;
        for c in 0..2 {
            y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        let xn = if i + 1 == steps {
            interval.hi
        } else {
            interval.lo + h * (i + 1) as f64
        };
        let exact = ode.exact(xn)?;
        worst = worst.max((y[0] - exact[0]).abs()).max((y[1] - exact[1]).abs());
    }
    Ok(worst)
}

/// `error(steps) / error(2·steps)`; close to 16 for a fourth-order method.
pub fn convergence_ratio(ode: &OdeProblem, interval: Interval, steps: usize) -> Result<f64> {
    Ok(ode_crosscheck(ode, interval, steps)? / ode_crosscheck(ode, interval, 2 * steps)?)
}
