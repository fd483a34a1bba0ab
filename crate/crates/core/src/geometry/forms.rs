use serde::{Deserialize, Serialize};

use super::{Metric, Surface, Vec3, DEGENERACY_TOL};
use crate::error::{Error, Result};

/// Causal character of the induced metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Degenerate,
}

impl CausalCharacter {
    pub fn name(self) -> &'static str {
        match self {
            CausalCharacter::Spacelike => "spacelike",
            CausalCharacter::Timelike => "timelike",
            CausalCharacter::Degenerate => "degenerate",
        }
    }
}

/// First and second fundamental forms at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// Unit normal, `⟨N, N⟩ = ±1` under the ambient metric.
    pub normal: Vec3,
    pub character: CausalCharacter,
    /// Sign in front of the curvature quotients: `+1` in Euclidean space,
    /// `−1` for spacelike and `+1` for timelike surfaces in Minkowski space.
    pub eps: f64,
}

impl FundamentalForms {
    /// `EG − F²`.
    pub fn first_det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    pub fn gauss(&self) -> f64 {
        self.eps * (self.l * self.n - self.m * self.m) / self.first_det()
    }

    pub fn mean(&self) -> f64 {
        self.eps * (self.l * self.g - 2.0 * self.m * self.f + self.n * self.e) / (2.0 * self.first_det())
    }

    /// Builds the forms from the first and second partials of an embedding.
    /// The normal is `cross(X_s, X_t)` normalized, in that order.
    pub fn from_partials(
        metric: Metric,
        xs: &Vec3,
        xt: &Vec3,
        xss: &Vec3,
        xst: &Vec3,
        xtt: &Vec3,
        at: (f64, f64),
    ) -> Result<Self> {
        let e = metric.inner(xs, xs);
        let f = metric.inner(xs, xt);
        let g = metric.inner(xt, xt);
        let det = e * g - f * f;
        let scale = 1f64.max(e * e + f * f + g * g);
        let degenerate = || Error::Degenerate { s: at.0, t: at.1, det };
        if !det.is_finite() || det.abs() <= DEGENERACY_TOL * scale {
            return Err(degenerate());
        }
        let c = metric.cross(xs, xt);
        let cc = metric.inner(&c, &c);
        // Lightlike normal.
        if cc.abs() <= DEGENERACY_TOL * scale {
            return Err(degenerate());
        }
        let w = cc.abs().sqrt();
        let normal = [c[0] / w, c[1] / w, c[2] / w];
        let (character, eps) = match metric {
            Metric::Euclidean => (CausalCharacter::Spacelike, 1.0),
            Metric::Lorentzian if det > 0.0 => (CausalCharacter::Spacelike, -1.0),
            Metric::Lorentzian => (CausalCharacter::Timelike, 1.0),
        };
        Ok(Self {
            e,
            f,
            g,
            l: metric.inner(xss, &normal),
            m: metric.inner(xst, &normal),
            n: metric.inner(xtt, &normal),
            normal,
            character,
            eps,
        })
    }
}

/// Fundamental forms of `surface` at `(s, t)` under `metric`.
///
/// Fails with [`Error::Degenerate`] when the first form is singular and with
/// [`Error::Causality`] when the surface requires a causal character the point
/// does not have.
pub fn fundamental_forms(surface: &Surface, metric: Metric, s: f64, t: f64) -> Result<FundamentalForms> {
    let x = surface.jets(s, t)?;
    let xs = [x[0].ds, x[1].ds, x[2].ds];
    let xt = [x[0].dt, x[1].dt, x[2].dt];
    let xss = [x[0].dss, x[1].dss, x[2].dss];
    let xst = [x[0].dst, x[1].dst, x[2].dst];
    let xtt = [x[0].dtt, x[1].dtt, x[2].dtt];
    let forms = FundamentalForms::from_partials(metric, &xs, &xt, &xss, &xst, &xtt, (s, t))?;
    if let Some(want) = surface.required_character(metric) {
        if forms.character != want {
            return Err(Error::Causality {
                s,
                t,
                detail: format!(
                    "surface must be {} but EG-F^2={} makes it {}",
                    want.name(),
                    forms.first_det(),
                    forms.character.name()
                ),
            });
        }
    }
    Ok(forms)
}

pub fn gauss_curvature(surface: &Surface, metric: Metric, s: f64, t: f64) -> Result<f64> {
    Ok(fundamental_forms(surface, metric, s, t)?.gauss())
}

pub fn mean_curvature(surface: &Surface, metric: Metric, s: f64, t: f64) -> Result<f64> {
    Ok(fundamental_forms(surface, metric, s, t)?.mean())
}
