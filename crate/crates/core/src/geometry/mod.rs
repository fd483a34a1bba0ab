//! Surfaces, ambient metrics, fundamental forms and curvature.
//!
//! Two routes to the Gauss curvature live here: the generic pipeline in
//! [`forms`], which works for any [`Surface`] from second-order jets of the
//! embedding, and the closed forms in [`closed`] for translation surfaces in
//! graph normal form and for homothetical graphs.

pub mod closed;
pub mod forms;
pub mod surface;

pub use closed::{
    curve_planarity_residual, homothetical_flat_residual, homothetical_gauss_closed, homothetical_minimal_residual,
    translation_gauss_closed, translation_planar_alpha_gauss_closed,
};
pub use forms::{fundamental_forms, gauss_curvature, mean_curvature, CausalCharacter, FundamentalForms};
pub use surface::{Curve3, GraphAxis, Rect, Surface, SurfaceKind};

use serde::{Deserialize, Serialize};

pub type Vec3 = [f64; 3];

/// Relative threshold below which `EG − F²` counts as zero.
pub const DEGENERACY_TOL: f64 = 1.0e-12;

/// Ambient metric on coordinates `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    Euclidean,
    /// `dx² + dy² − dz²`.
    Lorentzian,
}

impl Metric {
    /// Sign of the `z` term of the metric.
    pub fn z_sign(self) -> f64 {
        match self {
            Metric::Euclidean => 1.0,
            Metric::Lorentzian => -1.0,
        }
    }

    pub fn inner(self, a: &Vec3, b: &Vec3) -> f64 {
        a[0] * b[0] + a[1] * b[1] + self.z_sign() * a[2] * b[2]
    }

    /// Cross product adjoint to the metric: `⟨cross(u, v), w⟩ = det(u, v, w)`.
    pub fn cross(self, u: &Vec3, v: &Vec3) -> Vec3 {
        let c = euclidean_cross(u, v);
        [c[0], c[1], self.z_sign() * c[2]]
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Lorentzian => "lorentzian",
        }
    }
}

pub fn euclidean_cross(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Determinant of the matrix with rows `a`, `b`, `c`.
pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    dot(&euclidean_cross(a, b), c)
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// Angle in radians between the lines spanned by `a` and `b`.
pub fn line_angle(a: &Vec3, b: &Vec3) -> f64 {
    norm(&euclidean_cross(a, b)).atan2(dot(a, b).abs())
}
