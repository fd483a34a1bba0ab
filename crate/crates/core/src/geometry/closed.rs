//! Closed-form curvature expressions for translation surfaces in graph
//! normal form and for homothetical graphs, written directly in terms of the
//! generating functions and their derivatives.

use super::{det3, Curve3, GraphAxis, Metric, DEGENERACY_TOL};
use crate::error::{Error, Result};
use crate::jets::SmoothFn1;

fn degenerate(s: f64, t: f64, det: f64) -> Error {
    Error::Degenerate { s, t, det }
}

/// Gauss curvature of `α(s) = (s, f1, f2)`, `β(t) = (g1, t, g2)`.
///
/// The numerator is `P·Q` with `P = det(X_s, X_t, α'')` and
/// `Q = det(X_s, X_t, β'')`; the denominator is `(EG − F²)²`. The Lorentzian
/// value carries an overall minus sign whatever the causal character.
pub fn translation_gauss_closed(
    f1: &SmoothFn1,
    f2: &SmoothFn1,
    g1: &SmoothFn1,
    g2: &SmoothFn1,
    metric: Metric,
    s: f64,
    t: f64,
) -> Result<f64> {
    let (a1, a2) = (f1.jet(s)?, f2.jet(s)?);
    let (b1, b2) = (g1.jet(t)?, g2.jet(t)?);
    let p = a2.d2 - a1.d2 * b2.d1 + b1.d1 * (a1.d2 * a2.d1 - a1.d1 * a2.d2);
    let q = b2.d2 - a2.d1 * b1.d2 + a1.d1 * (b1.d2 * b2.d1 - b1.d1 * b2.d2);
    let z = metric.z_sign();
    let e = 1.0 + a1.d1 * a1.d1 + z * a2.d1 * a2.d1;
    let g = 1.0 + b1.d1 * b1.d1 + z * b2.d1 * b2.d1;
    let f = a1.d1 + b1.d1 + z * a2.d1 * b2.d1;
    let det = e * g - f * f;
    if det.abs() <= DEGENERACY_TOL * 1f64.max(e * e + f * f + g * g) {
        return Err(degenerate(s, t, det));
    }
    Ok(z * p * q / (det * det))
}

/// Gauss curvature when the first generator is the planar graph
/// `α(s) = (s, 0, f(s))` and `β(t) = (g1, t, g2)`:
///
/// ```text
/// K = ± f''(g2'' − f'g1'') / D²
/// D = 1 + g2'² + f'² + f'²g1'² − 2f'g1'g2'     (Euclidean, sign +)
/// D = 1 − g2'² − f'² − f'²g1'² + 2f'g1'g2'     (Lorentzian, sign −)
/// ```
pub fn translation_planar_alpha_gauss_closed(
    f: &SmoothFn1,
    g1: &SmoothFn1,
    g2: &SmoothFn1,
    metric: Metric,
    s: f64,
    t: f64,
) -> Result<f64> {
    let a = f.jet(s)?;
    let (b1, b2) = (g1.jet(t)?, g2.jet(t)?);
    let z = metric.z_sign();
    let num = a.d2 * (b2.d2 - a.d1 * b1.d2);
    let (fp, g1p, g2p) = (a.d1, b1.d1, b2.d1);
    let den = match metric {
        Metric::Euclidean => 1.0 + g2p * g2p + fp * fp + fp * fp * g1p * g1p - 2.0 * fp * g1p * g2p,
        Metric::Lorentzian => 1.0 - g2p * g2p - fp * fp - fp * fp * g1p * g1p + 2.0 * fp * g1p * g2p,
    };
    let scale = 1f64.max(den.abs());
    if den.abs() <= DEGENERACY_TOL * scale {
        return Err(degenerate(s, t, den));
    }
    Ok(z * num / (den * den))
}

/// Gauss curvature of a homothetical graph.
///
/// * Euclidean, either axis: `(fgf''g'' − f'²g'²) / (1 + f'²g² + f²g'²)²`.
/// * Lorentzian `z = f(x)g(y)` (spacelike): `−(fgf''g'' − f'²g'²) / D²` with
///   `D = 1 − f'²g² − f²g'² > 0`.
/// * Lorentzian `x = f(y)g(z)` (timelike): `−(fgf''g'' − f'²g'²) / D²` with
///   `D = 1 + f'²g² − f²g'² > 0`.
///
/// A Lorentzian point with the wrong sign of `D` is a [`Error::Causality`].
pub fn homothetical_gauss_closed(
    f: &SmoothFn1,
    g: &SmoothFn1,
    metric: Metric,
    axis: GraphAxis,
    x: f64,
    y: f64,
) -> Result<f64> {
    let (a, b) = (f.jet(x)?, g.jet(y)?);
    let num = a.v * b.v * a.d2 * b.d2 - a.d1 * a.d1 * b.d1 * b.d1;
    // Squared partials of h = f·g along the two parameters.
    let p = a.d1 * a.d1 * b.v * b.v;
    let q = a.v * a.v * b.d1 * b.d1;
    let (den, constraint) = match (metric, axis) {
        (Metric::Euclidean, _) => (1.0 + p + q, None),
        (Metric::Lorentzian, GraphAxis::Z) => (1.0 - p - q, Some("1 - f'^2 g^2 - f^2 g'^2 > 0 (spacelike)")),
        (Metric::Lorentzian, GraphAxis::X) => (1.0 + p - q, Some("1 + f'^2 g^2 - f^2 g'^2 > 0 (timelike)")),
    };
    let scale = 1f64.max((1.0 + p) * (1.0 + p) + p * q + (1.0 + q) * (1.0 + q));
    if den.abs() <= DEGENERACY_TOL * scale {
        return Err(degenerate(x, y, den));
    }
    if let Some(rule) = constraint {
        if den < 0.0 {
            return Err(Error::Causality {
                s: x,
                t: y,
                detail: format!("{rule} fails: value {den}"),
            });
        }
    }
    Ok(metric.z_sign() * num / (den * den))
}

/// `f''g(1 + f²g'²) − 2ff'²gg'² + fg''(1 + f'²g²)`: the numerator of the
/// Euclidean mean curvature of `z = f(x)g(y)`; zero exactly where the graph is
/// minimal.
pub fn homothetical_minimal_residual(f: &SmoothFn1, g: &SmoothFn1, x: f64, y: f64) -> Result<f64> {
    let (a, b) = (f.jet(x)?, g.jet(y)?);
    let (f0, f1, f2) = (a.v, a.d1, a.d2);
    let (g0, g1, g2) = (b.v, b.d1, b.d2);
    Ok(f2 * g0 * (1.0 + f0 * f0 * g1 * g1) - 2.0 * f0 * f1 * f1 * g0 * g1 * g1 + f0 * g2 * (1.0 + f1 * f1 * g0 * g0))
}

/// `ff''gg'' − f'²g'²`; zero exactly where the graph is flat.
pub fn homothetical_flat_residual(f: &SmoothFn1, g: &SmoothFn1, x: f64, y: f64) -> Result<f64> {
    let (a, b) = (f.jet(x)?, g.jet(y)?);
    Ok(a.v * a.d2 * b.v * b.d2 - a.d1 * a.d1 * b.d1 * b.d1)
}

/// `det(c', c'', c''')`, the Euclidean determinant whatever the ambient
/// metric. Vanishes identically exactly for planar curves.
pub fn curve_planarity_residual(c: &Curve3, t: f64) -> Result<f64> {
    let [d1, d2, d3] = c.derivatives(t)?;
    Ok(det3(&d1, &d2, &d3))
}
