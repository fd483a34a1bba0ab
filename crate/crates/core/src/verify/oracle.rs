use crate::error::{Error, Result};
use crate::geometry::{Metric, Surface, Vec3};

fn det(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn comb(terms: &[(f64, &Vec3)]) -> Vec3 {
    let mut out = [0.0; 3];
    for (w, v) in terms {
        for k in 0..3 {
            out[k] += w * v[k];
        }
    }
    out
}

/// Gauss and mean curvature from central differences of the plain embedding
/// with step `h`. No jets are involved.
///
/// With `σ = ±1` the sign of the `z` term of the metric and `W = EG − F²`,
/// `K = σ(D₁D₃ − D₂²)/W²` and `H = σ(D₁G − 2D₂F + D₃E)/(2|W|^{3/2})`, where
/// `D₁, D₂, D₃` are the Euclidean determinants `det(X_s, X_t, X_ss)`,
/// `det(X_s, X_t, X_st)` and `det(X_s, X_t, X_tt)`.
pub fn fd_oracle(surface: &Surface, metric: Metric, s: f64, t: f64, h: f64) -> Result<(f64, f64)> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::spec("h", format!("step must be positive, got {h}")));
    }
    let dom = surface.domain();
    if !(dom.contains(s - h, t - h) && dom.contains(s + h, t + h)) {
        return Err(Error::Domain(format!(
            "stencil of half-width {h} around ({s}, {t}) leaves the domain {:?}",
            dom.as_array()
        )));
    }
    let x = |ds: f64, dt: f64| surface.point(s + ds * h, t + dt * h);
    let (c, e, w, n, so) = (x(0.0, 0.0)?, x(1.0, 0.0)?, x(-1.0, 0.0)?, x(0.0, 1.0)?, x(0.0, -1.0)?);
    let (ne, nw, se, sw) = (x(1.0, 1.0)?, x(-1.0, 1.0)?, x(1.0, -1.0)?, x(-1.0, -1.0)?);
    let (h1, h2) = (1.0 / (2.0 * h), 1.0 / (h * h));
    let xs = comb(&[(h1, &e), (-h1, &w)]);
    let xt = comb(&[(h1, &n), (-h1, &so)]);
    let xss = comb(&[(h2, &e), (-2.0 * h2, &c), (h2, &w)]);
    let xtt = comb(&[(h2, &n), (-2.0 * h2, &c), (h2, &so)]);
    let q = 0.25 * h2;
    let xst = comb(&[(q, &ne), (-q, &nw), (-q, &se), (q, &sw)]);

    let sigma = match metric {
        Metric::Euclidean => 1.0,
        Metric::Lorentzian => -1.0,
    };
    let ip = |a: &Vec3, b: &Vec3| a[0] * b[0] + a[1] * b[1] + sigma * a[2] * b[2];
    let (ee, ff, gg) = (ip(&xs, &xs), ip(&xs, &xt), ip(&xt, &xt));
    let wdet = ee * gg - ff * ff;
    if wdet.abs() <= 1e-12 * 1f64.max(ee * ee + ff * ff + gg * gg) {
        return Err(Error::Degenerate { s, t, det: wdet });
    }
    let (d1, d2, d3) = (det(&xs, &xt, &xss), det(&xs, &xt, &xst), det(&xs, &xt, &xtt));
    let k = sigma * (d1 * d3 - d2 * d2) / (wdet * wdet);
    let hm = sigma * (d1 * gg - 2.0 * d2 * ff + d3 * ee) / (2.0 * wdet.abs().powf(1.5));
    Ok((k, hm))
}
