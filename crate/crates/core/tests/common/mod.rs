//! Random surface generators and independent numerical oracles shared by the
//! integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surfcurv::geometry::{Curve3, GraphAxis, Rect, Surface};
use surfcurv::jets::{Expr, Interval, SmoothFn1};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit() -> Interval {
    Interval::new(-1.0, 1.0).unwrap()
}

pub fn unit_square() -> Rect {
    Rect::new(unit(), unit())
}

/// `|a − b| ≤ tol·max(|a|, |b|)`.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

pub fn random_coeffs<R: Rng>(rng: &mut R, degree: usize, scale: f64) -> Vec<f64> {
    (0..=degree).map(|_| rng.gen_range(-scale..=scale)).collect()
}

pub fn random_poly<R: Rng>(rng: &mut R, degree: usize, scale: f64, var: usize) -> Expr {
    Expr::poly(&random_coeffs(rng, degree, scale), var)
}

/// A random expression in variable `var` that is finite, with bounded
/// derivatives, on `[−1, 1]`. Every singular operation is applied to an
/// argument kept away from its singularity.
pub fn random_expr<R: Rng>(rng: &mut R, depth: usize, var: usize) -> Expr {
    let leaf = |rng: &mut R| -> Expr {
        if rng.gen_bool(0.7) {
            Expr::affine(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5), var)
        } else {
            Expr::c(rng.gen_range(-2.0..2.0))
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    let a = random_expr(rng, depth - 1, var);
    // Bounded in [−1, 1] regardless of `a`.
    let bounded = |e: Expr| e.sin();
    match rng.gen_range(0..12) {
        0 => a + random_expr(rng, depth - 1, var),
        1 => a - random_expr(rng, depth - 1, var),
        2 => bounded(a) * bounded(random_expr(rng, depth - 1, var)),
        3 => a / (Expr::c(2.0) + bounded(random_expr(rng, depth - 1, var))),
        4 => (Expr::c(1.5) + bounded(a)).pow(rng.gen_range(-2.5..2.5)),
        5 => bounded(a).exp(),
        6 => (Expr::c(1.2) + bounded(a)).log(),
        7 => bounded(a),
        8 => a.cos(),
        9 => (Expr::c(0.9) * bounded(a)).tan(),
        10 => bounded(a).sinh(),
        _ => bounded(a).cosh(),
    }
}

pub fn random_fn<R: Rng>(rng: &mut R, depth: usize) -> SmoothFn1 {
    SmoothFn1::new(random_expr(rng, depth, 0), unit()).unwrap()
}

/// Translation surface in graph normal form with polynomial generators of
/// degree at most `degree` on `[−1, 1]²`.
pub fn random_translation_poly<R: Rng>(rng: &mut R, degree: usize, scale: f64) -> Surface {
    let mut f = || SmoothFn1::new(random_poly(rng, degree, scale, 0), unit()).unwrap();
    let (f1, f2, g1, g2) = (f(), f(), f(), f());
    Surface::translation_normal(f1, f2, g1, g2).unwrap()
}

/// Polynomial whose derivatives of every order are bounded by `scale·e` on
/// `[−1, 1]`: coefficient `k` is drawn from `[−scale, scale]/k!`.
pub fn random_unit_poly<R: Rng>(rng: &mut R, degree: usize, scale: f64, var: usize) -> Expr {
    let mut fact = 1.0;
    let coeffs: Vec<f64> = (0..=degree)
        .map(|k| {
            if k > 0 {
                fact *= k as f64;
            }
            rng.gen_range(-scale..=scale) / fact
        })
        .collect();
    Expr::poly(&coeffs, var)
}

/// Unit-scale translation surface in graph normal form.
pub fn random_translation_unit<R: Rng>(rng: &mut R, degree: usize) -> Surface {
    let mut f = || SmoothFn1::new(random_unit_poly(rng, degree, 1.0, 0), unit()).unwrap();
    let (f1, f2, g1, g2) = (f(), f(), f(), f());
    Surface::translation_normal(f1, f2, g1, g2).unwrap()
}

fn unit_fn<R: Rng>(rng: &mut R, scale: f64) -> Expr {
    random_unit_poly(rng, 5, scale, 0)
}

/// Unit-scale surfaces of every kind, built only from [`random_unit_poly`]
/// so that all embedding derivatives stay of order one on `[−1, 1]²`.
pub fn random_unit_surface<R: Rng>(rng: &mut R, kind: usize) -> Surface {
    match kind % 4 {
        0 => random_translation_unit(rng, 5),
        1 => {
            let mut curve = |main: usize| {
                let c = [0, 1, 2].map(|k| {
                    if k == main {
                        Expr::x() + unit_fn(rng, 0.3)
                    } else {
                        unit_fn(rng, if k == 2 { 1.0 } else { 0.3 })
                    }
                });
                Curve3::new(c, unit()).unwrap()
            };
            let (alpha, beta) = (curve(0), curve(1));
            Surface::translation(alpha, beta)
        }
        2 => {
            let axis = if rng.gen_bool(0.5) { GraphAxis::X } else { GraphAxis::Z };
            let f = SmoothFn1::new(unit_fn(rng, 0.7), unit()).unwrap();
            let g = SmoothFn1::new(unit_fn(rng, 0.7), unit()).unwrap();
            Surface::homothetical(f, g, axis)
        }
        _ => {
            let mut biv = |scale: f64| {
                let a = random_unit_poly(rng, 4, scale, 0);
                let b = random_unit_poly(rng, 4, 1.0, 1);
                a * b
            };
            let x = [
                Expr::affine(1.0, 0.0, 0) + biv(0.2),
                Expr::affine(1.0, 0.0, 1) + biv(0.2),
                biv(1.0) + biv(1.0),
            ];
            Surface::generic(x, unit_square()).unwrap()
        }
    }
}

/// Smooth, non-straight base curve on `[−1, 1]`: unit-scale polynomials plus
/// a low-frequency trigonometric term in every component.
pub fn random_base_curve<R: Rng>(rng: &mut R) -> Curve3 {
    let comps = [0, 1, 2].map(|_| {
        let (w, phase, amp) = (
            rng.gen_range(0.5..2.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(0.2..1.0),
        );
        unit_fn(rng, 1.0) + Expr::c(amp) * Expr::affine(w, phase, 0).sin()
    });
    Curve3::new(comps, unit()).unwrap()
}

/// Translation surface whose generators are general curves (not in graph
/// normal form).
pub fn random_translation_curves<R: Rng>(rng: &mut R) -> Surface {
    let alpha = Curve3::new(
        [
            Expr::x() + Expr::c(0.3) * random_expr(rng, 1, 0),
            Expr::c(0.3) * random_expr(rng, 2, 0),
            random_expr(rng, 2, 0),
        ],
        unit(),
    )
    .unwrap();
    let beta = Curve3::new(
        [
            Expr::c(0.3) * random_expr(rng, 2, 0),
            Expr::x() + Expr::c(0.3) * random_expr(rng, 1, 0),
            random_expr(rng, 2, 0),
        ],
        unit(),
    )
    .unwrap();
    Surface::translation(alpha, beta)
}

pub fn random_homothetical<R: Rng>(rng: &mut R, axis: GraphAxis, scale: f64) -> Surface {
    let f = SmoothFn1::new(Expr::c(scale) * random_expr(rng, 2, 0), unit()).unwrap();
    let g = SmoothFn1::new(Expr::c(scale) * random_expr(rng, 2, 0), unit()).unwrap();
    Surface::homothetical(f, g, axis)
}

/// Bivariate expression: sum of products of random univariate pieces.
pub fn random_bivariate<R: Rng>(rng: &mut R, scale: f64) -> Expr {
    let mut e = Expr::c(0.0);
    for _ in 0..2 {
        let a = random_expr(rng, 2, 0);
        let b = random_expr(rng, 2, 1);
        e = e + Expr::c(scale) * a.sin() * b.sin();
    }
    e
}

/// Graph-like generic surface `(s + εp, t + εq, r)` on `[−1, 1]²`.
pub fn random_generic_exprs<R: Rng>(rng: &mut R) -> [Expr; 3] {
    [
        Expr::affine(1.0, 0.0, 0) + random_bivariate(rng, 0.1),
        Expr::affine(1.0, 0.0, 1) + random_bivariate(rng, 0.1),
        random_bivariate(rng, 0.6),
    ]
}

pub fn random_generic<R: Rng>(rng: &mut R) -> Surface {
    Surface::generic(random_generic_exprs(rng), unit_square()).unwrap()
}

/// Random rotation matrix from a random unit quaternion.
pub fn random_rotation<R: Rng>(rng: &mut R) -> [[f64; 3]; 3] {
    let mut q: [f64; 4] = [0.0; 4];
    loop {
        for c in q.iter_mut() {
            *c = rng.gen_range(-1.0..1.0);
        }
        let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 0.1 {
            q.iter_mut().for_each(|c| *c /= n);
            break;
        }
    }
    let [w, x, y, z] = q;
    [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]
}

/// `λ·R·X + b` applied to embedding expressions.
pub fn transform(x: &[Expr; 3], r: &[[f64; 3]; 3], b: [f64; 3], lambda: f64) -> [Expr; 3] {
    [0, 1, 2].map(|i| {
        let mut e = Expr::c(b[i]);
        for j in 0..3 {
            e = e + Expr::c(lambda * r[i][j]) * x[j].clone();
        }
        e
    })
}

/// Value and first three derivatives of `f` at `x` from central differences
/// of the plain evaluator with steps `h` and `h/2`, Richardson-extrapolated.
pub fn fd_derivatives(f: &SmoothFn1, x: f64, h: f64) -> [f64; 4] {
    let e = |y: f64| f.eval(y).unwrap();
    let d1 = |h: f64| (e(x + h) - e(x - h)) / (2.0 * h);
    let d2 = |h: f64| (e(x + h) - 2.0 * e(x) + e(x - h)) / (h * h);
    let d3 = |h: f64| (e(x + 2.0 * h) - 2.0 * e(x + h) + 2.0 * e(x - h) - e(x - 2.0 * h)) / (2.0 * h * h * h);
    let rich = |d: &dyn Fn(f64) -> f64| (4.0 * d(h / 2.0) - d(h)) / 3.0;
    [e(x), rich(&d1), rich(&d2), rich(&d3)]
}

/// `n` random interior points keeping a margin of `pad` from the boundary.
pub fn interior_points<R: Rng>(rng: &mut R, rect: Rect, pad: f64, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| {
            (
                rng.gen_range(rect.s.lo + pad..rect.s.hi - pad),
                rng.gen_range(rect.t.lo + pad..rect.t.hi - pad),
            )
        })
        .collect()
}

/// Grid nodes of `rect`, row-major.
pub fn grid(rect: Rect, n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push((rect.s.node(i, n), rect.t.node(j, n)));
        }
    }
    out
}
