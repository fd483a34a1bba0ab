//! Derivative-free simplex minimization with the standard coefficients
//! (reflection 1, expansion 2, contraction 1/2, shrink 1/2).

/// Stopping rules for [`minimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Edge length of the initial simplex.
    pub step: f64,
    pub max_evals: usize,
    /// Stop once the spread of simplex values falls below this.
    pub ftol: f64,
    /// Rebuild the simplex around the best vertex this many times after
    /// convergence, to escape collapsed simplices.
    pub rebuilds: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            step: 0.5,
            max_evals: 4000,
            ftol: 1e-16,
            rebuilds: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evals: usize,
}

/// Non-finite objective values count as `+∞`.
fn eval<F: FnMut(&[f64]) -> f64>(f: &mut F, x: &[f64], evals: &mut usize) -> f64 {
    *evals += 1;
    let v = f(x);
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Minimizes `f` from `x0`. Deterministic: ties are broken by vertex index.
pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], opts: NelderMeadOptions) -> NelderMeadResult {
    let n = x0.len();
    let mut evals = 0;
    let mut iterations = 0;
    let mut best_x = x0.to_vec();
    let mut best_v = eval(&mut f, x0, &mut evals);
    if n == 0 {
        return NelderMeadResult {
            x: best_x,
            value: best_v,
            iterations,
            evals,
        };
    }
    let mut step = opts.step;
    for _round in 0..=opts.rebuilds {
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((best_x.clone(), best_v));
        for i in 0..n {
            let mut v = best_x.clone();
            v[i] += step;
            let fv = eval(&mut f, &v, &mut evals);
            simplex.push((v, fv));
        }
        while evals < opts.max_evals {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let (lo, hi) = (simplex[0].1, simplex[n].1);
            if (hi - lo).abs() <= opts.ftol * (1.0 + lo.abs()) || !lo.is_finite() && !hi.is_finite() {
                break;
            }
            iterations += 1;
            let mut centroid = vec![0.0; n];
            for (v, _) in &simplex[..n] {
                for k in 0..n {
                    centroid[k] += v[k] / n as f64;
                }
            }
            let along = |w: f64, worst: &[f64]| -> Vec<f64> {
                (0..n).map(|k| centroid[k] + w * (worst[k] - centroid[k])).collect()
            };
            let worst = simplex[n].0.clone();
            let xr = along(-1.0, &worst);
            let fr = eval(&mut f, &xr, &mut evals);
            if fr < simplex[0].1 {
                let xe = along(-2.0, &worst);
                let fe = eval(&mut f, &xe, &mut evals);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
            } else {
                let (xc, fc) = if fr < simplex[n].1 {
                    let xc = along(-0.5, &worst);
                    let fc = eval(&mut f, &xc, &mut evals);
                    (xc, fc)
                } else {
                    let xc = along(0.5, &worst);
                    let fc = eval(&mut f, &xc, &mut evals);
                    (xc, fc)
                };
                if fc < fr.min(simplex[n].1) {
                    simplex[n] = (xc, fc);
                } else {
                    let x0 = simplex[0].0.clone();
                    for (v, fv) in simplex.iter_mut().skip(1) {
                        for k in 0..n {
                            v[k] = x0[k] + 0.5 * (v[k] - x0[k]);
                        }
                        *fv = eval(&mut f, v, &mut evals);
                    }
                }
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[0].1 <= best_v {
            best_x = simplex[0].0.clone();
            best_v = simplex[0].1;
        }
        if evals >= opts.max_evals {
            break;
        }
        step *= 0.1;
    }
    NelderMeadResult {
        x: best_x,
        value: best_v,
        iterations,
        evals,
    }
}
