use serde::{Deserialize, Serialize};

use super::{Metric, Vec3};
use crate::error::{Error, Result};
use crate::geometry::forms::CausalCharacter;
use crate::jets::{bijet_combine, BiJet2, Combine, Expr, Interval, Jet, SmoothFn1, UniJet3};

/// Parameter rectangle `s ∈ [s.lo, s.hi]`, `t ∈ [t.lo, t.hi]`. Serialized as
/// `[[s0, s1], [t0, t1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct Rect {
    pub s: Interval,
    pub t: Interval,
}

impl Rect {
    pub fn new(s: Interval, t: Interval) -> Self {
        Self { s, t }
    }

    pub fn from_bounds(s0: f64, s1: f64, t0: f64, t1: f64) -> Result<Self> {
        Ok(Self::new(Interval::new(s0, s1)?, Interval::new(t0, t1)?))
    }

    pub fn contains(&self, s: f64, t: f64) -> bool {
        self.s.contains(s) && self.t.contains(t)
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.s.contains_interval(&other.s) && self.t.contains_interval(&other.t)
    }

    pub fn as_array(&self) -> [[f64; 2]; 2] {
        [[self.s.lo, self.s.hi], [self.t.lo, self.t.hi]]
    }
}

impl TryFrom<[[f64; 2]; 2]> for Rect {
    type Error = Error;

    fn try_from(r: [[f64; 2]; 2]) -> Result<Self> {
        Rect::from_bounds(r[0][0], r[0][1], r[1][0], r[1][1])
    }
}

impl From<Rect> for [[f64; 2]; 2] {
    fn from(r: Rect) -> Self {
        r.as_array()
    }
}

/// A space curve whose three coordinate functions share one parameter interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve3 {
    comps: [SmoothFn1; 3],
}

impl Curve3 {
    pub fn new(comps: [Expr; 3], domain: Interval) -> Result<Self> {
        let [a, b, c] = comps;
        Ok(Self {
            comps: [
                SmoothFn1::new(a, domain)?,
                SmoothFn1::new(b, domain)?,
                SmoothFn1::new(c, domain)?,
            ],
        })
    }

    pub fn from_fns(comps: [SmoothFn1; 3]) -> Result<Self> {
        let d = comps[0].domain();
        if comps.iter().any(|c| c.domain() != d) {
            return Err(Error::spec("curve", "components have different parameter intervals"));
        }
        Ok(Self { comps })
    }

    pub fn domain(&self) -> Interval {
        self.comps[0].domain()
    }

    pub fn component(&self, i: usize) -> &SmoothFn1 {
        &self.comps[i]
    }

    pub fn components(&self) -> &[SmoothFn1; 3] {
        &self.comps
    }

    pub fn jets(&self, t: f64) -> Result<[UniJet3; 3]> {
        Ok([self.comps[0].jet(t)?, self.comps[1].jet(t)?, self.comps[2].jet(t)?])
    }

    pub fn point(&self, t: f64) -> Result<Vec3> {
        Ok([self.comps[0].eval(t)?, self.comps[1].eval(t)?, self.comps[2].eval(t)?])
    }

    /// Derivative vectors `(c', c'', c''')` at `t`.
    pub fn derivatives(&self, t: f64) -> Result<[Vec3; 3]> {
        let j = self.jets(t)?;
        Ok([
            [j[0].d1, j[1].d1, j[2].d1],
            [j[0].d2, j[1].d2, j[2].d2],
            [j[0].d3, j[1].d3, j[2].d3],
        ])
    }
}

/// Which coordinate a homothetical graph solves for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GraphAxis {
    /// `z = f(x)·g(y)`, parameters `(s, t) = (x, y)`.
    #[default]
    Z,
    /// `x = f(y)·g(z)`, parameters `(s, t) = (y, z)`.
    X,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceKind {
    /// `X(s, t) = α(s) + β(t)`.
    Translation { alpha: Curve3, beta: Curve3 },
    HomotheticalGraph {
        f: SmoothFn1,
        g: SmoothFn1,
        axis: GraphAxis,
    },
    /// Three expressions in `(s, t)`.
    GenericParametric { x: [Expr; 3] },
    /// `X(s, t) = base(s) + t·direction`.
    Cylindrical { base: Curve3, direction: Vec3 },
}

/// A parametrized surface together with its parameter rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    kind: SurfaceKind,
    domain: Rect,
}

impl Surface {
    pub fn translation(alpha: Curve3, beta: Curve3) -> Self {
        let domain = Rect::new(alpha.domain(), beta.domain());
        Self {
            kind: SurfaceKind::Translation { alpha, beta },
            domain,
        }
    }

    /// `α(s) = (s, f1(s), f2(s))`, `β(t) = (g1(t), t, g2(t))`.
    pub fn translation_normal(f1: SmoothFn1, f2: SmoothFn1, g1: SmoothFn1, g2: SmoothFn1) -> Result<Self> {
        let i = f1.domain();
        let j = g1.domain();
        let alpha = Curve3::from_fns([SmoothFn1::new(Expr::x(), i)?, f1, f2])?;
        let beta = Curve3::from_fns([g1, SmoothFn1::new(Expr::x(), j)?, g2])?;
        Ok(Self::translation(alpha, beta))
    }

    pub fn homothetical(f: SmoothFn1, g: SmoothFn1, axis: GraphAxis) -> Self {
        let domain = Rect::new(f.domain(), g.domain());
        Self {
            kind: SurfaceKind::HomotheticalGraph { f, g, axis },
            domain,
        }
    }

    pub fn generic(x: [Expr; 3], domain: Rect) -> Result<Self> {
        if x.iter().any(|e| e.arity() > 2) {
            return Err(Error::spec(
                "embedding",
                "expressions may only use the parameters s and t",
            ));
        }
        Ok(Self {
            kind: SurfaceKind::GenericParametric { x },
            domain,
        })
    }

    pub fn cylindrical(base: Curve3, direction: Vec3, t_range: Interval) -> Result<Self> {
        if direction.iter().all(|&d| d == 0.0) || direction.iter().any(|d| !d.is_finite()) {
            return Err(Error::spec(
                "direction",
                "ruling direction must be a finite non-zero vector",
            ));
        }
        let domain = Rect::new(base.domain(), t_range);
        Ok(Self {
            kind: SurfaceKind::Cylindrical { base, direction },
            domain,
        })
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    pub fn domain(&self) -> Rect {
        self.domain
    }

    /// Same surface restricted to a sub-rectangle.
    pub fn restricted(&self, domain: Rect) -> Result<Self> {
        if !self.domain.contains_rect(&domain) {
            return Err(Error::spec(
                "domain",
                format!(
                    "{:?} is not inside the surface domain {:?}",
                    domain.as_array(),
                    self.domain.as_array()
                ),
            ));
        }
        let curve = |c: &Curve3, i: Interval| {
            Curve3::from_fns([
                c.component(0).with_domain(i),
                c.component(1).with_domain(i),
                c.component(2).with_domain(i),
            ])
        };
        let kind = match &self.kind {
            SurfaceKind::Translation { alpha, beta } => SurfaceKind::Translation {
                alpha: curve(alpha, domain.s)?,
                beta: curve(beta, domain.t)?,
            },
            SurfaceKind::HomotheticalGraph { f, g, axis } => SurfaceKind::HomotheticalGraph {
                f: f.with_domain(domain.s),
                g: g.with_domain(domain.t),
                axis: *axis,
            },
            SurfaceKind::GenericParametric { x } => SurfaceKind::GenericParametric { x: x.clone() },
            SurfaceKind::Cylindrical { base, direction } => SurfaceKind::Cylindrical {
                base: curve(base, domain.s)?,
                direction: *direction,
            },
        };
        Ok(Self { kind, domain })
    }

    /// `(f1, f2, g1, g2)` when the surface is a translation surface in graph
    /// normal form `α = (s, f1, f2)`, `β = (g1, t, g2)`.
    pub fn translation_normal_form(&self) -> Option<[&SmoothFn1; 4]> {
        match &self.kind {
            SurfaceKind::Translation { alpha, beta }
                if *alpha.component(0).expr() == Expr::x() && *beta.component(1).expr() == Expr::x() =>
            {
                Some([
                    alpha.component(1),
                    alpha.component(2),
                    beta.component(0),
                    beta.component(2),
                ])
            }
            _ => None,
        }
    }

    /// Generating curves when the surface is a sum of two curves. A cylinder
    /// is one, with a straight second generator.
    pub fn generators(&self) -> Option<(Curve3, Curve3)> {
        match &self.kind {
            SurfaceKind::Translation { alpha, beta } => Some((alpha.clone(), beta.clone())),
            SurfaceKind::Cylindrical { base, direction } => {
                let line = [0, 1, 2].map(|i| Expr::c(direction[i]) * Expr::x());
                Curve3::new(line, self.domain.t).ok().map(|l| (base.clone(), l))
            }
            _ => None,
        }
    }

    /// Causal character a Lorentzian evaluation must have, if the surface
    /// carries such a constraint. Homothetical `z`-graphs are the spacelike
    /// case, `x`-graphs the timelike one.
    pub fn required_character(&self, metric: Metric) -> Option<CausalCharacter> {
        match (&self.kind, metric) {
            (SurfaceKind::HomotheticalGraph { axis, .. }, Metric::Lorentzian) => Some(match axis {
                GraphAxis::Z => CausalCharacter::Spacelike,
                GraphAxis::X => CausalCharacter::Timelike,
            }),
            _ => None,
        }
    }

    /// True for a cylinder whose rulings are null vectors of `metric`.
    pub fn lightlike_ruling(&self, metric: Metric) -> bool {
        match &self.kind {
            SurfaceKind::Cylindrical { direction, .. } => {
                let nn = metric.inner(direction, direction);
                nn.abs() <= super::DEGENERACY_TOL * direction.iter().map(|d| d * d).sum::<f64>()
            }
            _ => false,
        }
    }

    fn check_domain(&self, s: f64, t: f64) -> Result<()> {
        if self.domain.contains(s, t) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "({s}, {t}) outside surface domain {:?}",
                self.domain.as_array()
            )))
        }
    }

    /// Embedding jets `X, X_s, X_t, X_ss, X_st, X_tt`, one [`BiJet2`] per
    /// coordinate.
    pub fn jets(&self, s: f64, t: f64) -> Result<[BiJet2; 3]> {
        self.check_domain(s, t)?;
        let out = match &self.kind {
            SurfaceKind::Translation { alpha, beta } => {
                let a = alpha.jets(s)?;
                let b = beta.jets(t)?;
                [
                    bijet_combine(a[0], b[0], Combine::Add)?,
                    bijet_combine(a[1], b[1], Combine::Add)?,
                    bijet_combine(a[2], b[2], Combine::Add)?,
                ]
            }
            SurfaceKind::HomotheticalGraph { f, g, axis } => {
                let h = bijet_combine(f.jet(s)?, g.jet(t)?, Combine::Mul)?;
                match axis {
                    GraphAxis::Z => [BiJet2::var_s(s), BiJet2::var_t(t), h],
                    GraphAxis::X => [h, BiJet2::var_s(s), BiJet2::var_t(t)],
                }
            }
            SurfaceKind::GenericParametric { x } => {
                let vars = [BiJet2::var_s(s), BiJet2::var_t(t)];
                [x[0].eval_jet(&vars)?, x[1].eval_jet(&vars)?, x[2].eval_jet(&vars)?]
            }
            SurfaceKind::Cylindrical { base, direction } => {
                let b = base.jets(s)?;
                let line = |d: f64| UniJet3::new(d * t, d, 0.0, 0.0);
                [
                    bijet_combine(b[0], line(direction[0]), Combine::Add)?,
                    bijet_combine(b[1], line(direction[1]), Combine::Add)?,
                    bijet_combine(b[2], line(direction[2]), Combine::Add)?,
                ]
            }
        };
        Ok(out)
    }

    /// Embedding point through plain floating-point evaluation (no jets).
    pub fn point(&self, s: f64, t: f64) -> Result<Vec3> {
        self.check_domain(s, t)?;
        let p = match &self.kind {
            SurfaceKind::Translation { alpha, beta } => {
                let a = alpha.point(s)?;
                let b = beta.point(t)?;
                [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
            }
            SurfaceKind::HomotheticalGraph { f, g, axis } => {
                let h = f.eval(s)? * g.eval(t)?;
                match axis {
                    GraphAxis::Z => [s, t, h],
                    GraphAxis::X => [h, s, t],
                }
            }
            SurfaceKind::GenericParametric { x } => {
                let v = [s, t];
                [x[0].eval_f64(&v)?, x[1].eval_f64(&v)?, x[2].eval_f64(&v)?]
            }
            SurfaceKind::Cylindrical { base, direction } => {
                let b = base.point(s)?;
                [
                    b[0] + t * direction[0],
                    b[1] + t * direction[1],
                    b[2] + t * direction[2],
                ]
            }
        };
        if p.iter().all(|c| c.is_finite()) {
            Ok(p)
        } else {
            Err(Error::Domain(format!("non-finite point at ({s}, {t})")))
        }
    }

    /// Jet-evaluated embedding point.
    pub fn position(&self, s: f64, t: f64) -> Result<Vec3> {
        let j = self.jets(s, t)?;
        Ok([j[0].value(), j[1].value(), j[2].value()])
    }

    /// Checks that every function of the surface evaluates on an `n × n`
    /// sample of its domain. Reports the first failure.
    pub fn probe_domain(&self, n: usize) -> Result<()> {
        let n = n.max(2);
        for i in 0..n {
            for j in 0..n {
                let (s, t) = (self.domain.s.node(i, n), self.domain.t.node(j, n));
                self.jets(s, t)
                    .map_err(|e| Error::Domain(format!("at (s={s}, t={t}): {e}")))?;
            }
        }
        Ok(())
    }
}
