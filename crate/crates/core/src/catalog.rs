//! Named surface families: the classical minimal examples (Scherk, helicoid),
//! the flat homothetical families and their Lorentzian counterparts.
//!
//! Default domains keep every `tan`, `log∘cos` and power base at least `0.1`
//! away from its singularity.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Curve3, GraphAxis, Metric, Rect, Surface};
use crate::jets::{Expr, Interval, SmoothFn1};
use crate::verify::Quantity;

/// Clearance kept from singularities by default domains.
pub const MARGIN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Plane,
    CircularCylinder,
    CylindricalOverCurve,
    Scherk,
    Helicoid,
    ExpHomothetical,
    PowerHomothetical,
    LorentzSpacelikeExp,
    LorentzTimelikeExp,
    LorentzPowerHomothetical,
}

impl FamilyName {
    pub const ALL: [FamilyName; 10] = [
        FamilyName::Plane,
        FamilyName::CircularCylinder,
        FamilyName::CylindricalOverCurve,
        FamilyName::Scherk,
        FamilyName::Helicoid,
        FamilyName::ExpHomothetical,
        FamilyName::PowerHomothetical,
        FamilyName::LorentzSpacelikeExp,
        FamilyName::LorentzTimelikeExp,
        FamilyName::LorentzPowerHomothetical,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FamilyName::Plane => "plane",
            FamilyName::CircularCylinder => "circular_cylinder",
            FamilyName::CylindricalOverCurve => "cylindrical_over_curve",
            FamilyName::Scherk => "scherk",
            FamilyName::Helicoid => "helicoid",
            FamilyName::ExpHomothetical => "exp_homothetical",
            FamilyName::PowerHomothetical => "power_homothetical",
            FamilyName::LorentzSpacelikeExp => "lorentz_spacelike_exp",
            FamilyName::LorentzTimelikeExp => "lorentz_timelike_exp",
            FamilyName::LorentzPowerHomothetical => "lorentz_power_homothetical",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.id() == id)
    }

    /// Parameter names with their canonical default values.
    pub fn defaults(self) -> &'static [(&'static str, f64)] {
        match self {
            FamilyName::Plane => &[("p", 0.0), ("q", 0.0)],
            FamilyName::CircularCylinder => &[("r", 1.0)],
            FamilyName::CylindricalOverCurve => &[("x0", 1.0), ("k", 1.0)],
            FamilyName::Scherk => &[("a", 1.0)],
            FamilyName::Helicoid => &[("b", 0.0), ("c", 1.0), ("d", 0.0)],
            FamilyName::ExpHomothetical => &[("a", 1.0), ("b", 1.0), ("c", 1.0)],
            FamilyName::PowerHomothetical => &[("b", 1.0), ("c", 1.0), ("d", 2.0), ("e", 2.0), ("m", 3.0)],
            FamilyName::LorentzSpacelikeExp => &[("a", 0.1), ("b", 0.5), ("c", 0.5)],
            FamilyName::LorentzTimelikeExp => &[("a", 1.0), ("b", 1.0), ("c", 0.5)],
            FamilyName::LorentzPowerHomothetical => &[("b", 0.2), ("c", 0.2), ("d", 2.0), ("e", 2.0), ("m", 3.0)],
        }
    }

    pub fn metric(self) -> Metric {
        match self {
            FamilyName::LorentzSpacelikeExp | FamilyName::LorentzTimelikeExp | FamilyName::LorentzPowerHomothetical => {
                Metric::Lorentzian
            }
            _ => Metric::Euclidean,
        }
    }

    /// Curvature identities the family satisfies everywhere.
    pub fn claims(self) -> &'static [(Quantity, f64)] {
        match self {
            FamilyName::Plane => &[(Quantity::K, 0.0), (Quantity::H, 0.0)],
            FamilyName::Scherk | FamilyName::Helicoid => &[(Quantity::H, 0.0)],
            _ => &[(Quantity::K, 0.0)],
        }
    }
}

/// One parameterized member of a family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub family: FamilyName,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Rect>,
}

impl FamilySpec {
    pub fn new(family: FamilyName) -> Self {
        Self {
            family,
            params: BTreeMap::new(),
            domain: None,
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_domain(mut self, domain: Rect) -> Self {
        self.domain = Some(domain);
        self
    }

    /// Parameter map with defaults filled in; unknown keys are an error.
    pub fn resolved_params(&self) -> Result<BTreeMap<String, f64>> {
        let defaults = self.family.defaults();
        let mut out: BTreeMap<String, f64> = defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        for (k, v) in &self.params {
            if !out.contains_key(k) {
                let known: Vec<_> = defaults.iter().map(|(k, _)| *k).collect();
                return Err(Error::spec(
                    format!("params.{k}"),
                    format!("unknown parameter for {} (expected one of {known:?})", self.family.id()),
                ));
            }
            if !v.is_finite() {
                return Err(Error::spec(format!("params.{k}"), "must be finite"));
            }
            out.insert(k.clone(), *v);
        }
        Ok(out)
    }
}

fn interval(lo: f64, hi: f64) -> Interval {
    Interval { lo, hi }
}

fn unit_square() -> Rect {
    Rect::new(interval(-1.0, 1.0), interval(-1.0, 1.0))
}

fn func(e: Expr, domain: Interval) -> Result<SmoothFn1> {
    SmoothFn1::new(e, domain)
}

/// Sub-interval of `range` on which `slope·v + offset ≥ MARGIN`.
fn positive_base_range(slope: f64, offset: f64, range: Interval, key: &str) -> Result<Interval> {
    let (mut lo, mut hi) = (range.lo, range.hi);
    if slope > 0.0 {
        lo = lo.max((MARGIN - offset) / slope);
    } else if slope < 0.0 {
        hi = hi.min((MARGIN - offset) / slope);
    } else if offset < MARGIN {
        lo = f64::INFINITY;
    }
    if lo < hi {
        Ok(interval(lo, hi))
    } else {
        Err(Error::spec(
            key,
            format!("power base {slope}·v + {offset} is not positive anywhere on {range}"),
        ))
    }
}

fn check_positive_base(slope: f64, offset: f64, range: Interval, key: &str) -> Result<()> {
    let ends = [slope * range.lo + offset, slope * range.hi + offset];
    if ends.iter().all(|&b| b > 0.0) {
        Ok(())
    } else {
        Err(Error::spec(
            key,
            format!("power base {slope}·v + {offset} is not positive on {range}"),
        ))
    }
}

/// Checks that `u(v) = slope·v + offset` keeps clear of the poles of `tan`
/// over `range`.
fn check_tan_range(slope: f64, offset: f64, range: Interval, key: &str) -> Result<()> {
    let (a, b) = (slope * range.lo + offset, slope * range.hi + offset);
    let (lo, hi) = (a.min(b), a.max(b));
    let branch = ((lo + FRAC_PI_2) / PI).floor();
    let pole_below = branch * PI - FRAC_PI_2;
    if lo > pole_below && hi < pole_below + PI {
        Ok(())
    } else {
        Err(Error::spec(
            key,
            format!("tan argument range [{lo}, {hi}] crosses a pole"),
        ))
    }
}

fn nonzero(p: &BTreeMap<String, f64>, key: &str) -> Result<f64> {
    let v = p[key];
    if v == 0.0 {
        Err(Error::spec(format!("params.{key}"), "must be non-zero"))
    } else {
        Ok(v)
    }
}

fn positive(p: &BTreeMap<String, f64>, key: &str) -> Result<f64> {
    let v = p[key];
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::spec(
            format!("params.{key}"),
            format!("must be positive, got {v}"),
        ))
    }
}

/// `z = (bx/m + d)^m (cy/(m−1) + e)^(1−m)`, `b, c ≠ 0`, `m ∉ {0, 1}`.
///
/// With `domain = None` the unit square is clipped to where both bases are at
/// least [`MARGIN`]; an explicit domain must keep both bases positive.
pub fn power_surface(b: f64, c: f64, d: f64, e: f64, m: f64, domain: Option<Rect>, axis: GraphAxis) -> Result<Surface> {
    if b == 0.0 || c == 0.0 {
        return Err(Error::spec(
            if b == 0.0 { "params.b" } else { "params.c" },
            "must be non-zero",
        ));
    }
    if m == 0.0 || m == 1.0 {
        return Err(Error::spec("params.m", "must differ from 0 and 1"));
    }
    let (sx, sy) = (b / m, c / (m - 1.0));
    let domain = match domain {
        Some(r) => {
            check_positive_base(sx, d, r.s, "domain")?;
            check_positive_base(sy, e, r.t, "domain")?;
            r
        }
        None => {
            let sq = unit_square();
            Rect::new(
                positive_base_range(sx, d, sq.s, "params")?,
                positive_base_range(sy, e, sq.t, "params")?,
            )
        }
    };
    let f = func(Expr::affine(sx, d, 0).pow(m), domain.s)?;
    let g = func(Expr::affine(sy, e, 0).pow(1.0 - m), domain.t)?;
    Ok(Surface::homothetical(f, g, axis))
}

/// The same flat family written through the exponent `a ≠ 0, 1` of the
/// branch equations `f' = b f^a`, `g' = c g^(1/a)`:
///
/// `f = ((1−a)bx + p)^(1/(1−a))`, `g = (((a−1)/a)cy + q)^(a/(a−1))`.
pub fn branch_power_surface(a: f64, b: f64, c: f64, p: f64, q: f64, domain: Rect) -> Result<Surface> {
    if a == 0.0 || a == 1.0 {
        return Err(Error::spec("a", "branch exponent must differ from 0 and 1"));
    }
    let (sx, sy) = ((1.0 - a) * b, (a - 1.0) / a * c);
    check_positive_base(sx, p, domain.s, "domain")?;
    check_positive_base(sy, q, domain.t, "domain")?;
    let f = func(Expr::affine(sx, p, 0).pow(1.0 / (1.0 - a)), domain.s)?;
    let g = func(Expr::affine(sy, q, 0).pow(a / (a - 1.0)), domain.t)?;
    Ok(Surface::homothetical(f, g, GraphAxis::Z))
}

/// `z = a·e^(bx + cy)` written as `f = a·e^(bx)`, `g = e^(cy)`.
pub fn exp_surface(a: f64, b: f64, c: f64, domain: Rect, axis: GraphAxis) -> Result<Surface> {
    let f = func(Expr::c(a) * (Expr::c(b) * Expr::x()).exp(), domain.s)?;
    let g = func((Expr::c(c) * Expr::x()).exp(), domain.t)?;
    Ok(Surface::homothetical(f, g, axis))
}

/// Helicoid `z = (x + b)·tan(cy + d)`.
pub fn helicoid_surface(b: f64, c: f64, d: f64, domain: Option<Rect>) -> Result<Surface> {
    if c == 0.0 {
        return Err(Error::spec("params.c", "must be non-zero"));
    }
    let domain = match domain {
        Some(r) => {
            check_tan_range(c, d, r.t, "domain")?;
            r
        }
        None => {
            let (u0, u1) = ((-FRAC_PI_2 + MARGIN - d) / c, (FRAC_PI_2 - MARGIN - d) / c);
            Rect::new(interval(-1.0, 1.0), interval(u0.min(u1), u0.max(u1)))
        }
    };
    let f = func(Expr::affine(1.0, b, 0), domain.s)?;
    let g = func(Expr::affine(c, d, 0).tan(), domain.t)?;
    Ok(Surface::homothetical(f, g, GraphAxis::Z))
}

/// Scherk's surface `z = (1/a) log(cos(ay)/cos(ax))` as the translation surface
/// `α = (s, 0, −(1/a) log cos(as))`, `β = (0, t, (1/a) log cos(at))`.
pub fn scherk_surface(a: f64, domain: Option<Rect>) -> Result<Surface> {
    if a.is_nan() || a <= 0.0 {
        return Err(Error::spec("params.a", format!("must be positive, got {a}")));
    }
    let half = (FRAC_PI_2 - MARGIN) / a;
    let domain = match domain {
        Some(r) => {
            let limit = FRAC_PI_2 / a;
            for (iv, name) in [(r.s, "s"), (r.t, "t")] {
                if iv.lo <= -limit || iv.hi >= limit {
                    return Err(Error::spec(
                        "domain",
                        format!("{name}-range {iv} reaches a zero of cos(a·v)"),
                    ));
                }
            }
            r
        }
        None => Rect::new(interval(-half, half), interval(-half, half)),
    };
    let logcos = || (Expr::c(a) * Expr::x()).cos().log();
    let zero = |i| SmoothFn1::constant(0.0, i);
    let f = func(Expr::c(-1.0 / a) * logcos(), domain.s)?;
    let g = func(Expr::c(1.0 / a) * logcos(), domain.t)?;
    Surface::translation_normal(zero(domain.s), f, zero(domain.t), g)
}

fn build(name: FamilyName, p: &BTreeMap<String, f64>, domain: Option<Rect>) -> Result<Surface> {
    let dom = domain.unwrap_or_else(unit_square);
    match name {
        FamilyName::Plane => {
            let zero = |i| SmoothFn1::constant(0.0, i);
            Surface::translation_normal(
                zero(dom.s),
                func(Expr::c(p["p"]) * Expr::x(), dom.s)?,
                zero(dom.t),
                func(Expr::c(p["q"]) * Expr::x(), dom.t)?,
            )
        }
        FamilyName::CircularCylinder => {
            let r = positive(p, "r")?;
            let dom = domain.unwrap_or(Rect::new(interval(-PI, PI), interval(-1.0, 1.0)));
            let alpha = Curve3::new(
                [Expr::c(0.0), Expr::c(r) * Expr::x().cos(), Expr::c(r) * Expr::x().sin()],
                dom.s,
            )?;
            let beta = Curve3::new([Expr::x(), Expr::c(0.0), Expr::c(0.0)], dom.t)?;
            Ok(Surface::translation(alpha, beta))
        }
        FamilyName::CylindricalOverCurve => {
            let base = Curve3::new(
                [
                    Expr::c(0.0),
                    Expr::x(),
                    Expr::c(p["x0"]) * (Expr::c(p["k"]) * Expr::x()).cos(),
                ],
                dom.s,
            )?;
            Surface::cylindrical(base, [1.0, 0.0, 0.0], dom.t)
        }
        FamilyName::Scherk => scherk_surface(p["a"], domain),
        FamilyName::Helicoid => helicoid_surface(p["b"], p["c"], p["d"], domain),
        FamilyName::ExpHomothetical | FamilyName::LorentzSpacelikeExp | FamilyName::LorentzTimelikeExp => {
            let (a, b, c) = (positive(p, "a")?, positive(p, "b")?, positive(p, "c")?);
            let axis = if name == FamilyName::LorentzTimelikeExp {
                GraphAxis::X
            } else {
                GraphAxis::Z
            };
            exp_surface(a, b, c, dom, axis)
        }
        FamilyName::PowerHomothetical | FamilyName::LorentzPowerHomothetical => {
            let (b, c) = (nonzero(p, "b")?, nonzero(p, "c")?);
            power_surface(b, c, p["d"], p["e"], p["m"], domain, GraphAxis::Z)
        }
    }
}

/// Builds the surface described by `spec`, validating its parameters and
/// that every function is finite on a sample of the domain.
pub fn make_family(spec: &FamilySpec) -> Result<Surface> {
    let params = spec.resolved_params()?;
    let surface = build(spec.family, &params, spec.domain)?;
    surface
        .probe_domain(33)
        .map_err(|e| Error::spec("domain", format!("{} is singular on its domain: {e}", spec.family.id())))?;
    Ok(surface)
}

/// One canonical member of every family, with its default domain filled in.
pub fn list_families() -> Vec<FamilySpec> {
    FamilyName::ALL
        .into_iter()
        .map(|name| {
            let spec = FamilySpec::new(name);
            let params = spec.resolved_params().expect("defaults are valid");
            let domain = build(name, &params, None).expect("defaults are valid").domain();
            FamilySpec {
                family: name,
                params,
                domain: Some(domain),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{fundamental_forms, gauss_curvature, mean_curvature};

    fn grid_max(surface: &Surface, metric: Metric, n: usize, q: Quantity) -> f64 {
        let d = surface.domain();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let (s, t) = (d.s.node(i, n), d.t.node(j, n));
                let v = match q {
                    Quantity::K => gauss_curvature(surface, metric, s, t),
                    Quantity::H => mean_curvature(surface, metric, s, t),
                }
                .unwrap();
                worst = worst.max(v.abs());
            }
        }
        worst
    }

    #[test]
    fn scherk_is_minimal_on_wide_grid() {
        let dom = Rect::from_bounds(-1.4, 1.4, -1.4, 1.4).unwrap();
        let s = make_family(&FamilySpec::new(FamilyName::Scherk).with("a", 1.0).with_domain(dom)).unwrap();
        assert!(grid_max(&s, Metric::Euclidean, 21, Quantity::H) < 1e-10);
        let k = gauss_curvature(&s, Metric::Euclidean, 0.0, 0.0).unwrap();
        assert!(k < 0.0);
    }

    #[test]
    fn helicoid_example() {
        let spec = FamilySpec::new(FamilyName::Helicoid)
            .with("b", 0.5)
            .with("c", 2.0)
            .with("d", 0.3);
        let s = make_family(&spec).unwrap();
        assert!(grid_max(&s, Metric::Euclidean, 15, Quantity::H) < 1e-10);
    }

    #[test]
    fn power_example() {
        let s = make_family(&FamilySpec::new(FamilyName::PowerHomothetical)).unwrap();
        assert!(grid_max(&s, Metric::Euclidean, 15, Quantity::K) < 1e-9);
    }

    #[test]
    fn listed_families_build_and_keep_their_claims() {
        let all = list_families();
        assert_eq!(all.len(), FamilyName::ALL.len());
        let scherk = all.iter().find(|f| f.family == FamilyName::Scherk).unwrap();
        assert_eq!(scherk.params["a"], 1.0);
        let exp = all.iter().find(|f| f.family == FamilyName::ExpHomothetical).unwrap();
        assert_eq!((exp.params["a"], exp.params["b"], exp.params["c"]), (1.0, 1.0, 1.0));
        for spec in &all {
            let s = make_family(spec).unwrap();
            let metric = spec.family.metric();
            for &(q, want) in spec.family.claims() {
                let tol = match q {
                    Quantity::K => 1e-9,
                    Quantity::H => 1e-10,
                };
                let worst = grid_max(&s, metric, 11, q);
                assert!((worst - want).abs() <= tol, "{:?} {q:?} {worst}", spec.family);
            }
        }
    }

    #[test]
    fn invalid_parameters_name_the_key() {
        let cases = [
            (FamilySpec::new(FamilyName::Scherk).with("a", -1.0), "params.a"),
            (FamilySpec::new(FamilyName::Helicoid).with("c", 0.0), "params.c"),
            (FamilySpec::new(FamilyName::ExpHomothetical).with("b", 0.0), "params.b"),
            (
                FamilySpec::new(FamilyName::PowerHomothetical).with("m", 1.0),
                "params.m",
            ),
            (
                FamilySpec::new(FamilyName::PowerHomothetical).with("b", 0.0),
                "params.b",
            ),
            (FamilySpec::new(FamilyName::Plane).with("zz", 1.0), "params.zz"),
        ];
        for (spec, key) in cases {
            match make_family(&spec) {
                Err(Error::Spec { key: k, .. }) => assert_eq!(k, key),
                other => panic!("{spec:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn explicit_domains_are_checked() {
        let bad = Rect::from_bounds(-1.6, 1.0, -1.0, 1.0).unwrap();
        assert!(make_family(&FamilySpec::new(FamilyName::Scherk).with_domain(bad)).is_err());
        let bad = Rect::from_bounds(-1.0, 1.0, -1.0, 2.0).unwrap();
        assert!(make_family(&FamilySpec::new(FamilyName::Helicoid).with_domain(bad)).is_err());
        let bad = Rect::from_bounds(-7.0, 1.0, -1.0, 1.0).unwrap();
        assert!(make_family(&FamilySpec::new(FamilyName::PowerHomothetical).with_domain(bad)).is_err());
    }

    #[test]
    fn lorentz_families_respect_causality() {
        for name in [
            FamilyName::LorentzSpacelikeExp,
            FamilyName::LorentzTimelikeExp,
            FamilyName::LorentzPowerHomothetical,
        ] {
            let s = make_family(&FamilySpec::new(name)).unwrap();
            let d = s.domain();
            for i in 0..9 {
                for j in 0..9 {
                    let ff = fundamental_forms(&s, Metric::Lorentzian, d.s.node(i, 9), d.t.node(j, 9)).unwrap();
                    let want = s.required_character(Metric::Lorentzian).unwrap();
                    assert_eq!(ff.character, want);
                }
            }
        }
    }

    #[test]
    fn power_domain_is_clipped_to_positive_bases() {
        // x/0.5 + 0.5 ≥ 0.1 for x ≥ -0.2
        let s = power_surface(1.0, 1.0, 0.5, 2.0, 0.5, None, GraphAxis::Z).unwrap();
        assert!((s.domain().s.lo - (-0.2)).abs() < 1e-15);
        assert_eq!(s.domain().s.hi, 1.0);
    }
}
