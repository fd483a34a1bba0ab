mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use surfcurv::catalog::{
    branch_power_surface, exp_surface, helicoid_surface, list_families, make_family, power_surface, FamilyName,
    FamilySpec,
};
use surfcurv::geometry::{GraphAxis, Rect};
use surfcurv::verify::{check_constancy, sample_curvature, GridSpec, Quantity};

/// Exponent away from the excluded values 0 and 1.
fn exponent(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..hi).prop_filter("m must avoid 0 and 1", |m: &f64| m.abs() > 0.1 && (m - 1.0).abs() > 0.1)
}

fn signed(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..hi, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v })
}

fn passes_claims(spec: &FamilySpec) -> Result<(), String> {
    let s = make_family(spec).map_err(|e| e.to_string())?;
    let grid = GridSpec::over(s.domain(), 21, 21).map_err(|e| e.to_string())?;
    let samples = sample_curvature(&s, spec.family.metric(), &grid).map_err(|e| e.to_string())?;
    for &(q, v) in spec.family.claims() {
        let r = check_constancy(&samples, q, Some(v), q.default_tol());
        if !r.passed() {
            return Err(format!("{spec:?}: {r:?}"));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_family_symmetry(
        b in signed(0.3, 2.0), c in signed(0.3, 2.0),
        d in 1.5f64..3.0, e in 1.5f64..3.0, m in exponent(-3.0, 4.0),
        seed in any::<u64>(),
    ) {
        let s = power_surface(b, c, d, e, m, None, GraphAxis::Z).unwrap();
        let dom = s.domain();
        let swapped = power_surface(-c, -b, e, d, 1.0 - m, Some(Rect::new(dom.t, dom.s)), GraphAxis::Z).unwrap();
        for (x, y) in interior_points(&mut rng(seed), dom, 0.0, 16) {
            let (p, q) = (s.point(x, y).unwrap(), swapped.point(y, x).unwrap());
            prop_assert!(rel_close(p[2], q[2], 1e-12) || p[2] == q[2], "{} vs {}", p[2], q[2]);
        }
    }

    #[test]
    fn branch_and_power_parameterizations_agree(
        a in exponent(-3.0, 3.0).prop_filter("a ≠ 0", |a: &f64| a.abs() > 0.1),
        b in signed(0.3, 2.0), c in signed(0.3, 2.0),
        p in 1.5f64..3.0, q in 1.5f64..3.0,
        seed in any::<u64>(),
    ) {
        let dom = Rect::from_bounds(-0.2, 0.2, -0.2, 0.2).unwrap();
        let branch = branch_power_surface(a, b, c, p, q, dom);
        prop_assume!(branch.is_ok());
        let branch = branch.unwrap();
        let m = 1.0 / (1.0 - a);
        let power = power_surface(b, -c, p, q, m, Some(dom), GraphAxis::Z).unwrap();
        for (x, y) in interior_points(&mut rng(seed), dom, 0.0, 16).into_iter().chain(grid(dom, 5)) {
            let (u, v) = (branch.point(x, y).unwrap()[2], power.point(x, y).unwrap()[2]);
            prop_assert!((u - v).abs() <= 1e-10 * u.abs().max(1.0), "{} vs {}", u, v);
        }
    }

    #[test]
    fn helicoids_are_minimal(b in -2.0f64..2.0, c in 0.5f64..2.0, d in -1.0f64..1.0) {
        let spec = FamilySpec::new(FamilyName::Helicoid).with("b", b).with("c", c).with("d", d);
        prop_assert!(passes_claims(&spec).is_ok(), "{:?}", passes_claims(&spec));
    }

    #[test]
    fn exp_family_is_flat(a in 0.1f64..3.0, b in 0.1f64..2.0, c in 0.1f64..2.0) {
        let spec = FamilySpec::new(FamilyName::ExpHomothetical).with("a", a).with("b", b).with("c", c);
        prop_assert!(passes_claims(&spec).is_ok(), "{:?}", passes_claims(&spec));
    }

    #[test]
    fn power_family_is_flat(
        b in signed(0.3, 2.0), c in signed(0.3, 2.0),
        d in 1.0f64..3.0, e in 1.0f64..3.0, m in exponent(-3.0, 4.0),
    ) {
        let spec = FamilySpec::new(FamilyName::PowerHomothetical)
            .with("b", b).with("c", c).with("d", d).with("e", e).with("m", m);
        prop_assert!(passes_claims(&spec).is_ok(), "{:?}", passes_claims(&spec));
    }

    #[test]
    fn scherk_is_minimal(a in 0.3f64..3.0) {
        let spec = FamilySpec::new(FamilyName::Scherk).with("a", a);
        prop_assert!(passes_claims(&spec).is_ok(), "{:?}", passes_claims(&spec));
    }

    #[test]
    fn lorentz_flat_families(a in 0.05f64..0.15, b in 0.2f64..0.8, c in 0.2f64..0.8, m in exponent(-3.0, 4.0)) {
        let space = FamilySpec::new(FamilyName::LorentzSpacelikeExp).with("a", a).with("b", b).with("c", c);
        prop_assert!(passes_claims(&space).is_ok(), "{:?}", passes_claims(&space));
        // b > c keeps the whole domain timelike; near the lightlike boundary
        // the absolute K tolerance is below the roundoff floor.
        let time = FamilySpec::new(FamilyName::LorentzTimelikeExp)
            .with("a", 10.0 * a).with("b", b.max(c) + 0.1).with("c", b.min(c));
        prop_assert!(passes_claims(&time).is_ok(), "{:?}", passes_claims(&time));
        let power = FamilySpec::new(FamilyName::LorentzPowerHomothetical)
            .with("b", 0.3 * b).with("c", 0.3 * c).with("m", m);
        prop_assert!(passes_claims(&power).is_ok(), "{:?}", passes_claims(&power));
    }
}

#[test]
fn every_listed_family_satisfies_its_claims() {
    let all = list_families();
    assert_eq!(all.len(), FamilyName::ALL.len());
    for spec in &all {
        passes_claims(spec).unwrap();
    }
}

#[test]
fn exp_surface_is_flat_along_either_axis() {
    let mut r = rng(11);
    for _ in 0..10 {
        let (a, b, c) = (r.gen_range(0.1..2.0), r.gen_range(0.1..1.0), r.gen_range(0.1..1.0));
        let s = exp_surface(a, b, c, unit_square(), GraphAxis::X).unwrap();
        let samples = sample_curvature(
            &s,
            surfcurv::geometry::Metric::Euclidean,
            &GridSpec::over(unit_square(), 11, 11).unwrap(),
        )
        .unwrap();
        assert!(check_constancy(&samples, Quantity::K, Some(0.0), Quantity::K.default_tol()).passed());
    }
}

#[test]
fn helicoid_domains_avoid_poles() {
    assert!(helicoid_surface(0.0, 1.0, 0.0, Some(Rect::from_bounds(-1.0, 1.0, -1.6, 1.0).unwrap())).is_err());
    let s = helicoid_surface(0.0, 2.0, 0.3, None).unwrap();
    let t = s.domain().t;
    assert!(2.0 * t.lo + 0.3 > -std::f64::consts::FRAC_PI_2 && 2.0 * t.hi + 0.3 < std::f64::consts::FRAC_PI_2);
}
