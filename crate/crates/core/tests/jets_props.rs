mod common;

use common::{fd_derivatives, random_expr, random_fn, rng, unit};
use proptest::prelude::*;
use surfcurv::jets::{bijet_combine, parse_univariate, BiJet2, Combine, Expr, SmoothFn1, UniJet3};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn jets_match_richardson_differences(seed in any::<u64>(), x in -0.9f64..0.9) {
        let mut r = rng(seed);
        let f = random_fn(&mut r, 3);
        let jet = f.jet(x).unwrap();
        let fd = fd_derivatives(&f, x, 1e-2);
        for (got, want) in [jet.v, jet.d1, jet.d2, jet.d3].into_iter().zip(fd) {
            prop_assert!(
                (got - want).abs() <= 1e-5 * got.abs().max(1.0),
                "{}: jet {:?} vs fd {:?}", f.to_sexpr(), jet, fd
            );
        }
    }

    #[test]
    fn cubics_are_exact(c in prop::array::uniform4(-8i32..=8), k in -16i32..=16) {
        let [c0, c1, c2, c3] = c.map(f64::from);
        let x = f64::from(k) / 8.0;
        let f = SmoothFn1::new(Expr::poly(&[c0, c1, c2, c3], 0), surfcurv::jets::Interval::new(-2.0, 2.0).unwrap()).unwrap();
        let j = f.jet(x).unwrap();
        prop_assert_eq!(j.v, c0 + c1 * x + c2 * x * x + c3 * x * x * x);
        prop_assert_eq!(j.d1, c1 + 2.0 * c2 * x + 3.0 * c3 * x * x);
        prop_assert_eq!(j.d2, 2.0 * c2 + 6.0 * c3 * x);
        prop_assert_eq!(j.d3, 6.0 * c3);
    }

    #[test]
    fn cubic_product_is_exact(a in -8i32..=8, b in -8i32..=8, k in -8i32..=8) {
        // (x + a)(x² + b) = x³ + a x² + b x + ab
        let (a, b, x) = (f64::from(a), f64::from(b), f64::from(k) / 4.0);
        let e = Expr::affine(1.0, a, 0) * (Expr::x() * Expr::x() + Expr::c(b));
        let j = e.eval_jet(&[UniJet3::variable(x)]).unwrap();
        prop_assert_eq!(j.v, x * x * x + a * x * x + b * x + a * b);
        prop_assert_eq!(j.d1, 3.0 * x * x + 2.0 * a * x + b);
        prop_assert_eq!(j.d2, 6.0 * x + 2.0 * a);
        prop_assert_eq!(j.d3, 6.0);
    }

    #[test]
    fn linearity(seed in any::<u64>(), ai in -64i32..=64, bi in -64i32..=64, x in -1.0f64..1.0) {
        let (a, b) = (f64::from(ai) / 16.0, f64::from(bi) / 16.0);
        let mut r = rng(seed);
        let (fe, ge) = (random_expr(&mut r, 2, 0), random_expr(&mut r, 2, 0));
        let combo = SmoothFn1::new(Expr::c(a) * fe.clone() + Expr::c(b) * ge.clone(), unit()).unwrap();
        let jf = SmoothFn1::new(fe, unit()).unwrap().jet(x).unwrap();
        let jg = SmoothFn1::new(ge, unit()).unwrap().jet(x).unwrap();
        let jc = combo.jet(x).unwrap();
        prop_assert_eq!(jc.v, a * jf.v + b * jg.v);
        prop_assert_eq!(jc.d1, a * jf.d1 + b * jg.d1);
        prop_assert_eq!(jc.d2, a * jf.d2 + b * jg.d2);
        prop_assert_eq!(jc.d3, a * jf.d3 + b * jg.d3);
    }

    #[test]
    fn bijet_add_separates_and_mul_is_the_product_rule(
        u in prop::array::uniform4(-10.0f64..10.0),
        w in prop::array::uniform4(-10.0f64..10.0),
    ) {
        let (u, w) = (UniJet3::new(u[0], u[1], u[2], u[3]), UniJet3::new(w[0], w[1], w[2], w[3]));
        let add = bijet_combine(u, w, Combine::Add).unwrap();
        prop_assert_eq!(add.dst, 0.0);
        prop_assert_eq!((add.v, add.ds, add.dt, add.dss, add.dtt), (u.v + w.v, u.d1, w.d1, u.d2, w.d2));
        let mul = bijet_combine(u, w, Combine::Mul).unwrap();
        prop_assert_eq!(mul.dst, u.d1 * w.d1);
        prop_assert_eq!((mul.v, mul.ds, mul.dt), (u.v * w.v, u.d1 * w.v, u.v * w.d1));
        prop_assert_eq!((mul.dss, mul.dtt), (u.d2 * w.v, u.v * w.d2));
        let one = bijet_combine(UniJet3::new(1.0, 0.0, 0.0, 0.0), w, Combine::Mul).unwrap();
        prop_assert_eq!(one, BiJet2::lift_t(w));
    }

    #[test]
    fn printing_then_parsing_is_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = random_expr(&mut r, 3, 0);
        let text = e.to_sexpr(&["x"]);
        let back = parse_univariate(&text).unwrap();
        prop_assert_eq!(back.to_sexpr(&["x"]), text);
        prop_assert_eq!(back, e);
    }
}

#[test]
fn documented_examples() {
    let at = |e: Expr, x: f64| {
        let j = e.eval_jet(&[UniJet3::variable(x)]).unwrap();
        (j.v, j.d1, j.d2, j.d3)
    };
    assert_eq!(at(Expr::x().exp(), 0.0), (1.0, 1.0, 1.0, 1.0));
    // tan''' = 2 tan'² + 2 tan·tan'', so 2 at the origin.
    assert_eq!(at(Expr::x().tan(), 0.0), (0.0, 1.0, 0.0, 2.0));
    assert_eq!(at(Expr::x() * Expr::x(), 3.0), (9.0, 6.0, 2.0, 0.0));
    let e = parse_univariate("(mul (pow (add (mul 0.5 x) 1.0) 2.0) 3.0)").unwrap();
    // 3(x/2 + 1)² at x = 2: 12, 6, 1.5, 0
    assert_eq!(at(e, 2.0), (12.0, 6.0, 1.5, 0.0));
}
