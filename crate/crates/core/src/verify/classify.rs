use serde::{Deserialize, Serialize};

use super::{sample_curvature, GridSpec, K_TOL};
use crate::error::{Error, Result};
use crate::geometry::{Curve3, Metric, Surface, Vec3};

/// Number of samples used by the straightness test.
const STRAIGHT_SAMPLES: usize = 101;
const STRAIGHT_TOL: f64 = 1.0e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlatClass {
    Plane,
    /// Rulings parallel to the given unit vector.
    CylindricalAlong([f64; 3]),
    NotFlat,
    /// Flat on the grid but neither generator is straight.
    Unclassified,
}

/// `max |c''| ≤ 1e−10·(1 + max |c|)` over 101 samples of the curve.
pub fn is_straight(c: &Curve3) -> Result<bool> {
    let dom = c.domain();
    let (mut acc, mut size) = (0.0f64, 0.0f64);
    for i in 0..STRAIGHT_SAMPLES {
        let t = dom.node(i, STRAIGHT_SAMPLES);
        let p = c.point(t)?;
        let [_, d2, _] = c.derivatives(t)?;
        size = p.iter().fold(size, |m, v| m.max(v.abs()));
        acc = d2.iter().fold(acc, |m, v| m.max(v.abs()));
    }
    Ok(acc <= STRAIGHT_TOL * (1.0 + size))
}

fn unit_tangent(c: &Curve3) -> Result<Vec3> {
    let [d1, _, _] = c.derivatives(c.domain().mid())?;
    let n = (d1[0] * d1[0] + d1[1] * d1[1] + d1[2] * d1[2]).sqrt();
    if n == 0.0 {
        return Err(Error::Domain("generator has a vanishing tangent".into()));
    }
    Ok([d1[0] / n, d1[1] / n, d1[2] / n])
}

/// Classifies a translation surface (or cylinder) that is flat on `grid`.
///
/// A straight first generator wins over a straight second one; both straight
/// is a plane.
pub fn classify_flat_translation(surface: &Surface, grid: &GridSpec) -> Result<FlatClass> {
    let (alpha, beta) = surface
        .generators()
        .ok_or_else(|| Error::spec("kind", "flat classification needs a translation surface"))?;
    let samples = sample_curvature(surface, Metric::Euclidean, grid)?;
    if samples.samples.iter().any(|s| s.k.abs() > K_TOL) {
        return Ok(FlatClass::NotFlat);
    }
    Ok(match (is_straight(&alpha)?, is_straight(&beta)?) {
        (true, true) => FlatClass::Plane,
        (true, false) => FlatClass::CylindricalAlong(unit_tangent(&alpha)?),
        (false, true) => FlatClass::CylindricalAlong(unit_tangent(&beta)?),
        (false, false) => FlatClass::Unclassified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_family, FamilyName, FamilySpec};
    use crate::geometry::line_angle;
    use crate::jets::{Expr, Interval};

    fn unit() -> Interval {
        Interval::new(-1.0, 1.0).unwrap()
    }

    #[test]
    fn straight_alpha_gives_its_direction() {
        let alpha = Curve3::new([Expr::x(), Expr::c(2.0) * Expr::x(), Expr::c(3.0) * Expr::x()], unit()).unwrap();
        let beta = Curve3::new([Expr::x().sin(), Expr::x(), Expr::x() * Expr::x()], unit()).unwrap();
        let s = Surface::translation(alpha, beta);
        let grid = GridSpec::over(s.domain(), 9, 9).unwrap();
        match classify_flat_translation(&s, &grid).unwrap() {
            FlatClass::CylindricalAlong(d) => assert!(line_angle(&d, &[1.0, 2.0, 3.0]) < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn plane_and_scherk() {
        let plane = make_family(&FamilySpec::new(FamilyName::Plane).with("p", 0.3).with("q", -2.0)).unwrap();
        let grid = GridSpec::over(plane.domain(), 5, 5).unwrap();
        assert_eq!(classify_flat_translation(&plane, &grid).unwrap(), FlatClass::Plane);

        let scherk = make_family(&FamilySpec::new(FamilyName::Scherk)).unwrap();
        let grid = GridSpec::over(scherk.domain(), 5, 5).unwrap();
        assert_eq!(classify_flat_translation(&scherk, &grid).unwrap(), FlatClass::NotFlat);
    }

    #[test]
    fn cylinders_over_curves() {
        let cyl = make_family(&FamilySpec::new(FamilyName::CylindricalOverCurve)).unwrap();
        let grid = GridSpec::over(cyl.domain(), 7, 7).unwrap();
        assert_eq!(
            classify_flat_translation(&cyl, &grid).unwrap(),
            FlatClass::CylindricalAlong([1.0, 0.0, 0.0])
        );
        let circ = make_family(&FamilySpec::new(FamilyName::CircularCylinder)).unwrap();
        let grid = GridSpec::over(circ.domain(), 7, 7).unwrap();
        assert_eq!(
            classify_flat_translation(&circ, &grid).unwrap(),
            FlatClass::CylindricalAlong([1.0, 0.0, 0.0])
        );
    }

    #[test]
    fn rejects_other_kinds() {
        let exp = make_family(&FamilySpec::new(FamilyName::ExpHomothetical)).unwrap();
        let grid = GridSpec::over(exp.domain(), 3, 3).unwrap();
        assert!(matches!(
            classify_flat_translation(&exp, &grid),
            Err(Error::Spec { .. })
        ));
    }
}
