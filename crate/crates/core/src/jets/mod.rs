//! Truncated Taylor jets.
//!
//! [`UniJet3`] carries a value and three derivatives in one variable, [`BiJet2`]
//! a value and all partials up to order two in two variables. Both propagate
//! derivatives exactly through arithmetic and elementary functions via the
//! chain rule, so the only error left is floating-point roundoff.

mod expr;
mod sexpr;

pub use expr::{Expr, Func, Interval, SmoothFn1};
pub use sexpr::{parse_bivariate, parse_univariate};

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Common surface of the two jet types, enough to evaluate an [`Expr`].
pub trait Jet: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn constant(c: f64) -> Self;

    fn value(&self) -> f64;

    /// Composes `φ ∘ self`, where `d[k]` is the k-th derivative of `φ` at
    /// `self.value()`.
    fn chain(self, d: [f64; 4]) -> Self;

    fn is_finite(&self) -> bool;
}

/// Value and first three derivatives of a function of one variable.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct UniJet3 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl UniJet3 {
    pub const fn new(v: f64, d1: f64, d2: f64, d3: f64) -> Self {
        Self { v, d1, d2, d3 }
    }

    /// The identity function seeded at `x`.
    pub const fn variable(x: f64) -> Self {
        Self::new(x, 1.0, 0.0, 0.0)
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(k * self.v, k * self.d1, k * self.d2, k * self.d3)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.v, self.d1, self.d2, self.d3]
    }
}

impl Jet for UniJet3 {
    fn constant(c: f64) -> Self {
        Self::new(c, 0.0, 0.0, 0.0)
    }

    fn value(&self) -> f64 {
        self.v
    }

    // Faà di Bruno to order three.
    fn chain(self, d: [f64; 4]) -> Self {
        let (u1, u2, u3) = (self.d1, self.d2, self.d3);
        Self::new(
            d[0],
            d[1] * u1,
            d[2] * u1 * u1 + d[1] * u2,
            d[3] * u1 * u1 * u1 + 3.0 * d[2] * u1 * u2 + d[1] * u3,
        )
    }

    fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite() && self.d3.is_finite()
    }
}

impl Add for UniJet3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2, self.d3 + o.d3)
    }
}

impl Sub for UniJet3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2, self.d3 - o.d3)
    }
}

impl Neg for UniJet3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.v, -self.d1, -self.d2, -self.d3)
    }
}

impl Mul for UniJet3 {
    type Output = Self;
    // Leibniz rule.
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self, o);
        Self::new(
            a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3,
        )
    }
}

/// Value and partial derivatives to order two in `(s, t)`. The mixed partial
/// has a single slot, so symmetry holds by construction.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BiJet2 {
    pub v: f64,
    pub ds: f64,
    pub dt: f64,
    pub dss: f64,
    pub dst: f64,
    pub dtt: f64,
}

impl BiJet2 {
    pub const fn new(v: f64, ds: f64, dt: f64, dss: f64, dst: f64, dtt: f64) -> Self {
        Self {
            v,
            ds,
            dt,
            dss,
            dst,
            dtt,
        }
    }

    pub const fn var_s(s: f64) -> Self {
        Self::new(s, 1.0, 0.0, 0.0, 0.0, 0.0)
    }

    pub const fn var_t(t: f64) -> Self {
        Self::new(t, 0.0, 1.0, 0.0, 0.0, 0.0)
    }

    /// A function of `s` alone.
    pub const fn lift_s(u: UniJet3) -> Self {
        Self::new(u.v, u.d1, 0.0, u.d2, 0.0, 0.0)
    }

    /// A function of `t` alone.
    pub const fn lift_t(w: UniJet3) -> Self {
        Self::new(w.v, 0.0, w.d1, 0.0, 0.0, w.d2)
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(
            k * self.v,
            k * self.ds,
            k * self.dt,
            k * self.dss,
            k * self.dst,
            k * self.dtt,
        )
    }
}

impl Jet for BiJet2 {
    fn constant(c: f64) -> Self {
        Self::new(c, 0.0, 0.0, 0.0, 0.0, 0.0)
    }

    fn value(&self) -> f64 {
        self.v
    }

    fn chain(self, d: [f64; 4]) -> Self {
        let u = self;
        Self::new(
            d[0],
            d[1] * u.ds,
            d[1] * u.dt,
            d[2] * u.ds * u.ds + d[1] * u.dss,
            d[2] * u.ds * u.dt + d[1] * u.dst,
            d[2] * u.dt * u.dt + d[1] * u.dtt,
        )
    }

    fn is_finite(&self) -> bool {
        [self.v, self.ds, self.dt, self.dss, self.dst, self.dtt]
            .iter()
            .all(|x| x.is_finite())
    }
}

impl Add for BiJet2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.v + o.v,
            self.ds + o.ds,
            self.dt + o.dt,
            self.dss + o.dss,
            self.dst + o.dst,
            self.dtt + o.dtt,
        )
    }
}

impl Sub for BiJet2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.v - o.v,
            self.ds - o.ds,
            self.dt - o.dt,
            self.dss - o.dss,
            self.dst - o.dst,
            self.dtt - o.dtt,
        )
    }
}

impl Neg for BiJet2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for BiJet2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self, o);
        Self::new(
            a.v * b.v,
            a.ds * b.v + a.v * b.ds,
            a.dt * b.v + a.v * b.dt,
            a.dss * b.v + 2.0 * a.ds * b.ds + a.v * b.dss,
            a.dst * b.v + a.ds * b.dt + a.dt * b.ds + a.v * b.dst,
            a.dtt * b.v + 2.0 * a.dt * b.dt + a.v * b.dtt,
        )
    }
}

/// How two separated univariate jets are joined into a bivariate one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Add,
    Mul,
}

/// Joins `u(s)` and `w(t)` into `u(s) + w(t)` or `u(s)·w(t)`.
///
/// The sum has `dst = 0` exactly; the product has `dst = u'·w'` exactly.
pub fn bijet_combine(u: UniJet3, w: UniJet3, op: Combine) -> Result<BiJet2> {
    let out = match op {
        Combine::Add => BiJet2::new(u.v + w.v, u.d1, w.d1, u.d2, 0.0, w.d2),
        Combine::Mul => BiJet2::new(u.v * w.v, u.d1 * w.v, u.v * w.d1, u.d2 * w.v, u.d1 * w.d1, u.v * w.d2),
    };
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Domain(format!("non-finite jet combination {out:?}")))
    }
}

/// Evaluates `f` at `x` with exact derivatives to order three.
pub fn jet_eval(f: &SmoothFn1, x: f64) -> Result<UniJet3> {
    f.jet(x)
}
