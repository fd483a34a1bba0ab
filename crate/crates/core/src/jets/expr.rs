use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::Jet;
use crate::error::{Error, Result};
use crate::jets::UniJet3;

/// Elementary functions of the expression grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
}

impl Func {
    pub const ALL: [Func; 7] = [
        Func::Exp,
        Func::Log,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Value and first three derivatives of the function at `x`.
    fn derivatives(self, x: f64) -> Result<[f64; 4]> {
        let d = match self {
            Func::Exp => {
                let e = x.exp();
                [e, e, e, e]
            }
            Func::Log => {
                if x <= 0.0 {
                    return Err(Error::Domain(format!("log of non-positive value {x}")));
                }
                let r = 1.0 / x;
                [x.ln(), r, -r * r, 2.0 * r * r * r]
            }
            Func::Sin => {
                let (s, c) = x.sin_cos();
                [s, c, -s, -c]
            }
            Func::Cos => {
                let (s, c) = x.sin_cos();
                [c, -s, -c, s]
            }
            Func::Tan => {
                if x.cos() == 0.0 {
                    return Err(Error::Domain(format!("tan pole at {x}")));
                }
                let t = x.tan();
                let sec2 = 1.0 + t * t;
                [t, sec2, 2.0 * t * sec2, 2.0 * sec2 * (1.0 + 3.0 * t * t)]
            }
            Func::Sinh => {
                let (s, c) = (x.sinh(), x.cosh());
                [s, c, s, c]
            }
            Func::Cosh => {
                let (s, c) = (x.sinh(), x.cosh());
                [c, s, c, s]
            }
        };
        Ok(d)
    }

    fn apply_f64(self, x: f64) -> Result<f64> {
        match self {
            Func::Exp => Ok(x.exp()),
            Func::Log if x > 0.0 => Ok(x.ln()),
            Func::Log => Err(Error::Domain(format!("log of non-positive value {x}"))),
            Func::Sin => Ok(x.sin()),
            Func::Cos => Ok(x.cos()),
            Func::Tan => Ok(x.tan()),
            Func::Sinh => Ok(x.sinh()),
            Func::Cosh => Ok(x.cosh()),
        }
    }
}

/// Closed expression over at most two variables (`Var(0)`, `Var(1)`).
///
/// Univariate functions only ever mention `Var(0)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Power with a fixed real exponent.
    Pow(Box<Expr>, f64),
    Apply(Func, Box<Expr>),
}

fn is_small_integer(r: f64) -> bool {
    r.fract() == 0.0 && r.abs() <= 1.0e6
}

fn checked<J: Jet>(j: J, what: &str) -> Result<J> {
    if j.is_finite() {
        Ok(j)
    } else {
        Err(Error::Domain(format!("non-finite result in {what}")))
    }
}

/// `base^r` with the non-integer-exponent rule: the base must be positive.
fn real_power(base: f64, r: f64) -> Result<f64> {
    if is_small_integer(r) {
        Ok(base.powi(r as i32))
    } else if base > 0.0 {
        Ok(base.powf(r))
    } else {
        Err(Error::Domain(format!(
            "non-integer power {r} of non-positive base {base}"
        )))
    }
}

fn power_derivatives(base: f64, r: f64) -> Result<[f64; 4]> {
    if !is_small_integer(r) && base <= 0.0 {
        return Err(Error::Domain(format!(
            "non-integer power {r} of non-positive base {base}"
        )));
    }
    let mut out = [0.0; 4];
    let mut coeff = 1.0;
    for (k, slot) in out.iter_mut().enumerate() {
        if k > 0 {
            coeff *= r - (k as f64 - 1.0);
        }
        // x^2 at 0 has a zero third derivative, not 0·0^-1.
        *slot = if coeff == 0.0 {
            0.0
        } else {
            coeff * real_power(base, r - k as f64)?
        };
    }
    Ok(out)
}

impl Expr {
    pub fn c(value: f64) -> Expr {
        Expr::Const(value)
    }

    /// The first variable (`x` of a univariate function, `s` of a surface).
    pub fn x() -> Expr {
        Expr::Var(0)
    }

    /// The second surface variable `t`.
    pub fn t() -> Expr {
        Expr::Var(1)
    }

    pub fn pow(self, r: f64) -> Expr {
        Expr::Pow(Box::new(self), r)
    }

    pub fn apply(self, f: Func) -> Expr {
        Expr::Apply(f, Box::new(self))
    }

    pub fn exp(self) -> Expr {
        self.apply(Func::Exp)
    }
    pub fn log(self) -> Expr {
        self.apply(Func::Log)
    }
    pub fn sin(self) -> Expr {
        self.apply(Func::Sin)
    }
    pub fn cos(self) -> Expr {
        self.apply(Func::Cos)
    }
    pub fn tan(self) -> Expr {
        self.apply(Func::Tan)
    }
    pub fn sinh(self) -> Expr {
        self.apply(Func::Sinh)
    }
    pub fn cosh(self) -> Expr {
        self.apply(Func::Cosh)
    }

    /// `Σ coeffs[k]·v^k` in Horner form over variable `var`.
    pub fn poly(coeffs: &[f64], var: usize) -> Expr {
        let mut it = coeffs.iter().rev();
        let Some(&lead) = it.next() else {
            return Expr::c(0.0);
        };
        it.fold(Expr::c(lead), |acc, &c| Expr::c(c) + acc * Expr::Var(var))
    }

    /// `a·v + b` over variable `var`.
    pub fn affine(a: f64, b: f64, var: usize) -> Expr {
        Expr::c(a) * Expr::Var(var) + Expr::c(b)
    }

    /// One more than the largest variable index used, 0 for constants.
    pub fn arity(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => i + 1,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Apply(_, a) => a.arity(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.arity().max(b.arity()),
        }
    }

    /// Replaces every `Var(var)` by `with`.
    pub fn substitute(&self, var: usize, with: &Expr) -> Expr {
        let sub = |e: &Expr| Box::new(e.substitute(var, with));
        match self {
            Expr::Var(i) if *i == var => with.clone(),
            Expr::Const(_) | Expr::Var(_) => self.clone(),
            Expr::Add(a, b) => Expr::Add(sub(a), sub(b)),
            Expr::Sub(a, b) => Expr::Sub(sub(a), sub(b)),
            Expr::Mul(a, b) => Expr::Mul(sub(a), sub(b)),
            Expr::Div(a, b) => Expr::Div(sub(a), sub(b)),
            Expr::Neg(a) => Expr::Neg(sub(a)),
            Expr::Pow(a, r) => Expr::Pow(sub(a), *r),
            Expr::Apply(f, a) => Expr::Apply(*f, sub(a)),
        }
    }

    /// Exchanges the roles of the two variables.
    pub fn swap_vars(&self) -> Expr {
        // Park Var(0) at an unused index while the swap happens.
        self.substitute(0, &Expr::Var(2))
            .substitute(1, &Expr::Var(0))
            .substitute(2, &Expr::Var(1))
    }

    /// Jet evaluation with `vars[i]` bound to `Var(i)`. Fails on any
    /// singular intermediate or non-finite result.
    pub fn eval_jet<J: Jet>(&self, vars: &[J]) -> Result<J> {
        let out = match self {
            Expr::Const(c) => J::constant(*c),
            Expr::Var(i) => *vars
                .get(*i)
                .ok_or_else(|| Error::Domain(format!("unbound variable #{i}")))?,
            Expr::Add(a, b) => a.eval_jet(vars)? + b.eval_jet(vars)?,
            Expr::Sub(a, b) => a.eval_jet(vars)? - b.eval_jet(vars)?,
            Expr::Neg(a) => -a.eval_jet(vars)?,
            Expr::Mul(a, b) => a.eval_jet(vars)? * b.eval_jet(vars)?,
            Expr::Div(a, b) => {
                let num = a.eval_jet(vars)?;
                let den = b.eval_jet(vars)?;
                let v = den.value();
                if v == 0.0 {
                    return Err(Error::Domain("division by zero".into()));
                }
                let r = 1.0 / v;
                num * den.chain([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
            }
            Expr::Pow(a, r) => {
                let base = a.eval_jet(vars)?;
                base.chain(power_derivatives(base.value(), *r)?)
            }
            Expr::Apply(f, a) => {
                let inner = a.eval_jet(vars)?;
                inner.chain(f.derivatives(inner.value())?)
            }
        };
        checked(out, self.head())
    }

    /// Plain floating-point evaluation. Shares no code with the jet path.
    pub fn eval_f64(&self, vars: &[f64]) -> Result<f64> {
        let out = match self {
            Expr::Const(c) => *c,
            Expr::Var(i) => *vars
                .get(*i)
                .ok_or_else(|| Error::Domain(format!("unbound variable #{i}")))?,
            Expr::Add(a, b) => a.eval_f64(vars)? + b.eval_f64(vars)?,
            Expr::Sub(a, b) => a.eval_f64(vars)? - b.eval_f64(vars)?,
            Expr::Neg(a) => -a.eval_f64(vars)?,
            Expr::Mul(a, b) => a.eval_f64(vars)? * b.eval_f64(vars)?,
            Expr::Div(a, b) => {
                let den = b.eval_f64(vars)?;
                if den == 0.0 {
                    return Err(Error::Domain("division by zero".into()));
                }
                a.eval_f64(vars)? / den
            }
            Expr::Pow(a, r) => real_power(a.eval_f64(vars)?, *r)?,
            Expr::Apply(f, a) => f.apply_f64(a.eval_f64(vars)?)?,
        };
        if out.is_finite() {
            Ok(out)
        } else {
            Err(Error::Domain(format!("non-finite result in {}", self.head())))
        }
    }

    fn head(&self) -> &'static str {
        match self {
            Expr::Const(_) => "constant",
            Expr::Var(_) => "variable",
            Expr::Add(..) => "add",
            Expr::Sub(..) => "sub",
            Expr::Neg(_) => "sub",
            Expr::Mul(..) => "mul",
            Expr::Div(..) => "div",
            Expr::Pow(..) => "pow",
            Expr::Apply(f, _) => f.name(),
        }
    }

    /// Renders the prefix S-expression form; `names[i]` spells `Var(i)`.
    pub fn to_sexpr(&self, names: &[&str]) -> String {
        let mut out = String::new();
        self.write_sexpr(&mut out, names);
        out
    }

    fn write_sexpr(&self, out: &mut String, names: &[&str]) {
        use std::fmt::Write;
        let binary = |out: &mut String, op: &str, a: &Expr, b: &Expr| {
            out.push('(');
            out.push_str(op);
            out.push(' ');
            a.write_sexpr(out, names);
            out.push(' ');
            b.write_sexpr(out, names);
            out.push(')');
        };
        match self {
            Expr::Const(c) => {
                let _ = write!(out, "{c}");
            }
            Expr::Var(i) => out.push_str(names.get(*i).copied().unwrap_or("?")),
            Expr::Add(a, b) => binary(out, "add", a, b),
            Expr::Sub(a, b) => binary(out, "sub", a, b),
            Expr::Mul(a, b) => binary(out, "mul", a, b),
            Expr::Div(a, b) => binary(out, "div", a, b),
            Expr::Neg(a) => {
                out.push_str("(sub ");
                a.write_sexpr(out, names);
                out.push(')');
            }
            Expr::Pow(a, r) => {
                out.push_str("(pow ");
                a.write_sexpr(out, names);
                let _ = write!(out, " {r})");
            }
            Expr::Apply(f, a) => {
                out.push('(');
                out.push_str(f.name());
                out.push(' ');
                a.write_sexpr(out, names);
                out.push(')');
            }
        }
    }
}

macro_rules! expr_binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl $trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

expr_binop!(Add, add, Add);
expr_binop!(Sub, sub, Sub);
expr_binop!(Mul, mul, Mul);
expr_binop!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

/// Closed interval `[lo, hi]`, serialized as a two-element array.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::spec(
                "interval",
                format!("[{lo}, {hi}] is not a finite ordered interval"),
            ));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.contains(other.lo) && self.contains(other.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// The i-th of `n ≥ 2` uniformly spaced nodes; the ends are hit exactly.
    pub fn node(&self, i: usize, n: usize) -> f64 {
        if i == 0 {
            self.lo
        } else if i + 1 == n {
            self.hi
        } else {
            self.lo + self.width() * (i as f64) / ((n - 1) as f64)
        }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A function of one variable together with its declared validity interval.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothFn1 {
    expr: Expr,
    domain: Interval,
}

impl SmoothFn1 {
    pub fn new(expr: Expr, domain: Interval) -> Result<Self> {
        if expr.arity() > 1 {
            return Err(Error::spec(
                "expression",
                "univariate function mentions a second variable",
            ));
        }
        Ok(Self { expr, domain })
    }

    pub fn constant(c: f64, domain: Interval) -> Self {
        Self {
            expr: Expr::c(c),
            domain,
        }
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn with_domain(&self, domain: Interval) -> Self {
        Self {
            expr: self.expr.clone(),
            domain,
        }
    }

    fn check_in_domain(&self, x: f64) -> Result<()> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{x} outside validity interval {}", self.domain)))
        }
    }

    pub fn jet(&self, x: f64) -> Result<UniJet3> {
        self.check_in_domain(x)?;
        self.expr.eval_jet(&[UniJet3::variable(x)])
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check_in_domain(x)?;
        self.expr.eval_f64(&[x])
    }

    /// Samples `n` uniform points of the validity interval and reports the
    /// first one where evaluation fails.
    pub fn probe_domain(&self, n: usize) -> Result<()> {
        let n = n.max(2);
        for i in 0..n {
            let x = self.domain.node(i, n);
            self.jet(x).map_err(|e| Error::Domain(format!("at {x}: {e}")))?;
        }
        Ok(())
    }

    pub fn to_sexpr(&self) -> String {
        self.expr.to_sexpr(&["x"])
    }
}
