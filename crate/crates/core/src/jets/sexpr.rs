//! Prefix S-expression syntax for [`Expr`].
//!
//! ```text
//! expr   := number | symbol | "(" op expr+ ")"
//! op     := add | sub | mul | div | pow | exp | log | sin | cos | tan | sinh | cosh
//! symbol := variable | pi | e
//! ```
//!
//! `add` and `mul` take two or more operands, `sub` one (negation) or two,
//! `div` two, `pow` a base and a variable-free exponent, the named functions
//! one. Univariate expressions may use any one of `x y z s t u v` as their
//! variable; bivariate ones use `s`/`u`/`x` for the first parameter and
//! `t`/`v`/`y` for the second.

use super::{Expr, Func};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, Token<'_>)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                out.push((i, Token::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Token::Close));
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !matches!(bytes[i], b'(' | b')') && !bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                out.push((start, Token::Atom(&text[start..i])));
            }
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Vars {
    Univariate,
    Bivariate,
}

struct Parser<'a> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    end: usize,
    vars: Vars,
    // Name used for the variable of a univariate expression, once seen.
    uni_name: Option<&'a str>,
}

impl<'a> Parser<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: at,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<&(usize, Token<'a>)> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Expr> {
        let Some((at, tok)) = self.tokens.get(self.pos).cloned() else {
            return Err(self.err(self.end, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Token::Close => Err(self.err(at, "unexpected ')'")),
            Token::Atom(a) => self.atom(at, a),
            Token::Open => {
                let (op_at, op) = match self.tokens.get(self.pos).cloned() {
                    Some((p, Token::Atom(op))) => (p, op),
                    _ => return Err(self.err(self.here(), "expected an operator after '('")),
                };
                self.pos += 1;
                let mut args = Vec::new();
                loop {
                    match self.peek() {
                        Some((_, Token::Close)) => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => args.push(self.expr()?),
                        None => return Err(self.err(self.end, format!("unclosed '(' opened at byte {at}"))),
                    }
                }
                self.apply(op_at, op, args)
            }
        }
    }

    fn atom(&mut self, at: usize, a: &'a str) -> Result<Expr> {
        if let Some(first) = a.chars().next() {
            if first.is_ascii_digit() || first == '-' || first == '+' || first == '.' {
                let v: f64 = a.parse().map_err(|_| self.err(at, format!("invalid number '{a}'")))?;
                if !v.is_finite() {
                    return Err(self.err(at, format!("non-finite number '{a}'")));
                }
                return Ok(Expr::Const(v));
            }
        }
        match a {
            "pi" => return Ok(Expr::Const(std::f64::consts::PI)),
            "e" => return Ok(Expr::Const(std::f64::consts::E)),
            _ => {}
        }
        match self.vars {
            Vars::Univariate => {
                if !matches!(a, "x" | "y" | "z" | "s" | "t" | "u" | "v") {
                    return Err(self.err(at, format!("unknown symbol '{a}'")));
                }
                match self.uni_name {
                    Some(name) if name != a => Err(self.err(
                        at,
                        format!("second variable '{a}' in a univariate expression (already using '{name}')"),
                    )),
                    _ => {
                        self.uni_name = Some(a);
                        Ok(Expr::Var(0))
                    }
                }
            }
            Vars::Bivariate => match a {
                "s" | "u" | "x" => Ok(Expr::Var(0)),
                "t" | "v" | "y" => Ok(Expr::Var(1)),
                _ => Err(self.err(at, format!("unknown symbol '{a}'"))),
            },
        }
    }

    fn apply(&self, at: usize, op: &str, mut args: Vec<Expr>) -> Result<Expr> {
        let n = args.len();
        let arity_err = |want: &str| self.err(at, format!("'{op}' takes {want}, got {n}"));
        match op {
            "add" | "mul" => {
                if n < 2 {
                    return Err(arity_err("at least 2 operands"));
                }
                let mut it = args.into_iter();
                let first = it.next().unwrap();
                Ok(it.fold(first, |acc, e| if op == "add" { acc + e } else { acc * e }))
            }
            "sub" => match n {
                1 => Ok(-args.pop().unwrap()),
                2 => {
                    let b = args.pop().unwrap();
                    Ok(args.pop().unwrap() - b)
                }
                _ => Err(arity_err("1 or 2 operands")),
            },
            "div" => {
                if n != 2 {
                    return Err(arity_err("2 operands"));
                }
                let b = args.pop().unwrap();
                Ok(args.pop().unwrap() / b)
            }
            "pow" => {
                if n != 2 {
                    return Err(arity_err("2 operands"));
                }
                let exponent = args.pop().unwrap();
                if exponent.arity() > 0 {
                    return Err(self.err(at, "'pow' exponent must not depend on a variable"));
                }
                let r = exponent
                    .eval_f64(&[])
                    .map_err(|e| self.err(at, format!("'pow' exponent: {e}")))?;
                Ok(args.pop().unwrap().pow(r))
            }
            _ => {
                let f = Func::from_name(op).ok_or_else(|| self.err(at, format!("unknown operator '{op}'")))?;
                if n != 1 {
                    return Err(arity_err("1 operand"));
                }
                Ok(args.pop().unwrap().apply(f))
            }
        }
    }
}

fn parse(text: &str, vars: Vars) -> Result<Expr> {
    let mut p = Parser {
        tokens: tokenize(text),
        pos: 0,
        end: text.len(),
        vars,
        uni_name: None,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err(p.here(), "trailing input after expression"));
    }
    Ok(e)
}

/// Parses a one-variable expression.
pub fn parse_univariate(text: &str) -> Result<Expr> {
    parse(text, Vars::Univariate)
}

/// Parses an expression in the surface parameters `(s, t)`.
pub fn parse_bivariate(text: &str) -> Result<Expr> {
    parse(text, Vars::Bivariate)
}
