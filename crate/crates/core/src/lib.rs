//! Curvature machinery for translation surfaces `X(s,t) = α(s) + β(t)` and
//! homothetical graphs `z = f(x)g(y)` in Euclidean space and in
//! Lorentz-Minkowski space `dx² + dy² − dz²`.
//!
//! Derivatives come from truncated Taylor jets ([`jets`]), so curvature values
//! are exact up to floating-point roundoff. The [`verify`] module checks the
//! classical flatness and minimality results against independent oracles:
//! central finite differences, Runge-Kutta integration of the reduced ODEs,
//! and a derivative-free search for counterexamples.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod jets;
pub mod verify;

pub use error::{Error, Result};
