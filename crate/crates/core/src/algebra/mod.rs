//! Exact polynomial and rational-function arithmetic over Q.

pub mod atoms;
pub mod gcd;
pub mod modp;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod var;

pub use poly::{q, q_frac, Mono, Poly, Q};
pub use ratfunc::{DivisionByZero, RatFunc};
pub use var::Var;
