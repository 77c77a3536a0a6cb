//! Localized equivariant ring of `C^d`: curve-cohomology monomials with
//! rational-function coefficients in `t`, `u_1..u_d` and adjoined symbols.

mod element;
pub mod json;
mod linebundle;
mod model;

pub use element::{mono_string, CurveMono, RingElement};
pub use linebundle::{diagonal_class, euler, law_inverse, law_sum, LineBundleMonomial};
pub(crate) use linebundle::{parse_index, parse_monomial, parse_pair};
pub use model::{make_model, ClassCode, CurveClass, Model, RingModel};

#[cfg(test)]
mod tests;
