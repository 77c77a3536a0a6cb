//! The cubic relation among degree-one generators of the normalized
//! algebra in the additive theory:
//! `[e_i,e_j]_3 - (t^2 + Δ(t+Δ)) [e_i,e_j]_1 + tΔ(t+Δ)(e_i e_j + e_j e_i) = 0`,
//! with `[e_i,e_j]_n = Σ_k (-1)^k C(n,k) (e_{i+k} e_{j+n-k} - e_{j+n-k} e_{i+k})`.

use std::str::FromStr;

use super::element::ShuffleElement;
use super::kernel::Kernel;
use super::product::shuffle_product;
use crate::algebra::q;
use crate::error::{Error, Result};
use crate::fgl::Preset;
use crate::ring::{diagonal_class, euler, LineBundleMonomial, Model, RingElement};

/// How the degree-one generator `e_m` is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GeneratorConvention {
    /// `e_m = e(t_1^{-1})^m`, which is `(-u_1)^m` additively.
    #[default]
    DualEuler,
    /// `e_m = u_1^m`.
    UPower,
}

impl FromStr for GeneratorConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dual-euler" => Ok(GeneratorConvention::DualEuler),
            "u-power" => Ok(GeneratorConvention::UPower),
            _ => Err(Error::Domain(format!("unknown generator convention `{s}`"))),
        }
    }
}

/// `e_m` in degree one.
pub fn generator(model: &Model, m: i32, convention: GeneratorConvention) -> Result<ShuffleElement> {
    let m1 = model.with_factors(1);
    let base = match convention {
        GeneratorConvention::DualEuler => euler(&m1, &LineBundleMonomial::slot(1).inverse())?,
        GeneratorConvention::UPower => RingElement::u(&m1, 1),
    };
    ShuffleElement::new(base.powi(m)?)
}

#[derive(Clone, Debug)]
pub struct GenusRelationReport {
    pub i: i32,
    pub j: i32,
    pub residual: ShuffleElement,
}

impl GenusRelationReport {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, x| acc * (n - x) as i64 / (x + 1) as i64)
}

/// Builds `[e_i, e_j]_n` from products in the normalized algebra.
pub fn bracket(
    model: &Model,
    i: i32,
    j: i32,
    n: u32,
    g: &Kernel,
    convention: GeneratorConvention,
) -> Result<ShuffleElement> {
    let mut acc: Option<ShuffleElement> = None;
    for k in 0..=n {
        let a = generator(model, i + k as i32, convention)?;
        let b = generator(model, j + n as i32 - k as i32, convention)?;
        let ab = shuffle_product(&a, &b, g)?;
        let ba = shuffle_product(&b, &a, g)?;
        let c = q(if k % 2 == 0 { 1 } else { -1 } * binomial(n, k));
        let term = ab.sub(&ba)?;
        let term = ShuffleElement::verified(term.value().scale_q(&c));
        acc = Some(match acc {
            None => term,
            Some(x) => x.add(&term)?,
        });
    }
    Ok(acc.expect("n >= 0 gives at least one term"))
}

/// Assembles the left side of the relation and returns it as the residual.
pub fn verify_genus_relation(model: &Model, i: i32, j: i32, convention: GeneratorConvention) -> Result<GenusRelationReport> {
    if model.fgl().preset() != Preset::Additive {
        return Err(Error::Domain("the genus relation is stated for the additive theory".into()));
    }
    let g = Kernel::gc_norm();
    let m2 = model.with_factors(2);
    let tau = RingElement::tau(&m2);
    let delta = diagonal_class(&m2, 1, 2)?;
    // P = Δ(t + Δ)
    let p = &delta * &(&tau + &delta);
    let b3 = bracket(model, i, j, 3, &g, convention)?;
    let b1 = bracket(model, i, j, 1, &g, convention)?;
    let ei = generator(model, i, convention)?;
    let ej = generator(model, j, convention)?;
    let sym = shuffle_product(&ei, &ej, &g)?.add(&shuffle_product(&ej, &ei, &g)?)?;
    let c1 = &(&tau * &tau) + &p;
    let c2 = &tau * &p;
    let residual = b3.sub(&b1.scale_symmetric(&c1)?)?.add(&sym.scale_symmetric(&c2)?)?;
    Ok(GenusRelationReport { i, j, residual })
}
