use super::element::ShuffleElement;
use crate::error::{Error, Result};
use crate::ring::{euler, LineBundleMonomial, Model, RingElement};

/// `Π_{i≠j} e(t t_j / t_i)` on `C^d`.
pub fn rn_factor(model: &Model) -> Result<RingElement> {
    let d = model.factors();
    let mut acc = RingElement::one(model);
    for i in 1..=d {
        for j in 1..=d {
            if i != j {
                let m = LineBundleMonomial::t().tensor(&LineBundleMonomial::ratio(j, i));
                acc = &acc * &euler(model, &m)?;
            }
        }
    }
    Ok(acc)
}

/// Carries the normalized product to the unnormalized one.
pub fn rn_map(f: &ShuffleElement) -> Result<ShuffleElement> {
    let k = rn_factor(f.model())?;
    f.scale_symmetric(&k)
}

pub fn rn_inverse(f: &ShuffleElement) -> Result<ShuffleElement> {
    let k = rn_factor(f.model())?;
    let inv = k.invert().map_err(|_| Error::Domain("renormalization factor is not invertible".into()))?;
    f.scale_symmetric(&inv)
}
