//! Products evaluated at a point: the slot variables `u_1..u_d` (and
//! optionally `t`) take rational values while the curve classes stay symbolic.
//!
//! With `q = p∘σ` (`q_i = p_{σ(i)}`), the action of `σ` satisfies
//! `(σ.x)|_p = σ.(x|_q)`, so every shuffle term is evaluated at a permuted
//! point and no symbolic symmetrization is ever formed.

use rayon::prelude::*;

use super::element::ShuffleElement;
use super::kernel::{block_pairs, Kernel};
use super::product::shuffles;
use crate::algebra::{RatFunc, Var, Q};
use crate::error::{Error, Result};
use crate::ring::{Model, RingElement};

/// A bracketed product of symmetric elements.
#[derive(Clone, Debug)]
pub enum ProductTree {
    Leaf(ShuffleElement),
    Node(Box<ProductTree>, Box<ProductTree>),
}

impl ProductTree {
    pub fn leaf(x: ShuffleElement) -> Self {
        ProductTree::Leaf(x)
    }

    pub fn node(a: ProductTree, b: ProductTree) -> Self {
        ProductTree::Node(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            ProductTree::Leaf(x) => x.degree(),
            ProductTree::Node(a, b) => a.degree() + b.degree(),
        }
    }

    fn model(&self) -> &Model {
        match self {
            ProductTree::Leaf(x) => x.model(),
            ProductTree::Node(a, _) => a.model(),
        }
    }

    /// The product evaluated at `u_i = p_i`, and at `t = tau` when given.
    pub fn eval_at(&self, g: &Kernel, p: &[Q], tau: Option<&Q>) -> Result<RingElement> {
        if p.len() != self.degree() {
            return Err(Error::Domain(format!("point has {} coordinates, degree is {}", p.len(), self.degree())));
        }
        match self {
            ProductTree::Leaf(x) => specialize(x.value(), p, tau),
            ProductTree::Node(a, b) => {
                let (d1, d2) = (a.degree(), b.degree());
                let model = self.model().with_factors(d1 + d2);
                let terms = shuffles(d1, d2)
                    .par_iter()
                    .map(|sigma| -> Result<RingElement> {
                        let q: Vec<Q> = sigma.iter().map(|&s| p[s - 1].clone()).collect();
                        let fa = a.eval_at(g, &q[..d1], tau)?.embed(&model, 0);
                        let fb = b.eval_at(g, &q[d1..], tau)?.embed(&model, d1);
                        let k = kernel_block_at(g, &model, d1, d2, &q, tau)?;
                        Ok((&(&k * &fa) * &fb).permute(sigma))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(terms.iter().fold(RingElement::zero(&model), |acc, x| &acc + x))
            }
        }
    }
}

/// `x` with `u_i = p_i`, and `t = tau` when given.
pub fn specialize(x: &RingElement, p: &[Q], tau: Option<&Q>) -> Result<RingElement> {
    let slots: Vec<usize> = (1..=p.len()).collect();
    specialize_slots(x, p, &slots, tau)
}

/// Kernel block of `(d1, d2)` with each pair kernel specialized before multiplying.
fn kernel_block_at(g: &Kernel, model: &Model, d1: usize, d2: usize, q: &[Q], tau: Option<&Q>) -> Result<RingElement> {
    let mut acc = RingElement::one(model);
    if d1 == 0 || d2 == 0 {
        return Ok(acc);
    }
    for (i, j) in block_pairs(&[d1, d2]) {
        let k = g.at_pair(model, i, j)?;
        let k = specialize_slots(&k, q, &[i, j], tau)?;
        acc = &acc * &k;
    }
    Ok(acc)
}

fn specialize_slots(x: &RingElement, q: &[Q], slots: &[usize], tau: Option<&Q>) -> Result<RingElement> {
    let model = x.model();
    let constant = |v: &Q| RingElement::scalar(model, RatFunc::constant(v.clone()));
    let mut out = x.clone();
    for &s in slots {
        out = out.substitute(Var::u(s), &constant(&q[s - 1]))?;
    }
    if let Some(t) = tau {
        out = out.substitute(Var::TAU, &constant(t))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::fgl::FormalGroupLaw;
    use crate::ring::make_model;
    use crate::shuffle::shuffle_product;

    #[test]
    fn agrees_with_symbolic_products() {
        for fgl in [FormalGroupLaw::additive(), FormalGroupLaw::multiplicative()] {
            let m1 = make_model(1, 1, fgl.clone(), &[]);
            let a = ShuffleElement::new(RingElement::u(&m1, 1)).unwrap();
            let b = ShuffleElement::new(RingElement::u(&m1, 1).pow(2)).unwrap();
            for g in [Kernel::gc(), Kernel::gc_norm()] {
                let symbolic = shuffle_product(&shuffle_product(&a, &a, &g).unwrap(), &b, &g).unwrap();
                let tree = ProductTree::node(
                    ProductTree::node(ProductTree::leaf(a.clone()), ProductTree::leaf(a.clone())),
                    ProductTree::leaf(b.clone()),
                );
                let p = [q(3), q(7), q(-6)];
                assert_eq!(tree.eval_at(&g, &p, None).unwrap(), specialize(symbolic.value(), &p, None).unwrap());
                let tau = q(2);
                assert_eq!(
                    tree.eval_at(&g, &p, Some(&tau)).unwrap(),
                    specialize(symbolic.value(), &p, Some(&tau)).unwrap()
                );
            }
        }
    }
}
