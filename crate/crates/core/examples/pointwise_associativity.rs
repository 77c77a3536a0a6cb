//! Both bracketings of a degree-six product, compared exactly at a rational
//! point where the symbolic products would be too large to expand.

use std::time::Instant;

use gshuffle::algebra::{q, Q};
use gshuffle::fgl::FormalGroupLaw;
use gshuffle::ring::{make_model, RingElement};
use gshuffle::shuffle::{symmetrize, Kernel, ProductTree, ShuffleElement};

fn main() -> gshuffle::Result<()> {
    let m2 = make_model(1, 2, FormalGroupLaw::multiplicative(), &[]);
    let x = ShuffleElement::new(symmetrize(&(&RingElement::u(&m2, 1) * &RingElement::point(&m2, 1)?), 1, 1))?;
    let leaf = || ProductTree::leaf(x.clone());
    let left = ProductTree::node(ProductTree::node(leaf(), leaf()), leaf());
    let right = ProductTree::node(leaf(), ProductTree::node(leaf(), leaf()));

    let point: Vec<Q> = [3, 7, -5, 11, 13, -17].into_iter().map(q).collect();
    let tau = q(19);
    let start = Instant::now();
    let l = left.eval_at(&Kernel::gc(), &point, Some(&tau))?;
    let r = right.eval_at(&Kernel::gc(), &point, Some(&tau))?;
    println!("{} terms, bracketings agree: {} ({:.1?})", l.len(), l == r, start.elapsed());
    Ok(())
}
