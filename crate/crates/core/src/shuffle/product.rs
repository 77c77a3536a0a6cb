use rayon::prelude::*;

use super::element::ShuffleElement;
use super::kernel::{kernel_block, Kernel};
use crate::error::{Error, Result};
use crate::ring::{Model, RingElement};

/// Increasing `k`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// Minimal coset representatives of `S_{d1} x S_{d2}`: `σ` sends `1..d1`
/// increasingly onto a subset and `d1+1..d` increasingly onto its complement.
pub fn shuffles(d1: usize, d2: usize) -> Vec<Vec<usize>> {
    let d = d1 + d2;
    subsets(d, d1)
        .into_iter()
        .map(|s| {
            let mut sigma = s.clone();
            sigma.extend((1..=d).filter(|x| !s.contains(x)));
            sigma
        })
        .collect()
}

/// `Σ_σ σ.x` over the shuffles of `(d1, d2)`, as a parallel map-reduce.
pub fn symmetrize(x: &RingElement, d1: usize, d2: usize) -> RingElement {
    let model = x.model().clone();
    let zero = || RingElement::zero(&model);
    shuffles(d1, d2)
        .par_iter()
        .map(|sigma| x.permute(sigma))
        .reduce(zero, |a, b| &a + &b)
}

/// The unsymmetrized integrand `g_{d1,d2} · f(slots 1..d1) · h(slots d1+1..d)`.
pub fn shuffle_integrand(f: &ShuffleElement, h: &ShuffleElement, g: &Kernel) -> Result<(Model, RingElement)> {
    let (mf, mh) = (f.model(), h.model());
    if mf.genus() != mh.genus() || mf.fgl() != mh.fgl() || mf.extra_vars() != mh.extra_vars() {
        return Err(Error::ModelMismatch);
    }
    let (d1, d2) = (f.degree(), h.degree());
    let model = mf.with_factors(d1 + d2);
    let fe = f.value().embed(&model, 0);
    let he = h.value().embed(&model, d1);
    let parts: Vec<usize> = [d1, d2].into_iter().filter(|&p| p > 0).collect();
    let k = kernel_block(g, &model, &parts)?;
    Ok((model, &(&k * &fe) * &he))
}

/// The shuffle product of `f` and `h` with kernel `g`.
pub fn shuffle_product(f: &ShuffleElement, h: &ShuffleElement, g: &Kernel) -> Result<ShuffleElement> {
    let (_, x) = shuffle_integrand(f, h, g)?;
    let out = symmetrize(&x, f.degree(), h.degree());
    debug_assert!(out.is_symmetric());
    if f.is_checked_symmetric() && h.is_checked_symmetric() {
        Ok(ShuffleElement::verified(out))
    } else {
        ShuffleElement::new(out)
    }
}
