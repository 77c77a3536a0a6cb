//! Localization weights on `C^d` and the kernel they induce.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{euler, LineBundleMonomial, Model, RingElement};
use crate::shuffle::{cumulative, kernel_block, Kernel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    parts: Vec<usize>,
    cumulative: Vec<usize>,
}

impl Composition {
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Domain(format!("composition parts must be positive, got {parts:?}")));
        }
        Ok(Composition { parts: parts.to_vec(), cumulative: cumulative(parts) })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `0 = d_0 <= d_1 <= ... <= d_k = d`.
    pub fn cumulative(&self) -> &[usize] {
        &self.cumulative
    }

    pub fn total(&self) -> usize {
        *self.cumulative.last().unwrap()
    }

    /// All compositions of `d`.
    pub fn all(d: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                rec(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, &mut Vec::new(), &mut out);
        out.into_iter().map(|p| Composition::new(&p).unwrap()).collect()
    }

    fn check(&self, model: &Model) -> Result<()> {
        if self.total() != model.factors() {
            return Err(Error::Composition { parts: self.parts.clone(), factors: model.factors() });
        }
        Ok(())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub type PairSet = Vec<(usize, usize)>;

/// `T_p = ∪ [d_{i-1}+1, d_i] × [d_{i-1}+1, d]` and `T_n = ∪ [d_{i-1}+1, d_i] × [d_i+1, d]`.
pub fn index_sets(c: &Composition) -> (PairSet, PairSet) {
    let cum = c.cumulative();
    let d = c.total();
    let (mut tp, mut tn) = (Vec::new(), Vec::new());
    for b in 1..cum.len() {
        for i in cum[b - 1] + 1..=cum[b] {
            for j in cum[b - 1] + 1..=d {
                tp.push((i, j));
            }
            for j in cum[b] + 1..=d {
                tn.push((i, j));
            }
        }
    }
    (tp, tn)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightRole {
    Full,
    Filtered,
    NilpotentDual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    pub monomial: LineBundleMonomial,
    pub pair: (usize, usize),
    pub role: WeightRole,
}

/// Multiset of tagged line-bundle weights.
#[derive(Clone, Debug, Default)]
pub struct WeightList(pub Vec<Weight>);

impl WeightList {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn monomials(&self) -> Vec<String> {
        self.0.iter().map(|w| w.monomial.to_string()).collect()
    }

    fn sorted(&self) -> Vec<String> {
        let mut v = self.monomials();
        v.sort();
        v
    }

    /// Product of the Euler classes of the weights.
    pub fn euler(&self, model: &Model) -> Result<RingElement> {
        let mut acc = RingElement::one(model);
        for w in &self.0 {
            acc = &acc * &euler(model, &w.monomial)?;
        }
        Ok(acc)
    }
}

impl PartialEq for WeightList {
    fn eq(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

impl Serialize for WeightList {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.monomials().serialize(s)
    }
}

fn weight(monomial: LineBundleMonomial, pair: (usize, usize), role: WeightRole) -> Weight {
    Weight { monomial, pair, role }
}

/// `(t_i/t_j) O(-Δ_ij)`.
fn hom_weight(i: usize, j: usize) -> LineBundleMonomial {
    LineBundleMonomial::ratio(i, j).tensor(&LineBundleMonomial::diagonal(i, j).inverse())
}

/// `t (t_j/t_i) O(Δ_ij)`.
fn dual_weight(i: usize, j: usize) -> LineBundleMonomial {
    LineBundleMonomial::t().tensor(&LineBundleMonomial::ratio(j, i)).tensor(&LineBundleMonomial::diagonal(i, j))
}

/// The full tangent weights, those over `T_p`, and the dual nilpotent part over `T_n`.
pub fn tangent_weights(c: &Composition) -> (WeightList, WeightList, WeightList) {
    let d = c.total();
    let (tp, tn) = index_sets(c);
    let mut full = Vec::new();
    for i in 1..=d {
        for j in 1..=d {
            if i != j {
                full.push(weight(hom_weight(i, j), (i, j), WeightRole::Full));
            }
        }
    }
    let filtered = tp.iter().filter(|(i, j)| i != j).map(|&(i, j)| weight(hom_weight(i, j), (i, j), WeightRole::Filtered)).collect();
    let nilp = tn.iter().map(|&(i, j)| weight(dual_weight(i, j), (i, j), WeightRole::NilpotentDual)).collect();
    (WeightList(full), WeightList(filtered), WeightList(nilp))
}

/// `Π_{T_n} e(t t_i / t_j)`.
pub fn induction_factor(c: &Composition, model: &Model) -> Result<RingElement> {
    c.check(model)?;
    let (_, tn) = index_sets(c);
    let mut acc = RingElement::one(model);
    for (i, j) in tn {
        let m = LineBundleMonomial::t().tensor(&LineBundleMonomial::ratio(i, j));
        acc = &acc * &euler(model, &m)?;
    }
    Ok(acc)
}

/// `e(n_-)^{-1} e(nilpotent dual) e(filtered)^{-1} e(full)` with `n_-` the
/// weights `t_j/t_i` over `T_n`.
pub fn pushpull_factor(c: &Composition, model: &Model) -> Result<RingElement> {
    c.check(model)?;
    let (full, filtered, nilp) = tangent_weights(c);
    let (_, tn) = index_sets(c);
    let degenerate = |_| Error::Domain("degenerate Euler-class denominator".into());
    let mut n_minus = RingElement::one(model);
    for (i, j) in tn {
        n_minus = &n_minus * &euler(model, &LineBundleMonomial::ratio(j, i))?;
    }
    let num = &nilp.euler(model)? * &full.euler(model)?;
    let den = &n_minus * &filtered.euler(model)?;
    num.checked_div(&den).map_err(degenerate)
}

#[derive(Clone, Debug)]
pub struct DerivedKernel {
    pub derived: RingElement,
    pub expected: RingElement,
}

impl DerivedKernel {
    pub fn equal(&self) -> bool {
        self.derived == self.expected
    }
}

/// Induction factor times push-pull factor, alongside the closed-form kernel block.
pub fn derived_kernel(c: &Composition, model: &Model) -> Result<DerivedKernel> {
    let derived = &induction_factor(c, model)? * &pushpull_factor(c, model)?;
    let expected = kernel_block(&Kernel::gc(), model, c.parts())?;
    Ok(DerivedKernel { derived, expected })
}

/// The push-pull factor divided by `Π_{T_n} e(t t_j/t_i)`, which should be
/// the normalized kernel block.
pub fn normalized_pushpull(c: &Composition, model: &Model) -> Result<RingElement> {
    let (_, tn) = index_sets(c);
    let mut corr = RingElement::one(model);
    for (i, j) in tn {
        corr = &corr * &euler(model, &LineBundleMonomial::t().tensor(&LineBundleMonomial::ratio(j, i)))?;
    }
    pushpull_factor(c, model)?.checked_div(&corr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::FormalGroupLaw;
    use crate::ring::{diagonal_class, make_model};

    fn comp(p: &[usize]) -> Composition {
        Composition::new(p).unwrap()
    }

    #[test]
    fn index_set_examples() {
        assert_eq!(index_sets(&comp(&[1, 1])), (vec![(1, 1), (1, 2), (2, 2)], vec![(1, 2)]));
        assert!(index_sets(&comp(&[3])).1.is_empty());
        assert_eq!(index_sets(&comp(&[1, 1, 1])).1, vec![(1, 2), (1, 3), (2, 3)]);
        assert!(Composition::new(&[1, 0]).is_err());
        assert_eq!(Composition::all(3).len(), 4);
    }

    #[test]
    fn weight_lists() {
        let (full, filtered, nilp) = tangent_weights(&comp(&[1, 1]));
        let expect: WeightList = WeightList(vec![
            weight("t2*t1^-1*O(Delta(1,2))^-1".parse().unwrap(), (2, 1), WeightRole::Full),
            weight("t1*t2^-1*O(Delta(1,2))^-1".parse().unwrap(), (1, 2), WeightRole::Full),
        ]);
        assert_eq!(full, expect);
        assert_eq!(nilp.monomials(), vec!["t*t1^-1*t2*O(Delta(1,2))"]);
        assert_eq!(filtered.len(), 1);
        let (full, filtered, _) = tangent_weights(&comp(&[2]));
        assert_eq!(full, filtered);
        for d in 1..=4 {
            for c in Composition::all(d) {
                let (full, _, nilp) = tangent_weights(&c);
                assert_eq!(full.len(), d * d - d);
                let cum = c.cumulative();
                let expected: usize = (1..cum.len()).map(|b| c.parts()[b - 1] * (d - cum[b])).sum();
                assert_eq!(nilp.len(), expected);
            }
        }
    }

    #[test]
    fn two_point_factors() {
        for g in 0..=1 {
            let m = make_model(g, 2, FormalGroupLaw::additive(), &[]);
            let c = comp(&[1, 1]);
            let tau = RingElement::tau(&m);
            let z = &RingElement::u(&m, 2) - &RingElement::u(&m, 1);
            let delta = diagonal_class(&m, 1, 2).unwrap();
            assert_eq!(induction_factor(&c, &m).unwrap(), &tau - &z);
            let pp = (&(&z - &delta) * &(&(&tau + &z) + &delta)).checked_div(&z).unwrap();
            assert_eq!(pushpull_factor(&c, &m).unwrap(), pp);
            let dk = derived_kernel(&c, &m).unwrap();
            assert!(dk.equal());
        }
        let mm = make_model(1, 2, FormalGroupLaw::multiplicative(), &[]);
        let c = comp(&[1, 1]);
        assert!(derived_kernel(&c, &mm).unwrap().equal());
        assert_eq!(normalized_pushpull(&c, &mm).unwrap(), kernel_block(&Kernel::gc_norm(), &mm, &[1, 1]).unwrap());
    }
}
