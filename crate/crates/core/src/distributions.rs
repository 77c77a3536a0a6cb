//! Bi-infinite series through δ-components.
//!
//! A component `δ(v_1 = x_1) δ(v_2 = x_2) · w` stands for the distribution
//! supported where each formal symbol `v_k` equals the class `x_k`;
//! multiplying by a function of the symbols evaluates it at the pins.

use std::collections::BTreeMap;

use crate::algebra::Var;
use crate::error::{Error, Result};
use crate::ring::{euler, LineBundleMonomial, Model, RingElement};
use crate::shuffle::Kernel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub pins: BTreeMap<Var, RingElement>,
    pub weight: RingElement,
}

#[derive(Clone, Debug)]
pub struct DistributionSeries {
    model: Model,
    components: Vec<Component>,
}

impl DistributionSeries {
    pub fn empty(model: &Model) -> Self {
        DistributionSeries { model: model.clone(), components: Vec::new() }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut out: Vec<Var> = self.components.iter().flat_map(|c| c.pins.keys().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Adds a component, merging it into one with the same pins.
    pub fn push(&mut self, c: Component) {
        if let Some(existing) = self.components.iter_mut().find(|e| e.pins == c.pins) {
            existing.weight = &existing.weight + &c.weight;
        } else {
            self.components.push(c);
        }
        self.components.retain(|c| !c.weight.is_zero());
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for c in &other.components {
            out.push(c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let components = self
            .components
            .iter()
            .map(|c| Component { pins: c.pins.clone(), weight: -&c.weight })
            .collect();
        DistributionSeries { model: self.model.clone(), components }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.weight.is_zero())
    }
}

/// `E_L(v) = δ(v = e(L))` with unit weight.
pub fn e_series(model: &Model, l: &LineBundleMonomial, v: Var) -> Result<DistributionSeries> {
    let x = euler(model, l)?;
    if x.scalar_part().is_zero() {
        return Err(Error::Domain(format!("e({l}) has zero scalar part")));
    }
    let mut s = DistributionSeries::empty(model);
    s.push(Component { pins: BTreeMap::from([(v, x)]), weight: RingElement::one(model) });
    Ok(s)
}

/// Multiplies every component by `h` evaluated at that component's pins.
pub fn dist_scale(s: &DistributionSeries, h: &RingElement) -> Result<DistributionSeries> {
    let symbols: Vec<Var> = h.vars().into_iter().filter(|v| v.is_extra()).collect();
    let mut out = DistributionSeries::empty(&s.model);
    for c in &s.components {
        let mut hv = h.clone();
        for &v in &symbols {
            let value = c.pins.get(&v).ok_or_else(|| Error::UnpinnedVariable(v.to_string()))?;
            hv = hv.substitute(v, value)?;
        }
        out.push(Component { pins: c.pins.clone(), weight: c.weight.checked_mul(&hv)? });
    }
    Ok(out)
}

/// `E_{L1}(v1) E_{L2}(v2)` in the shuffle algebra: `L1` sits in slot 1 and
/// `L2` in slot 2; the identity shuffle carries `g(t_2/t_1)` and the swap
/// carries `g(t_1/t_2)` with both bundles moved by the transposition.
pub fn shuffle_e_product(
    model: &Model,
    (l1, v1): (&LineBundleMonomial, Var),
    (l2, v2): (&LineBundleMonomial, Var),
    g: &Kernel,
) -> Result<DistributionSeries> {
    if v1 == v2 {
        return Err(Error::DoublePin(v1.to_string()));
    }
    let swap = [2, 1];
    let e1 = euler(model, l1)?;
    let e2 = euler(model, l2)?;
    let s1 = euler(model, &l1.permute(&swap))?;
    let s2 = euler(model, &l2.permute(&swap))?;
    for (x, l) in [(&e1, l1), (&e2, l2)] {
        if x.scalar_part().is_zero() {
            return Err(Error::Domain(format!("e({l}) has zero scalar part")));
        }
    }
    let mut out = DistributionSeries::empty(model);
    out.push(Component { pins: BTreeMap::from([(v1, e1), (v2, e2)]), weight: g.at_pair(model, 1, 2)? });
    out.push(Component { pins: BTreeMap::from([(v1, s1), (v2, s2)]), weight: g.at_pair(model, 2, 1)? });
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct QuadraticReport {
    pub lhs: DistributionSeries,
    pub rhs: DistributionSeries,
    pub residual: DistributionSeries,
    /// The left scaling, evaluated on the identity component's pins, equals `g(t_1/t_2)`.
    pub reduction_holds: bool,
}

impl QuadraticReport {
    pub fn holds(&self) -> bool {
        self.residual.is_zero() && self.reduction_holds
    }
}

/// The exchange relation
/// `g(t_1 L_1 w / t_2 L_2 z) E_{L1}(z) E_{L2}(w) = g(t_2 L_2 z / t_1 L_1 w) E_{L2}(w) E_{L1}(z)`,
/// with `L_1` written in slot-1 variables and `L_2` in slot-2 variables.
pub fn verify_quadratic(model: &Model, l1: &LineBundleMonomial, l2: &LineBundleMonomial, g: &Kernel) -> Result<QuadraticReport> {
    let model = model.with_factors(2).with_extra_vars(&[Var::Z, Var::W]);
    for (l, slot) in [(l1, 1usize), (l2, 2usize)] {
        if l.slots().iter().any(|&k| k != slot) || l.vars.keys().any(|v| v.is_extra()) {
            return Err(Error::Domain(format!("{l} must only involve slot {slot}")));
        }
    }
    let swap = [2, 1];
    let (z, w) = (LineBundleMonomial::var(Var::Z), LineBundleMonomial::var(Var::W));
    let a = LineBundleMonomial::slot(1).tensor(l1).tensor(&w);
    let b = LineBundleMonomial::slot(2).tensor(l2).tensor(&z);
    let k_left = g.eval(&model, &a.tensor(&b.inverse()), (1, 2))?;
    let k_right = g.eval(&model, &b.tensor(&a.inverse()), (1, 2))?;

    let lhs = dist_scale(&shuffle_e_product(&model, (l1, Var::Z), (l2, Var::W), g)?, &k_left)?;
    let rhs = dist_scale(
        &shuffle_e_product(&model, (&l2.permute(&swap), Var::W), (&l1.permute(&swap), Var::Z), g)?,
        &k_right,
    )?;
    let residual = lhs.add(&rhs.neg());

    let pins = |x: &RingElement| -> Result<RingElement> {
        let x = x.substitute(Var::Z, &euler(&model, l1)?)?;
        x.substitute(Var::W, &euler(&model, l2)?)
    };
    let reduction_holds = pins(&k_left)? == g.at_pair(&model, 2, 1)? && pins(&k_right)? == g.at_pair(&model, 1, 2)?;
    Ok(QuadraticReport { lhs, rhs, residual, reduction_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::FormalGroupLaw;
    use crate::ring::{diagonal_class, make_model};

    fn model(g: u32, fgl: FormalGroupLaw) -> Model {
        make_model(g, 2, fgl, &[Var::Z, Var::W])
    }

    fn mono(s: &str) -> LineBundleMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn e_series_pins() {
        let m = model(0, FormalGroupLaw::additive());
        let s = e_series(&m, &mono("t1^-1"), Var::Z).unwrap();
        assert_eq!(s.components()[0].pins[&Var::Z], -&RingElement::u(&m, 1));
        let mm = model(0, FormalGroupLaw::multiplicative());
        let s = e_series(&mm, &mono("t1^-1"), Var::Z).unwrap();
        let u1 = RingElement::u(&mm, 1);
        assert_eq!(s.components()[0].pins[&Var::Z], u1.checked_div(&(&u1 - &RingElement::one(&mm))).unwrap());
        assert!(e_series(&m, &mono("O(pt(1))"), Var::Z).is_err());
    }

    #[test]
    fn scaling_evaluates_at_pins() {
        let m = model(1, FormalGroupLaw::additive());
        let u1 = RingElement::u(&m, 1);
        let delta = diagonal_class(&m, 1, 2).unwrap();
        let mut s = DistributionSeries::empty(&m);
        s.push(Component { pins: BTreeMap::from([(Var::Z, &u1 + &delta)]), weight: RingElement::one(&m) });
        let zi = RingElement::var(&m, Var::Z).invert().unwrap();
        let scaled = dist_scale(&s, &zi).unwrap();
        let ui = u1.invert().unwrap();
        let expected = &(&ui - &(&delta * &ui.pow(2))) + &(&delta.pow(2) * &ui.pow(3));
        assert_eq!(scaled.components()[0].weight, expected);
        let z2 = RingElement::var(&m, Var::Z).pow(2);
        let twice = dist_scale(&dist_scale(&s, &z2).unwrap(), &zi).unwrap();
        let once = dist_scale(&s, &(&z2 * &zi)).unwrap();
        assert_eq!(twice.components()[0].weight, once.components()[0].weight);
        assert_eq!(
            dist_scale(&s, &RingElement::var(&m, Var::W)).unwrap_err(),
            Error::UnpinnedVariable("W".into())
        );
    }

    #[test]
    fn trivial_kernel_product_and_merge() {
        let m = model(1, FormalGroupLaw::additive());
        let s = shuffle_e_product(&m, (&mono("t1^-1"), Var::Z), (&mono("t2^-1"), Var::W), &Kernel::trivial()).unwrap();
        assert_eq!(s.components().len(), 2);
        assert!(s.components().iter().all(|c| c.weight == RingElement::one(&m)));
        // slot-free bundles pin identically in both shuffles
        let s = shuffle_e_product(&m, (&mono("t"), Var::Z), (&mono("t"), Var::W), &Kernel::trivial()).unwrap();
        assert_eq!(s.components().len(), 1);
        assert_eq!(s.components()[0].weight, RingElement::int(&m, 2));
        assert!(shuffle_e_product(&m, (&mono("t"), Var::Z), (&mono("t"), Var::Z), &Kernel::trivial()).is_err());
    }

    #[test]
    fn exchange_relation_holds() {
        for fgl in [FormalGroupLaw::additive(), FormalGroupLaw::multiplicative()] {
            for g in 0..=1 {
                let m = model(g, fgl.clone());
                for k in [Kernel::gc(), Kernel::gc_norm()] {
                    let r = verify_quadratic(&m, &mono("t1^-1"), &mono("t*t2^-1"), &k).unwrap();
                    assert!(r.holds(), "{} g={g} {}", fgl, k.name());
                }
            }
        }
    }
}
