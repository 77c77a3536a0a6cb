use super::*;
use crate::algebra::{q, Var};
use crate::fgl::FormalGroupLaw;
use crate::ring::{diagonal_class, make_model, Model, RingElement};

fn model(g: u32, d: usize, fgl: FormalGroupLaw) -> Model {
    make_model(g, d, fgl, &[])
}

fn unit1(m: &Model) -> ShuffleElement {
    ShuffleElement::new(RingElement::one(&m.with_factors(1))).unwrap()
}

#[test]
fn additive_kernels_match_closed_forms() {
    for g in 0..=2 {
        let m = model(g, 2, FormalGroupLaw::additive());
        let tau = RingElement::tau(&m);
        let z = &RingElement::u(&m, 2) - &RingElement::u(&m, 1);
        let delta = diagonal_class(&m, 1, 2).unwrap();
        let gc = Kernel::gc().at_pair(&m, 1, 2).unwrap();
        let oracle = (&(&(&tau - &z) * &(&z - &delta)) * &(&(&tau + &z) + &delta)).checked_div(&z).unwrap();
        assert_eq!(gc, oracle);
        let norm = Kernel::gc_norm().at_pair(&m, 1, 2).unwrap();
        let p = &delta * &(&tau + &delta);
        let oracle = &RingElement::one(&m) - &p.checked_div(&(&z * &(&z + &tau))).unwrap();
        assert_eq!(norm, oracle);
        assert_eq!(gc, &(&norm * &(&tau - &z)) * &(&tau + &z));
    }
}

#[test]
fn unit_product_in_degree_two() {
    let m = model(1, 2, FormalGroupLaw::additive());
    let e0 = unit1(&m);
    let x = shuffle_product(&e0, &e0, &Kernel::gc_norm()).unwrap();
    let tau = RingElement::tau(&m);
    let z = &RingElement::u(&m, 2) - &RingElement::u(&m, 1);
    let delta = diagonal_class(&m, 1, 2).unwrap();
    let p = &delta * &(&tau + &delta);
    let den = &(&z * &z) - &(&tau * &tau);
    let oracle = &RingElement::int(&m, 2) - &p.scale_q(&q(2)).checked_div(&den).unwrap();
    assert_eq!(*x.value(), oracle);
    assert!(x.value().is_symmetric());
}

#[test]
fn scalar_degree_zero_acts_by_multiplication() {
    let m = model(1, 1, FormalGroupLaw::additive());
    let c = ShuffleElement::scalar(&m, RingElement::var(&m.with_factors(0), Var::TAU));
    let f = ShuffleElement::new(RingElement::u(&m, 1)).unwrap();
    let x = shuffle_product(&c, &f, &Kernel::gc()).unwrap();
    assert_eq!(*x.value(), (&RingElement::tau(&m) * &RingElement::u(&m, 1)));
}

#[test]
fn associativity_witness() {
    for fgl in [FormalGroupLaw::additive(), FormalGroupLaw::multiplicative()] {
        let m = model(1, 1, fgl);
        let e0 = unit1(&m);
        for g in [Kernel::gc(), Kernel::gc_norm()] {
            let l = shuffle_product(&shuffle_product(&e0, &e0, &g).unwrap(), &e0, &g).unwrap();
            let r = shuffle_product(&e0, &shuffle_product(&e0, &e0, &g).unwrap(), &g).unwrap();
            assert_eq!(l, r);
            assert!(l.value().is_symmetric());
        }
    }
}

#[test]
fn kernel_blocks_refine() {
    let m = model(1, 3, FormalGroupLaw::additive());
    let g = Kernel::gc();
    let b111 = kernel_block(&g, &m, &[1, 1, 1]).unwrap();
    let b21 = kernel_block(&g, &m, &[2, 1]).unwrap();
    let m2 = m.with_factors(2);
    let b11 = kernel_block(&g, &m2, &[1, 1]).unwrap().embed(&m, 0);
    assert_eq!(b111, &b21 * &b11);
    assert_eq!(kernel_block(&g, &m, &[3]).unwrap(), RingElement::one(&m));
    assert!(kernel_block(&g, &m, &[1, 1]).is_err());
    assert_eq!(block_pairs(&[1, 1, 1]), vec![(1, 2), (1, 3), (2, 3)]);
}

#[test]
fn shuffles_are_minimal_coset_representatives() {
    let s = shuffles(2, 2);
    assert_eq!(s.len(), 6);
    for sigma in &s {
        assert!(sigma[0] < sigma[1] && sigma[2] < sigma[3]);
    }
}

#[test]
fn rn_factor_and_morphism() {
    let m = model(1, 2, FormalGroupLaw::additive());
    let tau = RingElement::tau(&m);
    let z = &RingElement::u(&m, 2) - &RingElement::u(&m, 1);
    assert_eq!(rn_factor(&m).unwrap(), &(&tau + &z) * &(&tau - &z));
    let m1 = m.with_factors(1);
    let f = ShuffleElement::new(RingElement::u(&m1, 1)).unwrap();
    let h = ShuffleElement::new(RingElement::u(&m1, 1).pow(2)).unwrap();
    assert_eq!(rn_map(&f).unwrap(), f);
    let lhs = rn_map(&shuffle_product(&f, &h, &Kernel::gc_norm()).unwrap()).unwrap();
    let rhs = shuffle_product(&rn_map(&f).unwrap(), &rn_map(&h).unwrap(), &Kernel::gc()).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(rn_inverse(&lhs).unwrap(), shuffle_product(&f, &h, &Kernel::gc_norm()).unwrap());
}

#[test]
fn genus_relation_small_cases() {
    for (g, i, j) in [(0, 0, 0), (1, 0, 1)] {
        let m = model(g, 1, FormalGroupLaw::additive());
        let r = verify_genus_relation(&m, i, j, GeneratorConvention::DualEuler).unwrap();
        assert!(r.holds(), "g={g} ({i},{j})");
    }
    let mm = model(0, 1, FormalGroupLaw::multiplicative());
    assert!(verify_genus_relation(&mm, 0, 0, GeneratorConvention::DualEuler).is_err());
}

#[test]
fn u_power_reading_leaves_closed_form_residual() {
    let m = model(1, 1, FormalGroupLaw::additive());
    let g = Kernel::gc_norm();
    for (i, j) in [(0, 0), (0, 1), (1, 2)] {
        let r = verify_genus_relation(&m, i, j, GeneratorConvention::UPower).unwrap();
        let ei = generator(&m, i, GeneratorConvention::UPower).unwrap();
        let ej = generator(&m, j, GeneratorConvention::UPower).unwrap();
        let sym = shuffle_product(&ei, &ej, &g).unwrap().add(&shuffle_product(&ej, &ei, &g).unwrap()).unwrap();
        let m2 = m.with_factors(2);
        let tau = RingElement::tau(&m2);
        let delta = diagonal_class(&m2, 1, 2).unwrap();
        let expected = &(&(&tau * &delta) * &(&tau + &delta)).scale_q(&q(2)) * sym.value();
        assert_eq!(*r.residual.value(), expected, "({i},{j})");
    }
}

#[test]
fn shuffle_json_round_trip() {
    let m = model(1, 1, FormalGroupLaw::additive());
    let e0 = unit1(&m);
    let x = shuffle_product(&e0, &e0, &Kernel::gc_norm()).unwrap();
    let s = x.to_json();
    let back = ShuffleElement::from_json(&s).unwrap();
    assert_eq!(back, x);
    assert_eq!(back.to_json(), s);
    assert!(s.contains("\"degree\":2") && s.contains("\"symmetric\":true"));
    let not_sym = RingElement::u(&m.with_factors(2), 1);
    assert_eq!(ShuffleElement::new(not_sym), Err(crate::Error::NotSymmetric));
}
