use super::json::{from_json, to_json};
use super::*;
use crate::algebra::{RatFunc, Var};
use crate::fgl::FormalGroupLaw;

fn additive(g: u32, d: usize) -> Model {
    make_model(g, d, FormalGroupLaw::additive(), &[])
}

fn u(m: &Model, k: usize) -> RingElement {
    RingElement::u(m, k)
}

#[test]
fn koszul_signs_on_generators() {
    let m = additive(1, 2);
    let a1 = RingElement::a(&m, 1, 1).unwrap();
    let b1 = RingElement::b(&m, 1, 1).unwrap();
    let a2 = RingElement::a(&m, 2, 1).unwrap();
    assert_eq!(&a1 * &b1, RingElement::point(&m, 1).unwrap());
    assert_eq!(&b1 * &a1, -RingElement::point(&m, 1).unwrap());
    assert_eq!(&a1 * &a2, -(&a2 * &a1));
    assert!((&a1 * &a1).is_zero());
}

#[test]
fn diagonal_square_and_transfer() {
    for g in 0..=3 {
        let m = additive(g, 2);
        let delta = diagonal_class(&m, 1, 2).unwrap();
        let expected = (&RingElement::point(&m, 1).unwrap() * &RingElement::point(&m, 2).unwrap())
            .scale_q(&crate::algebra::q(2 - 2 * g as i64));
        assert_eq!(&delta * &delta, expected, "g = {g}");
        for code in 0..m.classes_per_factor() as u8 {
            let c = m.class(code);
            let x1 = RingElement::class(&m, 1, c).unwrap();
            let x2 = RingElement::class(&m, 2, c).unwrap();
            assert_eq!(&delta * &x1, &delta * &x2, "g = {g}, class {c:?}");
        }
        assert_eq!(delta.permute(&[2, 1]), delta);
    }
    assert_eq!(
        diagonal_class(&additive(0, 2), 1, 2).unwrap(),
        &RingElement::point(&additive(0, 2), 1).unwrap() + &RingElement::point(&additive(0, 2), 2).unwrap()
    );
    assert!(diagonal_class(&additive(1, 2), 1, 1).is_err());
}

#[test]
fn euler_classes() {
    let m = additive(2, 2);
    let mono: LineBundleMonomial = "t*t2/t1*O(Delta(1,2))".parse().unwrap();
    let delta = diagonal_class(&m, 1, 2).unwrap();
    let expected = &(&(&RingElement::tau(&m) + &u(&m, 2)) - &u(&m, 1)) + &delta;
    assert_eq!(euler(&m, &mono).unwrap(), expected);
    assert!(euler(&m, &LineBundleMonomial::trivial()).unwrap().is_zero());

    let mm = make_model(1, 1, FormalGroupLaw::multiplicative(), &[]);
    let inv = euler(&mm, &"t1^-1".parse().unwrap()).unwrap();
    let u1 = RatFunc::var(Var::u(1));
    assert_eq!(inv, RingElement::scalar(&mm, &u1 / &(&u1 - &RatFunc::one())));
}

#[test]
fn euler_is_multiplicative_on_probe_set() {
    let mm = make_model(1, 2, FormalGroupLaw::multiplicative(), &[]);
    let probes = ["t", "t1", "t2^-1", "O(Delta(1,2))", "t*t1^-1"];
    for a in probes {
        for b in probes {
            let ma: LineBundleMonomial = a.parse().unwrap();
            let mb: LineBundleMonomial = b.parse().unwrap();
            let lhs = euler(&mm, &ma.tensor(&mb)).unwrap();
            let rhs = law_sum(&mm, &euler(&mm, &ma).unwrap(), &euler(&mm, &mb).unwrap());
            assert_eq!(lhs, rhs, "{a} * {b}");
        }
    }
}

#[test]
fn inversion() {
    let m = additive(1, 2);
    let z = &u(&m, 2) - &u(&m, 1);
    let delta = diagonal_class(&m, 1, 2).unwrap();
    let x = &z + &delta;
    let inv = x.invert().unwrap();
    let zi = z.invert().unwrap();
    let expected = &(&zi - &(&delta * &zi.pow(2))) + &(&delta.pow(2) * &zi.pow(3));
    assert_eq!(inv, expected);
    assert_eq!(&x * &inv, RingElement::one(&m));
    assert!(RingElement::point(&m, 1).unwrap().invert().is_err());
}

#[test]
fn permutation_action() {
    let m = additive(1, 2);
    let a1 = RingElement::a(&m, 1, 1).unwrap();
    let a2 = RingElement::a(&m, 2, 1).unwrap();
    let x = (&a1 * &a2).scale(&RatFunc::var(Var::u(1)));
    let y = x.permute(&[2, 1]);
    assert_eq!(y, -(&a1 * &a2).scale(&RatFunc::var(Var::u(2))));
    assert_eq!(x.permute(&[1, 2]), x);

    let m3 = additive(1, 3);
    let w = &(&RingElement::a(&m3, 1, 1).unwrap() * &RingElement::b(&m3, 3, 1).unwrap()) * &u(&m3, 2);
    let s = [2, 3, 1];
    let t = [3, 2, 1];
    let st: Vec<usize> = (0..3).map(|i| s[t[i] - 1]).collect();
    assert_eq!(w.permute(&t).permute(&s), w.permute(&st));
}

#[test]
fn substitution() {
    let m = make_model(1, 2, FormalGroupLaw::additive(), &[Var::Z]);
    let z = RingElement::var(&m, Var::Z);
    let zi = z.invert().unwrap();
    assert_eq!(zi.substitute(Var::Z, &u(&m, 1)).unwrap(), u(&m, 1).invert().unwrap());
    let delta = diagonal_class(&m, 1, 2).unwrap();
    let got = zi.substitute(Var::Z, &(&u(&m, 1) + &delta)).unwrap();
    let ui = u(&m, 1).invert().unwrap();
    let expected = &(&ui - &(&delta * &ui.pow(2))) + &(&delta.pow(2) * &ui.pow(3));
    assert_eq!(got, expected);
    assert!(z.pow(2).substitute(Var::Z, &RingElement::zero(&m)).unwrap().is_zero());
    assert!(zi.substitute(Var::Z, &RingElement::zero(&m)).is_err());
}

#[test]
fn json_round_trip() {
    let m = make_model(2, 2, FormalGroupLaw::multiplicative(), &[Var::Z]);
    let delta = diagonal_class(&m, 1, 2).unwrap();
    let x = &euler(&m, &"t*t2/t1*O(Delta(1,2))".parse().unwrap()).unwrap().invert().unwrap() * &delta;
    let x = &x + &RingElement::var(&m, Var::Z);
    let s = to_json(&x);
    let back = from_json(&s).unwrap();
    assert_eq!(back, x);
    assert_eq!(to_json(&back), s);
}

#[test]
fn monomial_text_round_trip() {
    for s in ["1", "t", "t*t1^-1*t2*O(Delta(1,2))", "Z^2*O(pt(1))^-1", "t^-2*t3"] {
        let m: LineBundleMonomial = s.parse().unwrap();
        assert_eq!(m.to_string(), s);
    }
    let m: LineBundleMonomial = "t1^-1*O(-Delta(2,1))".parse().unwrap();
    assert_eq!(m.to_string(), "t1^-1*O(Delta(1,2))^-1");
}
