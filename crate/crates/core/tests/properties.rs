//! Randomized invariants.

use gshuffle::algebra::{q, Poly, Var};
use gshuffle::expr::{random_expr, Expr};
use gshuffle::fgl::{fgl_inverse, fgl_sum, FormalGroupLaw, Series};
use gshuffle::quot::{index_sets, Composition};
use gshuffle::ring::{euler, json, law_sum, make_model, CurveClass, LineBundleMonomial, Model, RingElement};
use gshuffle::shuffle::{shuffle_product, Kernel, ShuffleElement};
use gshuffle::surface::{surf_mul, SurfaceClass};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GENUS: u32 = 2;
const FACTORS: usize = 3;

fn model() -> Model {
    make_model(GENUS, FACTORS, FormalGroupLaw::additive(), &[])
}

fn class(code: u8) -> CurveClass {
    match code % 6 {
        0 => CurveClass::One,
        1 => CurveClass::Point,
        2 => CurveClass::A(1),
        3 => CurveClass::B(1),
        4 => CurveClass::A(2),
        _ => CurveClass::B(2),
    }
}

/// Sum of `c · u_k^e · class` terms.
fn element(terms: &[(i8, u8, u8, u8)]) -> RingElement {
    let m = model();
    terms.iter().fold(RingElement::zero(&m), |acc, &(c, k, e, cl)| {
        let k = 1 + k as usize % FACTORS;
        let x = &RingElement::u(&m, k).pow(e as u32 % 3) * &RingElement::class(&m, k, class(cl)).unwrap();
        &acc + &x.scale_q(&q(c as i64))
    })
}

fn element_strategy() -> impl Strategy<Value = RingElement> {
    prop::collection::vec((-3i8..=3, any::<u8>(), any::<u8>(), any::<u8>()), 0..4).prop_map(|t| element(&t))
}

fn surface(g: u32) -> impl Strategy<Value = SurfaceClass> {
    (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4).prop_map(move |(r, a, b, c)| SurfaceClass::from_ints(r, a, b, c, g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_multiplication_is_associative_and_distributive(
        x in element_strategy(), y in element_strategy(), z in element_strategy(),
    ) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &RingElement::one(&model()), x.clone());
    }

    #[test]
    fn ring_json_round_trips(x in element_strategy()) {
        let s = json::to_json(&x);
        let back = json::from_json(&s).unwrap();
        prop_assert_eq!(json::to_json(&back), s);
        prop_assert_eq!(back, x);
    }

    #[test]
    fn permutations_act(x in element_strategy(), y in element_strategy()) {
        let sigma = [2, 3, 1];
        let inverse = [3, 1, 2];
        prop_assert_eq!(x.permute(&sigma).permute(&inverse), x.clone());
        prop_assert_eq!((&x * &y).permute(&sigma), &x.permute(&sigma) * &y.permute(&sigma));
    }

    #[test]
    fn euler_is_additive(a in -2i32..=2, b in -2i32..=2, multiplicative in any::<bool>()) {
        let fgl = if multiplicative { FormalGroupLaw::multiplicative() } else { FormalGroupLaw::additive() };
        let m = make_model(1, 2, fgl, &[]);
        let l1 = LineBundleMonomial::slot(1).pow(a);
        let l2 = LineBundleMonomial::t().tensor(&LineBundleMonomial::slot(2).pow(b));
        let lhs = euler(&m, &l1.tensor(&l2)).unwrap();
        let rhs = law_sum(&m, &euler(&m, &l1).unwrap(), &euler(&m, &l2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fgl_unit_and_symmetry(n in 2u32..=6) {
        let f = FormalGroupLaw::universal(n).unwrap();
        let ring = f.coefficient_ring();
        let x = Series::new(Poly::var(Var::u(1)), ring);
        let y = Series::new(Poly::var(Var::u(2)), ring);
        let zero = Series::new(Poly::zero(), ring);
        let unit = fgl_sum(&f, &x, &zero).unwrap();
        prop_assert!(Series::new(&unit.poly - &x.poly, ring).vanishes_mod(n));
        let xy = fgl_sum(&f, &x, &y).unwrap();
        let yx = fgl_sum(&f, &y, &x).unwrap();
        prop_assert!(Series::new(&xy.poly - &yx.poly, ring).vanishes_mod(n));
        let back = fgl_inverse(&f, &fgl_inverse(&f, &x).unwrap()).unwrap();
        prop_assert!(Series::new(&back.poly - &x.poly, ring).vanishes_mod(n));
    }

    #[test]
    fn expressions_round_trip(seed in any::<u64>(), depth in 1u32..=5) {
        let e = random_expr(&mut ChaCha8Rng::seed_from_u64(seed), depth);
        let printed = e.to_string();
        let back = Expr::parse(&printed).unwrap();
        prop_assert_eq!(back.to_string(), printed);
        prop_assert_eq!(back, e);
    }

    #[test]
    fn surface_product_is_a_commutative_ring(
        (g, x, y, z) in (0u32..=3).prop_flat_map(|g| (Just(g), surface(g), surface(g), surface(g))),
    ) {
        prop_assert_eq!(surf_mul(&x, &y).unwrap(), surf_mul(&y, &x).unwrap());
        prop_assert_eq!(
            surf_mul(&surf_mul(&x, &y).unwrap(), &z).unwrap(),
            surf_mul(&x, &surf_mul(&y, &z).unwrap()).unwrap()
        );
        prop_assert_eq!(surf_mul(&x, &SurfaceClass::one(g)).unwrap(), x);
    }

    #[test]
    fn index_sets_partition_off_diagonal_blocks(parts in prop::collection::vec(1usize..=3, 1..=4)) {
        let c = Composition::new(&parts).unwrap();
        let (tp, tn) = index_sets(&c);
        let d = c.total();
        let below: usize = parts.iter().map(|p| p * p).sum();
        // T_p holds each diagonal block and everything to its right; T_n drops the block
        prop_assert_eq!(tp.len() - tn.len(), below);
        prop_assert_eq!(2 * tn.len() + below, d * d);
    }

    #[test]
    fn shuffle_product_is_bilinear(a in -3i64..=3, b in -3i64..=3, k in 0u32..=2) {
        let m1 = make_model(1, 1, FormalGroupLaw::additive(), &[]);
        let f = ShuffleElement::new(RingElement::u(&m1, 1).pow(k)).unwrap();
        let g = ShuffleElement::new(RingElement::point(&m1, 1).unwrap()).unwrap();
        let h = ShuffleElement::unit(&m1);
        let combo = ShuffleElement::new(&f.value().scale_q(&q(a)) + &g.value().scale_q(&q(b))).unwrap();
        let kernel = Kernel::gc();
        let lhs = shuffle_product(&combo, &h, &kernel).unwrap();
        let fh = shuffle_product(&f, &h, &kernel).unwrap();
        let gh = shuffle_product(&g, &h, &kernel).unwrap();
        prop_assert_eq!(lhs.value(), &(&fh.value().scale_q(&q(a)) + &gh.value().scale_q(&q(b))));
    }
}
