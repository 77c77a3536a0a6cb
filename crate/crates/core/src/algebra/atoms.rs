//! Process-wide table of denominator atoms.
//!
//! Every denominator is stored as a product of interned atoms: primitive
//! integer polynomials with positive leading coefficient. Atoms are split
//! into irreducible pieces when registered, so a reduced fraction has a
//! unique factored denominator. Each atom carries a few points of its zero
//! set modulo a large prime; a numerator that does not vanish there cannot
//! be divisible by the atom, which keeps cancellation cheap.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::gcd::{gcd, normalize};
use super::modp;
use super::poly::{Poly, Q};
use super::var::Var;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u32);

#[derive(Debug)]
pub struct Atom {
    pub poly: Poly,
    pub vars: Vec<Var>,
    /// Points on the zero set: evaluation set id plus the solved value of one variable.
    probes: Vec<(u64, Var, u64)>,
}

impl Atom {
    fn new(poly: Poly) -> Atom {
        let vars = poly.vars();
        let mut probes = Vec::new();
        if let Some(&x) = vars.iter().find(|&&v| poly.degree_in(v) == 1) {
            let cs = poly.coefficients_in(x);
            let (b, a) = (&cs[0], &cs[1]);
            let mut set = 1u64;
            while probes.len() < 2 && set < 40 {
                let pt = |v: Var| modp::sample(v, set);
                if let (Some(av), Some(bv)) = (a.eval_mod(&pt), b.eval_mod(&pt)) {
                    if let Some(ai) = modp::inv(av) {
                        probes.push((set, x, modp::mul(modp::sub(0, bv), ai)));
                    }
                }
                set += 1;
            }
        }
        Atom { poly, vars, probes }
    }

    /// `false` means `p` is certainly not divisible by this atom.
    pub fn may_divide(&self, p: &Poly, residues: Option<&[u64]>) -> bool {
        if p.total_degree() < self.poly.total_degree() {
            return false;
        }
        let Some(res) = residues else { return true };
        for &(set, x, val) in &self.probes {
            let pt = |v: Var| if v == x { val } else { modp::sample(v, set) };
            if p.eval_mod_with(res, &pt) != 0 {
                return false;
            }
        }
        true
    }
}

/// A factored polynomial: rational unit times a product of atom powers.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: Q,
    pub factors: SmallVec<[(AtomId, u32); 4]>,
}

type RelabelKey = (AtomId, SmallVec<[(Var, Var); 4]>);

#[derive(Default)]
struct Table {
    atoms: Vec<Arc<Atom>>,
    index: HashMap<Poly, AtomId>,
    factor_cache: HashMap<Poly, Factorization>,
    relabel_cache: HashMap<RelabelKey, (AtomId, bool)>,
}

static TABLE: LazyLock<RwLock<Table>> = LazyLock::new(|| RwLock::new(Table::default()));

pub fn atom(id: AtomId) -> Arc<Atom> {
    TABLE.read().unwrap().atoms[id.0 as usize].clone()
}

pub fn atom_count() -> usize {
    TABLE.read().unwrap().atoms.len()
}

/// Interns a polynomial already known to be normalized and irreducible
/// (or accepted as such).
fn intern(poly: Poly) -> AtomId {
    if let Some(&id) = TABLE.read().unwrap().index.get(&poly) {
        return id;
    }
    let atom = Arc::new(Atom::new(poly.clone()));
    let mut t = TABLE.write().unwrap();
    if let Some(&id) = t.index.get(&poly) {
        return id;
    }
    let id = AtomId(t.atoms.len() as u32);
    t.atoms.push(atom);
    t.index.insert(poly, id);
    id
}

/// Normalizes `p` (nonzero) to an atom polynomial, returning the scalar `c`
/// with `p = c * normalized`.
fn normalize_with_unit(p: &Poly) -> (Q, Poly) {
    p.primitive()
}

fn push_factor(out: &mut SmallVec<[(AtomId, u32); 4]>, id: AtomId, e: u32) {
    match out.iter_mut().find(|(i, _)| *i == id) {
        Some(slot) => slot.1 += e,
        None => out.push((id, e)),
    }
}

/// Factors a nonzero polynomial over the atom table, registering new
/// irreducible pieces as needed.
pub fn factor(p: &Poly) -> Factorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    if let Some(c) = p.constant_value() {
        return Factorization { unit: c, factors: SmallVec::new() };
    }
    if let Some(f) = TABLE.read().unwrap().factor_cache.get(p) {
        return f.clone();
    }
    let (_, prim) = normalize_with_unit(p);
    let mut factors: SmallVec<[(AtomId, u32); 4]> = SmallVec::new();

    let mc = prim.monomial_content();
    let mut rest = if mc.is_one() { prim } else { prim.exact_div(&Poly::monomial(mc.clone(), Q::one())).unwrap() };
    for (v, e) in mc.iter() {
        push_factor(&mut factors, intern(Poly::var(v)), e as u32);
    }

    if !rest.is_constant() {
        // known atoms first
        let candidates: Vec<(AtomId, Arc<Atom>)> = {
            let t = TABLE.read().unwrap();
            let rv = rest.vars();
            t.atoms
                .iter()
                .enumerate()
                .filter(|(_, a)| a.vars.iter().all(|v| rv.contains(v)))
                .map(|(i, a)| (AtomId(i as u32), a.clone()))
                .collect()
        };
        for (id, a) in candidates {
            loop {
                if rest.is_constant() {
                    break;
                }
                let res = rest.residues();
                if !a.may_divide(&rest, res.as_deref()) {
                    break;
                }
                match rest.exact_div(&a.poly) {
                    Some(qt) => {
                        rest = qt;
                        push_factor(&mut factors, id, 1);
                    }
                    None => break,
                }
            }
        }
    }
    if !rest.is_constant() {
        for piece in split(&rest) {
            push_factor(&mut factors, intern(piece), 1);
        }
    }
    let mut product = Poly::one();
    for (id, e) in &factors {
        product = &product * &atom(*id).poly.pow(*e);
    }
    let unit = &p.leading().unwrap().1 / &product.leading().unwrap().1;
    factors.sort_unstable();
    let f = Factorization { unit, factors };
    debug_assert!({
        let mut check = Poly::constant(f.unit.clone());
        for (id, e) in &f.factors {
            check = &check * &atom(*id).poly.pow(*e);
        }
        check == *p
    });
    TABLE.write().unwrap().factor_cache.insert(p.clone(), f.clone());
    f
}

/// Splits a primitive polynomial with no monomial content into pieces
/// whose product is the input up to a scalar.
fn split(p: &Poly) -> Vec<Poly> {
    if p.is_constant() {
        return Vec::new();
    }
    let vars = p.vars();
    if let Some(&x) = vars.iter().find(|&&v| p.degree_in(v) == 1) {
        let cs = p.coefficients_in(x);
        let g = gcd(&cs[0], &cs[1]);
        if g.is_constant() {
            return vec![normalize(p)];
        }
        let mut out = split(&g);
        out.push(normalize(&p.exact_div(&g).expect("content divides")));
        return out;
    }
    for &x in &vars {
        let d = p.derivative(x);
        let g = gcd(p, &d);
        if !g.is_constant() {
            let mut out = split(&g);
            out.extend(split(&p.exact_div(&g).expect("gcd divides")));
            return out;
        }
    }
    if vars.len() == 1 {
        if let Some(root) = rational_root(p, vars[0]) {
            let lin = normalize(&(&Poly::var(vars[0]) - &Poly::constant(root)));
            let mut out = vec![lin.clone()];
            out.extend(split(&p.exact_div(&lin).unwrap()));
            return out;
        }
    }
    vec![normalize(p)]
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let Some(m) = n.to_u64() else { return vec![BigInt::one()] };
    if m > 1_000_000 {
        return vec![BigInt::one()];
    }
    (1..=m).filter(|d| m % d == 0).map(BigInt::from).collect()
}

fn rational_root(p: &Poly, x: Var) -> Option<Q> {
    let cs = p.coefficients_in(x);
    let c0 = cs[0].constant_value()?;
    let cn = cs.last()?.constant_value()?;
    if c0.is_zero() {
        return Some(Q::zero());
    }
    let l = c0.denom().lcm(cn.denom());
    let a = (c0 * Q::from_integer(l.clone())).to_integer();
    let b = (cn * Q::from_integer(l)).to_integer();
    for num in divisors(&a) {
        for den in divisors(&b) {
            for s in [1i64, -1] {
                let r = Q::new(&num * BigInt::from(s), den.clone());
                if p.substitute(x, &Poly::constant(r.clone())).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Atom obtained by renaming variables; the flag reports a sign change
/// (`relabeled poly = -atom`).
pub fn relabel(id: AtomId, pairs: &[(Var, Var)]) -> (AtomId, bool) {
    let a = atom(id);
    let key_pairs: SmallVec<[(Var, Var); 4]> =
        pairs.iter().copied().filter(|(from, to)| from != to && a.vars.contains(from)).collect();
    if key_pairs.is_empty() {
        return (id, false);
    }
    let key = (id, key_pairs);
    if let Some(&r) = TABLE.read().unwrap().relabel_cache.get(&key) {
        return r;
    }
    let map = |v: Var| key.1.iter().find(|(f, _)| *f == v).map_or(v, |&(_, t)| t);
    let moved = a.poly.relabel(&map);
    let (unit, n) = normalize_with_unit(&moved);
    let negative = unit.is_negative();
    debug_assert!(unit.abs().is_one());
    let new_id = intern(n);
    TABLE.write().unwrap().relabel_cache.insert(key, (new_id, negative));
    (new_id, negative)
}
