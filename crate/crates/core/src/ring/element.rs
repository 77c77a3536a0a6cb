use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;
use smallvec::SmallVec;

use super::model::{ClassCode, CurveClass, Model};
use crate::algebra::{Poly, RatFunc, Var, Q};
use crate::error::{Error, Result};

/// A product `x_1 x_2 ... x_d` of one class per factor, in factor order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveMono(pub(crate) SmallVec<[ClassCode; 6]>);

impl CurveMono {
    pub fn unit(d: usize) -> Self {
        CurveMono(SmallVec::from_elem(0, d))
    }

    pub fn codes(&self) -> &[ClassCode] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// Finite sum of curve monomials with rational-function coefficients.
#[derive(Clone)]
pub struct RingElement {
    model: Model,
    terms: BTreeMap<CurveMono, RatFunc>,
}

pub(crate) fn same_model(a: &Model, b: &Model) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RingElement {
    pub fn zero(model: &Model) -> Self {
        RingElement { model: model.clone(), terms: BTreeMap::new() }
    }

    pub fn one(model: &Model) -> Self {
        Self::scalar(model, RatFunc::one())
    }

    pub fn scalar(model: &Model, c: RatFunc) -> Self {
        Self::monomial(model, CurveMono::unit(model.factors()), c)
    }

    pub fn int(model: &Model, n: i64) -> Self {
        Self::scalar(model, RatFunc::int(n))
    }

    pub fn var(model: &Model, v: Var) -> Self {
        Self::scalar(model, RatFunc::var(v))
    }

    /// `u_k`, the Euler class of the `k`-th slot character.
    pub fn u(model: &Model, k: usize) -> Self {
        Self::var(model, Var::u(k))
    }

    pub fn tau(model: &Model) -> Self {
        Self::var(model, Var::TAU)
    }

    pub fn monomial(model: &Model, m: CurveMono, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RingElement { model: model.clone(), terms }
    }

    /// Pullback of a curve class from factor `k`.
    pub fn class(model: &Model, k: usize, class: CurveClass) -> Result<Self> {
        model.check_factor(k)?;
        if let CurveClass::A(i) | CurveClass::B(i) = class {
            model.check_class_index(i)?;
        }
        let mut m = CurveMono::unit(model.factors());
        m.0[k - 1] = model.code(class);
        Ok(Self::monomial(model, m, RatFunc::one()))
    }

    pub fn point(model: &Model, k: usize) -> Result<Self> {
        Self::class(model, k, CurveClass::Point)
    }

    pub fn a(model: &Model, k: usize, i: u32) -> Result<Self> {
        Self::class(model, k, CurveClass::A(i))
    }

    pub fn b(model: &Model, k: usize, i: u32) -> Result<Self> {
        Self::class(model, k, CurveClass::B(i))
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurveMono, &RatFunc)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &CurveMono) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Coefficient of the unit monomial.
    pub fn scalar_part(&self) -> RatFunc {
        self.coefficient(&CurveMono::unit(self.model.factors()))
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|m| m.is_unit())
    }

    pub fn nilpotent_part(&self) -> RingElement {
        let terms = self.terms.iter().filter(|(m, _)| !m.is_unit()).map(|(m, c)| (m.clone(), c.clone())).collect();
        RingElement { model: self.model.clone(), terms }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out: Vec<Var> = self.terms.values().flat_map(|c| c.vars()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn check(&self, other: &RingElement) -> Result<()> {
        if same_model(&self.model, &other.model) {
            Ok(())
        } else {
            Err(Error::ModelMismatch)
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(RingElement { model: self.model.clone(), terms })
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RingElement::zero(&self.model));
        }
        if other.is_scalar() {
            return Ok(self.scale(&other.scalar_part()));
        }
        if self.is_scalar() {
            return Ok(other.scale(&self.scalar_part()));
        }
        let mut buckets: BTreeMap<CurveMono, Vec<RatFunc>> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((neg, m)) = self.mono_mul(m1, m2) {
                    let c = match (c1.constant_value(), c2.constant_value()) {
                        (Some(a), Some(b)) => RatFunc::constant(a * b),
                        _ => c1 * c2,
                    };
                    buckets.entry(m).or_default().push(if neg { -c } else { c });
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (m, cs) in buckets {
            let s = sum(cs);
            if !s.is_zero() {
                terms.insert(m, s);
            }
        }
        Ok(RingElement { model: self.model.clone(), terms })
    }

    /// Product of basis monomials with the Koszul sign; `None` when it vanishes.
    pub fn mono_mul(&self, x: &CurveMono, y: &CurveMono) -> Option<(bool, CurveMono)> {
        let model = &self.model;
        let d = x.0.len();
        let mut neg = false;
        // move each y_k left past x_{k+1..d}
        let mut odd_x_after = 0u32;
        for k in (0..d).rev() {
            if model.is_odd(y.0[k]) && odd_x_after % 2 == 1 {
                neg = !neg;
            }
            if model.is_odd(x.0[k]) {
                odd_x_after += 1;
            }
        }
        let mut out = SmallVec::with_capacity(d);
        for k in 0..d {
            let (s, c) = model.class_mul(x.0[k], y.0[k])?;
            neg ^= s;
            out.push(c);
        }
        Some((neg, CurveMono(out)))
    }

    pub fn scale(&self, c: &RatFunc) -> RingElement {
        if c.is_zero() {
            return RingElement::zero(&self.model);
        }
        if c.is_one() {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        RingElement { model: self.model.clone(), terms }
    }

    pub fn scale_q(&self, c: &Q) -> RingElement {
        if c.is_zero() {
            return RingElement::zero(&self.model);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x.scale(c))).collect();
        RingElement { model: self.model.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut acc = RingElement::one(&self.model);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powi(&self, e: i32) -> Result<RingElement> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.invert()?.pow(e.unsigned_abs()))
        }
    }

    /// Inverse via the scalar part and a terminating geometric series.
    pub fn invert(&self) -> Result<RingElement> {
        let s = self.scalar_part();
        if s.is_zero() {
            return Err(Error::NotInvertible);
        }
        let s_inv = s.recip()?;
        let n = self.nilpotent_part();
        if n.is_zero() {
            return Ok(RingElement::scalar(&self.model, s_inv));
        }
        let q = n.scale(&-&s_inv);
        let mut acc = RingElement::one(&self.model);
        let mut power = RingElement::one(&self.model);
        loop {
            power = &power * &q;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&s_inv))
    }

    pub fn checked_div(&self, other: &RingElement) -> Result<RingElement> {
        self.checked_mul(&other.invert()?)
    }

    /// Action of `sigma` (1-based images: slot `i` goes to `sigma[i-1]`):
    /// moves classes and `u_i` together, with the Koszul sign of the odd classes.
    pub fn permute(&self, sigma: &[usize]) -> RingElement {
        let d = self.model.factors();
        assert_eq!(sigma.len(), d, "permutation size must equal the number of factors");
        if sigma.iter().enumerate().all(|(i, &s)| s == i + 1) {
            return self.clone();
        }
        let pairs: Vec<(Var, Var)> = sigma
            .iter()
            .enumerate()
            .filter(|(i, &s)| s != i + 1)
            .map(|(i, &s)| (Var::u(i + 1), Var::u(s)))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut out: SmallVec<[ClassCode; 6]> = SmallVec::from_elem(0, d);
            let mut targets: SmallVec<[usize; 6]> = SmallVec::new();
            for (i, &code) in m.0.iter().enumerate() {
                out[sigma[i] - 1] = code;
                if self.model.is_odd(code) {
                    targets.push(sigma[i]);
                }
            }
            let mut neg = false;
            for a in 0..targets.len() {
                for b in a + 1..targets.len() {
                    if targets[a] > targets[b] {
                        neg = !neg;
                    }
                }
            }
            let c = c.relabel(&pairs);
            terms.insert(CurveMono(out), if neg { -c } else { c });
        }
        RingElement { model: self.model.clone(), terms }
    }

    /// Renames coefficient variables without touching curve classes.
    pub fn relabel_vars(&self, pairs: &[(Var, Var)]) -> RingElement {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.relabel(pairs))).collect();
        RingElement { model: self.model.clone(), terms }
    }

    /// Moves the element into `target`, sending factor `k` to `k + offset`
    /// and `u_k` to `u_{k+offset}`.
    pub fn embed(&self, target: &Model, offset: usize) -> RingElement {
        let d = self.model.factors();
        assert!(offset + d <= target.factors());
        assert_eq!(self.model.genus(), target.genus());
        let pairs: Vec<(Var, Var)> = if offset == 0 {
            Vec::new()
        } else {
            (1..=d).rev().map(|k| (Var::u(k), Var::u(k + offset))).collect()
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut out: SmallVec<[ClassCode; 6]> = SmallVec::from_elem(0, target.factors());
            out[offset..offset + d].copy_from_slice(&m.0);
            terms.insert(CurveMono(out), c.relabel(&pairs));
        }
        RingElement { model: target.clone(), terms }
    }

    /// Same terms read over another model with equal genus and factors.
    pub fn with_model(&self, target: &Model) -> RingElement {
        assert_eq!(self.model.genus(), target.genus());
        assert_eq!(self.model.factors(), target.factors());
        RingElement { model: target.clone(), terms: self.terms.clone() }
    }

    /// Substitutes `value` for the variable `v` in every coefficient; a
    /// nilpotent part of `value` enters through the terminating Taylor
    /// expansion, realized as polynomial evaluation followed by inversion.
    pub fn substitute(&self, v: Var, value: &RingElement) -> Result<RingElement> {
        self.check(value)?;
        if value.is_scalar() {
            let r = value.scalar_part();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                let c = c.substitute(v, &r).map_err(|_| Error::VanishingDenominator)?;
                if !c.is_zero() {
                    terms.insert(m.clone(), c);
                }
            }
            return Ok(RingElement { model: self.model.clone(), terms });
        }
        let mut acc = RingElement::zero(&self.model);
        let mut cache: Vec<(RatFunc, RingElement)> = Vec::new();
        for (m, c) in &self.terms {
            let basis = RingElement::monomial(&self.model, m.clone(), RatFunc::one());
            if !c.contains_var(v) {
                acc = &acc + &basis.scale(c);
                continue;
            }
            let evaluated = match cache.iter().find(|(k, _)| k == c) {
                Some((_, e)) => e.clone(),
                None => {
                    let e = self.eval_ratfunc(c, v, value)?;
                    cache.push((c.clone(), e.clone()));
                    e
                }
            };
            acc = &acc + &(&basis * &evaluated);
        }
        Ok(acc)
    }

    fn eval_ratfunc(&self, c: &RatFunc, v: Var, value: &RingElement) -> Result<RingElement> {
        let num = self.eval_poly(c.numerator(), v, value);
        let den_poly = c.denominator();
        let den = self.eval_poly(&den_poly, v, value);
        if den.scalar_part().is_zero() {
            return Err(Error::VanishingDenominator);
        }
        num.checked_div(&den)
    }

    fn eval_poly(&self, p: &Poly, v: Var, value: &RingElement) -> RingElement {
        let coeffs = p.coefficients_in(v);
        let mut acc = RingElement::zero(&self.model);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + &RingElement::scalar(&self.model, RatFunc::from_poly(c.clone()));
        }
        acc
    }

    /// Invariant under every transposition of adjacent slots.
    pub fn is_symmetric(&self) -> bool {
        let d = self.model.factors();
        (1..d).all(|k| {
            let mut sigma: Vec<usize> = (1..=d).collect();
            sigma.swap(k - 1, k);
            self.permute(&sigma) == *self
        })
    }

    /// Text form of a curve monomial: `1` or `a(1,1)*b(2,1)*pt(3)`.
    pub fn mono_string(&self, m: &CurveMono) -> String {
        mono_string(&self.model, m)
    }
}

pub fn mono_string(model: &Model, m: &CurveMono) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| match model.class(c) {
            CurveClass::A(i) => format!("a({},{})", k + 1, i),
            CurveClass::B(i) => format!("b({},{})", k + 1, i),
            CurveClass::Point => format!("pt({})", k + 1),
            CurveClass::One => unreachable!(),
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn add_term(terms: &mut BTreeMap<CurveMono, RatFunc>, m: CurveMono, c: RatFunc) {
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Sums rational functions pairwise, which keeps intermediate denominators small.
pub(crate) fn sum(mut xs: Vec<RatFunc>) -> RatFunc {
    if xs.is_empty() {
        return RatFunc::zero();
    }
    // numeric coefficients skip the denominator bookkeeping
    if let Some(vals) = xs.iter().map(RatFunc::constant_value).collect::<Option<Vec<Q>>>() {
        return RatFunc::constant(vals.into_iter().fold(Q::zero(), |a, b| a + b));
    }
    while xs.len() > 1 {
        let mut next = Vec::with_capacity(xs.len().div_ceil(2));
        let mut it = xs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        xs = next;
    }
    xs.pop().unwrap()
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        if !same_model(&self.model, &other.model) {
            return false;
        }
        if self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((m1, c1), (m2, c2))| m1 == m2 && c1 == c2)
        {
            return true;
        }
        (self - other).is_zero()
    }
}

impl Eq for RingElement {}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("ring model mismatch")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        RingElement { model: self.model.clone(), terms }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).expect("ring model mismatch")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RingElement {
            type Output = RingElement;
            fn $m(self, rhs: RingElement) -> RingElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_unit() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", self.mono_string(m))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement[{}]", self)
    }
}
