//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept sorted in descending graded-lex order (variables ordered
//! by id, so `t` is the most significant), with no zero coefficients. Two
//! polynomials are equal iff their term vectors are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::modp;
use super::var::Var;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Monomial: sorted `(var, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub(crate) SmallVec<[(Var, u16); 4]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut s = SmallVec::new();
        if e > 0 {
            s.push((v, e));
        }
        Mono(s)
    }

    /// Builds a monomial from `(var, exponent)` pairs in any order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u16)>) -> Self {
        let mut out = Mono::one();
        for (v, e) in pairs {
            out = out.mul(&Mono::var(v, e));
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u16)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Mono(out))
    }

    /// Componentwise minimum (gcd of monomials).
    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut out = SmallVec::new();
        for &(v, e) in &self.0 {
            let f = other.exponent(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Mono(out)
    }

    fn without(&self, v: Var) -> (Mono, u16) {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut e = 0;
        for &(w, f) in &self.0 {
            if w == v {
                e = f;
            } else {
                out.push((w, f));
            }
        }
        (Mono(out), e)
    }

    pub fn relabel(&self, map: &dyn Fn(Var) -> Var) -> Mono {
        let mut out: SmallVec<[(Var, u16); 4]> = self.0.iter().map(|&(v, e)| (map(v), e)).collect();
        out.sort_unstable_by_key(|p| p.0);
        // a non-injective map may collide
        let mut merged: SmallVec<[(Var, u16); 4]> = SmallVec::with_capacity(out.len());
        for (v, e) in out {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Mono(merged)
    }
}

impl Ord for Mono {
    /// Graded lex; smaller var ids are more significant.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        // the side carrying the more significant variable is larger
                        return if va < vb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
            i += 1;
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Q)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(q(n))
    }

    pub fn var(v: Var) -> Self {
        Poly { terms: vec![(Mono::var(v, 1), Q::one())] }
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Mono, Q)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|l| l.1.is_zero()) {
            out.pop();
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Q {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Q)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.degree())
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.iter().flat_map(|(m, _)| m.iter().map(|(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // multiplying by a monomial preserves the order
        Poly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
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

    fn add_scaled(&self, other: &Poly, sign: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if sign { b[j].1.clone() } else { -&b[j].1 };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { &a[i].1 + &b[j].1 } else { &a[i].1 - &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if sign { t.1.clone() } else { -&t.1 };
            out.push((t.0.clone(), c));
        }
        Poly { terms: out }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (lm, lc) = divisor.leading().unwrap();
        if divisor.len() == 1 {
            let inv = lc.recip();
            let mut out = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                out.push((m.div(lm)?, c * &inv));
            }
            return Some(Poly { terms: out });
        }
        if self.total_degree() < divisor.total_degree() {
            return None;
        }
        let mut rem: BTreeMap<Mono, Q> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        let tail = &divisor.terms[1..];
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            for (tm, tc) in tail {
                let key = tm.mul(&qm);
                let delta = tc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    pub fn relabel(&self, map: &dyn Fn(Var) -> Var) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.relabel(map), c.clone())).collect())
    }

    /// Splits into coefficients of powers of `v`: `self = sum_k out[k] * v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, Q)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn from_coefficients_in(v: Var, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let vm = Mono::var(v, k as u16);
            for (m, x) in &c.terms {
                terms.push((m.mul(&vm), x.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(v);
        // Horner
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                let (rest, _) = m.without(v);
                terms.push((rest.mul(&Mono::var(v, e - 1)), c * q(e as i64)));
            }
        }
        Poly::from_terms(terms)
    }

    /// Drops every term whose total degree in the non-coefficient variables
    /// is at least `n`.
    pub fn truncate(&self, n: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| series_degree(m) < n)
                .cloned()
                .collect(),
        }
    }

    /// Lowest total degree in the non-coefficient variables among the terms.
    pub fn series_order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| series_degree(m)).min()
    }

    /// Rational content with the sign of the leading coefficient, so that
    /// `self / content` is a primitive integer polynomial with positive leading coefficient.
    pub fn content(&self) -> Q {
        if self.is_zero() {
            return Q::one();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut content = Q::new(num, den);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        content
    }

    pub fn primitive(&self) -> (Q, Poly) {
        let c = self.content();
        let p = self.scale(&c.recip());
        (c, p)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Mono::one() };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Evaluates modulo the fixed prime, with `point` giving values for the
    /// variables. `None` if a coefficient denominator vanishes mod p.
    pub fn eval_mod(&self, point: &dyn Fn(Var) -> u64) -> Option<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let cm = modp::from_rational(c)?;
            let mut t = cm;
            for (v, e) in m.iter() {
                t = modp::mul(t, modp::pow(point(v), e as u64));
            }
            acc = modp::add(acc, t);
        }
        Some(acc)
    }

    /// Evaluates with coefficient residues precomputed by [`Poly::residues`].
    pub fn eval_mod_with(&self, residues: &[u64], point: &dyn Fn(Var) -> u64) -> u64 {
        let mut acc = 0u64;
        for ((m, _), &cm) in self.terms.iter().zip(residues) {
            let mut t = cm;
            for (v, e) in m.iter() {
                t = modp::mul(t, modp::pow(point(v), e as u64));
            }
            acc = modp::add(acc, t);
        }
        acc
    }

    pub fn residues(&self) -> Option<Vec<u64>> {
        self.terms.iter().map(|(_, c)| modp::from_rational(c)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0)
    }

    pub fn to_i64_terms(&self) -> Option<Vec<(Mono, i64)>> {
        self.terms
            .iter()
            .map(|(m, c)| if c.is_integer() { c.numer().to_i64().map(|x| (m.clone(), x)) } else { None })
            .collect()
    }
}

pub fn series_degree(m: &Mono) -> u32 {
    m.iter().filter(|(v, _)| !v.is_coefficient_symbol()).map(|(_, e)| e as u32).sum()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        self.add_scaled(rhs, true)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        if rhs.is_zero() {
            return self.clone();
        }
        self.add_scaled(rhs, false)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if rhs.len() == 1 {
            return self.mul_mono(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.len() == 1 {
            return rhs.mul_mono(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: std::collections::HashMap<Mono, Q> =
            std::collections::HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

pub(crate) fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_mono(m: &Mono) -> String {
    m.iter()
        .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_mono(m))?;
            } else {
                write!(f, "{}*{}", fmt_q(&abs), fmt_mono(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(k: usize) -> Poly {
        Poly::var(Var::u(k))
    }

    #[test]
    fn arithmetic_and_division() {
        let t = Poly::var(Var::TAU);
        let a = &(&u(2) - &u(1)) + &t;
        let b = &u(1) + &Poly::int(3);
        let p = &a * &b;
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&b), Some(a.clone()));
        assert!((&p + &Poly::one()).exact_div(&a).is_none());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn substitution_and_coefficients() {
        let p = &(&u(1) * &u(1)) + &(&u(1) * &u(2));
        let s = p.substitute(Var::u(1), &Poly::int(2));
        assert_eq!(s, &Poly::int(4) + &(&Poly::int(2) * &u(2)));
        let cs = p.coefficients_in(Var::u(1));
        assert_eq!(Poly::from_coefficients_in(Var::u(1), &cs), p);
    }

    #[test]
    fn order_puts_t_first() {
        let p = &(&u(2) - &u(1)) + &Poly::var(Var::TAU);
        assert_eq!(p.to_string(), "t-u1+u2");
    }
}
