//! Exact rational functions with factored denominators.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::atoms::{self, AtomId};
use super::poly::{Poly, Q};
use super::var::Var;

type Den = SmallVec<[(AtomId, u32); 4]>;

/// `num / prod(atom^e)` with `num` coprime to every atom present.
#[derive(Clone, Debug, Default)]
pub struct RatFunc {
    num: Poly,
    den: Den,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("division by zero")]
pub struct DivisionByZero;

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Den::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(Poly::int(n))
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Den::new() }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(AtomId, u32)] {
        &self.den
    }

    pub fn denominator(&self) -> Poly {
        den_poly(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        for (id, _) in &self.den {
            vs.extend(atoms::atom(*id).vars.iter().copied());
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.iter().any(|(id, _)| atoms::atom(*id).vars.contains(&v))
    }

    /// Builds `num / den`, reducing the fraction.
    pub fn from_fraction(num: Poly, den: &Poly) -> Result<Self, DivisionByZero> {
        RatFunc::from_poly(num).div_poly(den)
    }

    fn reduced(mut num: Poly, mut den: Den) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        den.retain(|(_, e)| *e > 0);
        if den.is_empty() {
            return RatFunc { num, den };
        }
        let mut residues = num.residues();
        for slot in den.iter_mut() {
            let a = atoms::atom(slot.0);
            while slot.1 > 0 && a.may_divide(&num, residues.as_deref()) {
                match num.exact_div(&a.poly) {
                    Some(qt) => {
                        num = qt;
                        slot.1 -= 1;
                        residues = num.residues();
                    }
                    None => break,
                }
            }
        }
        den.retain(|(_, e)| *e > 0);
        RatFunc { num, den }
    }

    pub fn recip(&self) -> Result<Self, DivisionByZero> {
        if self.num.is_zero() {
            return Err(DivisionByZero);
        }
        let f = atoms::factor(&self.num);
        let num = den_poly(&self.den).scale(&f.unit.recip());
        Ok(RatFunc { num, den: f.factors })
    }

    pub fn div_poly(&self, p: &Poly) -> Result<Self, DivisionByZero> {
        if p.is_zero() {
            return Err(DivisionByZero);
        }
        let f = atoms::factor(p);
        let mut den = self.den.clone();
        for &(id, e) in &f.factors {
            match den.iter_mut().find(|(i, _)| *i == id) {
                Some(s) => s.1 += e,
                None => den.push((id, e)),
            }
        }
        den.sort_unstable();
        Ok(Self::reduced(self.num.scale(&f.unit.recip()), den))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<Self, DivisionByZero> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, DivisionByZero> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let e = e as u32;
        Ok(RatFunc {
            num: self.num.pow(e),
            den: self.den.iter().map(|&(id, k)| (id, k * e)).collect(),
        })
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Renames variables; `pairs` must describe an injective map.
    pub fn relabel(&self, pairs: &[(Var, Var)]) -> Self {
        let map = |v: Var| pairs.iter().find(|(f, _)| *f == v).map_or(v, |&(_, t)| t);
        let mut num = self.num.relabel(&map);
        let mut den = Den::new();
        let mut negate = false;
        for &(id, e) in &self.den {
            let (nid, neg) = atoms::relabel(id, pairs);
            if neg && e % 2 == 1 {
                negate = !negate;
            }
            den.push((nid, e));
        }
        den.sort_unstable();
        if negate {
            num = -num;
        }
        RatFunc { num, den }
    }

    /// Substitutes `value` for `v`.
    pub fn substitute(&self, v: Var, value: &RatFunc) -> Result<Self, DivisionByZero> {
        if !self.contains_var(v) {
            return Ok(self.clone());
        }
        let coeffs = self.num.coefficients_in(v);
        let mut acc = RatFunc::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + &RatFunc::from_poly(c.clone());
        }
        let mut den = RatFunc::one();
        for &(id, e) in &self.den {
            let a = atoms::atom(id);
            let evaluated = if a.vars.contains(&v) {
                let mut av = RatFunc::zero();
                for c in a.poly.coefficients_in(v).iter().rev() {
                    av = &(&av * value) + &RatFunc::from_poly(c.clone());
                }
                av
            } else {
                RatFunc { num: Poly::one(), den: Den::new() }.mul_atom(id)
            };
            if evaluated.is_zero() {
                return Err(DivisionByZero);
            }
            den = &den * &evaluated.pow(e as i32)?;
        }
        acc.checked_div(&den)
    }

    fn mul_atom(self, id: AtomId) -> Self {
        RatFunc::from_poly(&self.num * &atoms::atom(id).poly)
    }

    pub fn eval_mod(&self, point: &dyn Fn(Var) -> u64) -> Option<u64> {
        let n = self.num.eval_mod(point)?;
        let d = den_poly(&self.den).eval_mod(point)?;
        Some(super::modp::mul(n, super::modp::inv(d)?))
    }

    /// Canonical text form: the numerator, or `(num)/(atom^e*...)` with the
    /// atoms in a fixed textual order.
    pub fn to_canonical_string(&self) -> String {
        if self.den.is_empty() {
            return self.num.to_string();
        }
        let mut parts: Vec<(String, u32)> =
            self.den.iter().map(|&(id, e)| (atoms::atom(id).poly.to_string(), e)).collect();
        parts.sort();
        let single = parts.len() == 1 && parts[0].1 == 1;
        let den = if single {
            format!("({})", parts[0].0)
        } else {
            let body = parts
                .iter()
                .map(|(p, e)| if *e == 1 { format!("({p})") } else { format!("({p})^{e}") })
                .collect::<Vec<_>>()
                .join("*");
            format!("({body})")
        };
        format!("({})/{}", self.num, den)
    }
}

fn den_poly(den: &Den) -> Poly {
    let mut p = Poly::one();
    for &(id, e) in den {
        p = &p * &atoms::atom(id).poly.pow(e);
    }
    p
}

fn merge_max(a: &Den, b: &Den) -> (Den, Den, Den) {
    // returns (lcm, extra factor for a, extra factor for b)
    let mut lcm = Den::new();
    let mut fa = Den::new();
    let mut fb = Den::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            lcm.push(a[i]);
            fb.push(a[i]);
            i += 1;
        } else if take_b {
            lcm.push(b[j]);
            fa.push(b[j]);
            j += 1;
        } else {
            let (id, ea, eb) = (a[i].0, a[i].1, b[j].1);
            lcm.push((id, ea.max(eb)));
            if eb > ea {
                fa.push((id, eb - ea));
            } else if ea > eb {
                fb.push((id, ea - eb));
            }
            i += 1;
            j += 1;
        }
    }
    (lcm, fa, fb)
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let (lcm, fa, fb) = merge_max(&self.den, &rhs.den);
        let num = &(&self.num * &den_poly(&fa)) + &(&rhs.num * &den_poly(&fb));
        RatFunc::reduced(num, lcm)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_empty() && rhs.den.is_empty() {
            return RatFunc { num: &self.num * &rhs.num, den: Den::new() };
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        // cancel across before multiplying
        let a = RatFunc::reduced(self.num.clone(), rhs.den.clone());
        let b = RatFunc::reduced(rhs.num.clone(), self.den.clone());
        let mut den = a.den;
        for &(id, e) in &b.den {
            match den.iter_mut().find(|(i, _)| *i == id) {
                Some(s) => s.1 += e,
                None => den.push((id, e)),
            }
        }
        den.sort_unstable();
        RatFunc { num: &a.num * &b.num, den }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; see [`RatFunc::checked_div`].
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        (self - other).is_zero()
    }
}

impl Eq for RatFunc {}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(k: usize) -> RatFunc {
        RatFunc::var(Var::u(k))
    }

    #[test]
    fn field_operations() {
        let t = RatFunc::var(Var::TAU);
        let z = &u(2) - &u(1);
        let a = z.recip().unwrap();
        let b = (&z + &t).recip().unwrap();
        let s = &a - &b;
        // 1/z - 1/(z+t) = t/(z(z+t))
        let expected = &t * &(&a * &b);
        assert_eq!(s, expected);
        assert!(s.numerator().is_constant() || s.numerator().len() == 1);
        assert!((&(&s * &z) * &(&z + &t) - t).is_zero());
    }

    #[test]
    fn cancellation_is_canonical() {
        let z = &u(2) - &u(1);
        let w = &u(1) + &RatFunc::int(3);
        let r = (&(&z * &w) / &z).clone();
        assert!(r.is_polynomial());
        assert_eq!(r, w);
        let r2 = &(&w / &z) * &z;
        assert!(r2.is_polynomial());
    }

    #[test]
    fn substitution_and_relabel() {
        let z = RatFunc::var(Var::Z);
        let f = z.recip().unwrap();
        assert_eq!(f.substitute(Var::Z, &u(1)).unwrap(), u(1).recip().unwrap());
        assert!(f.substitute(Var::Z, &RatFunc::zero()).is_err());
        let g = (&u(1) - &u(2)).recip().unwrap();
        let swapped = g.relabel(&[(Var::u(1), Var::u(2)), (Var::u(2), Var::u(1))]);
        assert_eq!(swapped, -&g);
    }

    #[test]
    fn canonical_string() {
        let r = &(&u(2) - &u(1)) / &(&(&u(2) - &u(1)) + &RatFunc::var(Var::TAU));
        assert_eq!(r.to_string(), "(-u1+u2)/(t-u1+u2)");
    }
}
