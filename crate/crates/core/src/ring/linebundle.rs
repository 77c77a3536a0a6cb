use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::parse::Lexer;
use crate::algebra::{RatFunc, Var};
use crate::error::{Error, Result};
use crate::fgl::Preset;

use super::element::RingElement;
use super::model::{CurveClass, Model};

/// Künneth class of the diagonal in factors `k`, `l`:
/// `pt⊗1 + 1⊗pt - Σ a_i⊗b_i + Σ b_i⊗a_i`.
pub fn diagonal_class(model: &Model, k: usize, l: usize) -> Result<RingElement> {
    if k == l {
        return Err(Error::DegenerateDiagonal(k));
    }
    model.check_factor(k)?;
    model.check_factor(l)?;
    let (k, l) = (k.min(l), k.max(l));
    let mut acc = &RingElement::point(model, k)? + &RingElement::point(model, l)?;
    for i in 1..=model.genus() {
        let ab = &RingElement::class(model, k, CurveClass::A(i))? * &RingElement::class(model, l, CurveClass::B(i))?;
        let ba = &RingElement::class(model, k, CurveClass::B(i))? * &RingElement::class(model, l, CurveClass::A(i))?;
        acc = &(&acc - &ab) + &ba;
    }
    Ok(acc)
}

/// Formal monomial in line bundles: `t^a · Π x^e · Π O(Δ_kl)^e · Π O(pt_k)^e`
/// where `x` ranges over slot characters `t_k` and the extra symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineBundleMonomial {
    pub t: i32,
    pub vars: BTreeMap<Var, i32>,
    pub diagonals: BTreeMap<(usize, usize), i32>,
    pub points: BTreeMap<usize, i32>,
}

impl LineBundleMonomial {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.t == 0 && self.vars.is_empty() && self.diagonals.is_empty() && self.points.is_empty()
    }

    pub fn t() -> Self {
        LineBundleMonomial { t: 1, ..Self::default() }
    }

    /// The slot character `t_k`.
    pub fn slot(k: usize) -> Self {
        Self::var(Var::u(k))
    }

    pub fn var(v: Var) -> Self {
        let mut m = Self::default();
        if v == Var::TAU {
            m.t = 1;
        } else {
            m.vars.insert(v, 1);
        }
        m
    }

    pub fn diagonal(k: usize, l: usize) -> Self {
        let mut m = Self::default();
        m.diagonals.insert((k.min(l), k.max(l)), 1);
        m
    }

    pub fn point(k: usize) -> Self {
        let mut m = Self::default();
        m.points.insert(k, 1);
        m
    }

    /// `t_j / t_i`.
    pub fn ratio(j: usize, i: usize) -> Self {
        Self::slot(j).tensor(&Self::slot(i).inverse())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.t += other.t;
        merge(&mut out.vars, &other.vars);
        merge(&mut out.diagonals, &other.diagonals);
        merge(&mut out.points, &other.points);
        out
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    pub fn pow(&self, n: i32) -> Self {
        let mut out = self.clone();
        out.t *= n;
        for e in out.vars.values_mut() {
            *e *= n;
        }
        for e in out.diagonals.values_mut() {
            *e *= n;
        }
        for e in out.points.values_mut() {
            *e *= n;
        }
        out.vars.retain(|_, e| *e != 0);
        out.diagonals.retain(|_, e| *e != 0);
        out.points.retain(|_, e| *e != 0);
        out
    }

    /// Renames slots: `t_k -> t_{σ(k)}`, `Δ_kl -> Δ_{σ(k)σ(l)}`, `pt_k -> pt_{σ(k)}`.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        let s = |k: usize| if k >= 1 && k <= sigma.len() { sigma[k - 1] } else { k };
        let mut out = Self { t: self.t, ..Self::default() };
        for (&v, &e) in &self.vars {
            let w = v.slot().map_or(v, |k| Var::u(s(k)));
            *out.vars.entry(w).or_insert(0) += e;
        }
        for (&(k, l), &e) in &self.diagonals {
            let (a, b) = (s(k), s(l));
            *out.diagonals.entry((a.min(b), a.max(b))).or_insert(0) += e;
        }
        for (&k, &e) in &self.points {
            *out.points.entry(s(k)).or_insert(0) += e;
        }
        out
    }

    /// Replaces the kernel argument `z^n` by `arg^n`.
    pub fn bind_arg(&self, arg: &Self) -> Self {
        let mut out = self.clone();
        match out.vars.remove(&Var::ARG) {
            Some(n) => out.tensor(&arg.pow(n)),
            None => out,
        }
    }

    /// Factors whose slots the monomial mentions.
    pub fn slots(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.vars.keys().filter_map(|v| v.slot()).collect();
        for &(k, l) in self.diagonals.keys() {
            out.push(k);
            out.push(l);
        }
        out.extend(self.points.keys().copied());
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn merge<K: Ord + Copy>(into: &mut BTreeMap<K, i32>, from: &BTreeMap<K, i32>) {
    for (&k, &e) in from {
        let slot = into.entry(k).or_insert(0);
        *slot += e;
        if *slot == 0 {
            into.remove(&k);
        }
    }
}

fn fmt_power(name: &str, e: i32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

impl fmt::Display for LineBundleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.t != 0 {
            parts.push(fmt_power("t", self.t));
        }
        for (&v, &e) in &self.vars {
            let name = match v.slot() {
                Some(k) => format!("t{k}"),
                None => v.to_string(),
            };
            parts.push(fmt_power(&name, e));
        }
        for (&(k, l), &e) in &self.diagonals {
            parts.push(fmt_power(&format!("O(Delta({k},{l}))"), e));
        }
        for (&k, &e) in &self.points {
            parts.push(fmt_power(&format!("O(pt({k}))"), e));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Monomial grammar: `factor (('*'|'/') factor)*` with
/// `factor := base ('^' int)?` and
/// `base := 1 | t | tN | Z | W | O(Delta(k,l)) | O(-Delta(k,l)) | O(pt(k)) | '(' monomial ')'`.
/// `default_pair` resolves a bare `Delta` inside `O(...)` and enables the
/// kernel argument `z`.
pub(crate) fn parse_monomial(lx: &mut Lexer, default_pair: Option<(usize, usize)>) -> Result<LineBundleMonomial> {
    let mut acc = mono_factor(lx, default_pair)?;
    loop {
        if lx.eat(b'*') {
            acc = acc.tensor(&mono_factor(lx, default_pair)?);
        } else if lx.eat(b'/') {
            acc = acc.tensor(&mono_factor(lx, default_pair)?.inverse());
        } else {
            return Ok(acc);
        }
    }
}

fn mono_factor(lx: &mut Lexer, pair: Option<(usize, usize)>) -> Result<LineBundleMonomial> {
    let base = mono_base(lx, pair)?;
    if lx.eat(b'^') {
        let e = lx.exponent()?;
        return Ok(base.pow(e));
    }
    Ok(base)
}

pub(crate) fn parse_index(lx: &mut Lexer) -> Result<usize> {
    let n = lx.integer().ok_or_else(|| lx.error("expected an index"))?;
    let k = usize::try_from(n).map_err(|_| lx.error("index too large"))?;
    if k == 0 {
        return Err(lx.error("indices start at 1"));
    }
    Ok(k)
}

pub(crate) fn parse_pair(lx: &mut Lexer) -> Result<(usize, usize)> {
    lx.expect(b'(')?;
    let k = parse_index(lx)?;
    lx.expect(b',')?;
    let l = parse_index(lx)?;
    lx.expect(b')')?;
    Ok((k, l))
}

fn mono_base(lx: &mut Lexer, pair: Option<(usize, usize)>) -> Result<LineBundleMonomial> {
    if lx.eat(b'(') {
        let m = parse_monomial(lx, pair)?;
        lx.expect(b')')?;
        return Ok(m);
    }
    let start = lx.pos;
    if let Some(n) = lx.integer() {
        if n == 1.into() {
            return Ok(LineBundleMonomial::trivial());
        }
        lx.pos = start;
        return Err(lx.error("only 1 is a numeric monomial"));
    }
    let name = lx.ident().ok_or_else(|| lx.error("expected a line-bundle monomial"))?;
    if name == "O" {
        lx.expect(b'(')?;
        let neg = lx.eat(b'-');
        let at = lx.pos;
        let inner = lx.ident().ok_or_else(|| lx.error("expected Delta or pt"))?;
        let m = match inner {
            "Delta" => {
                let (k, l) = if lx.peek() == Some(b'(') {
                    parse_pair(lx)?
                } else {
                    pair.ok_or(Error::Parse { pos: at, msg: "bare Delta needs a slot pair".into() })?
                };
                if k == l {
                    return Err(Error::Parse { pos: at, msg: "diagonal needs two distinct factors".into() });
                }
                LineBundleMonomial::diagonal(k, l)
            }
            "pt" => {
                lx.expect(b'(')?;
                let k = parse_index(lx)?;
                lx.expect(b')')?;
                LineBundleMonomial::point(k)
            }
            _ => return Err(Error::Parse { pos: at, msg: format!("unknown divisor `{inner}`") }),
        };
        lx.expect(b')')?;
        return Ok(if neg { m.inverse() } else { m });
    }
    if name == "z" && pair.is_some() {
        return Ok(LineBundleMonomial::var(Var::ARG));
    }
    match Var::parse(name) {
        Some(v) if v.beta_index().is_none() => Ok(LineBundleMonomial::var(v)),
        _ => Err(Error::Parse { pos: start, msg: format!("unknown monomial factor `{name}`") }),
    }
}

impl FromStr for LineBundleMonomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut lx = Lexer::new(s);
        let m = parse_monomial(&mut lx, None)?;
        if !lx.at_end() {
            return Err(lx.error("trailing input"));
        }
        Ok(m)
    }
}

/// `F(x, y)` on ring elements.
pub fn law_sum(model: &Model, x: &RingElement, y: &RingElement) -> RingElement {
    let fgl = model.fgl();
    match fgl.preset() {
        Preset::Additive => x + y,
        Preset::Multiplicative => &(x + y) - &(x * y),
        Preset::Universal => {
            let terms = fgl.law_terms();
            let max_i = terms.iter().map(|t| t.0).max().unwrap_or(0) as u32;
            let max_j = terms.iter().map(|t| t.1).max().unwrap_or(0) as u32;
            let px: Vec<RingElement> = (0..=max_i).map(|k| x.pow(k)).collect();
            let py: Vec<RingElement> = (0..=max_j).map(|k| y.pow(k)).collect();
            let mut acc = RingElement::zero(model);
            for (i, j, c) in terms {
                let mono = &px[i as usize] * &py[j as usize];
                acc = &acc + &mono.scale(&RatFunc::from_poly(c));
            }
            acc
        }
    }
}

/// Formal inverse `ι(x)` on ring elements; exact for the additive and
/// multiplicative laws.
pub fn law_inverse(model: &Model, x: &RingElement) -> Result<RingElement> {
    let fgl = model.fgl();
    match fgl.preset() {
        Preset::Additive => Ok(-x),
        // x + ι - xι = 0
        Preset::Multiplicative => x.checked_mul(&(x - &RingElement::one(model)).invert()?),
        Preset::Universal => {
            let coeffs = fgl.inverse_series().coefficients_in(Var::X);
            let mut acc = RingElement::zero(model);
            for c in coeffs.iter().rev() {
                acc = &(&acc * x) + &RingElement::scalar(model, RatFunc::from_poly(c.clone()));
            }
            Ok(acc)
        }
    }
}

/// Euler class of a line-bundle monomial by chaining the group law over the
/// primary classes, using the formal inverse for negative exponents.
pub fn euler(model: &Model, m: &LineBundleMonomial) -> Result<RingElement> {
    let mut primaries: Vec<(RingElement, i32)> = Vec::new();
    if m.t != 0 {
        primaries.push((RingElement::tau(model), m.t));
    }
    for (&v, &e) in &m.vars {
        if let Some(k) = v.slot() {
            model.check_factor(k)?;
        } else if !model.extra_vars().contains(&v) {
            return Err(Error::Domain(format!("variable `{v}` is not adjoined to the model")));
        }
        primaries.push((RingElement::var(model, v), e));
    }
    for (&(k, l), &e) in &m.diagonals {
        primaries.push((diagonal_class(model, k, l)?, e));
    }
    for (&k, &e) in &m.points {
        primaries.push((RingElement::point(model, k)?, e));
    }
    let mut acc: Option<RingElement> = None;
    for (x, e) in primaries {
        let p = if e > 0 { x } else { law_inverse(model, &x)? };
        for _ in 0..e.unsigned_abs() {
            acc = Some(match acc {
                None => p.clone(),
                Some(a) => law_sum(model, &a, &p),
            });
        }
    }
    Ok(acc.unwrap_or_else(|| RingElement::zero(model)))
}
