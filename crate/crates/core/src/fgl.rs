//! Formal group laws and truncated series.
//!
//! A law is stored as a polynomial `F(x, y)` in the formal variables
//! [`Var::X`], [`Var::Y`]. The additive and multiplicative laws are exact;
//! the universal law is generated by a logarithm with free coefficients and
//! truncated in total degree, so associativity holds modulo the truncation.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{Mono, Poly, Q, Var};
use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Additive,
    Multiplicative,
    Universal,
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "additive" => Ok(Preset::Additive),
            "multiplicative" => Ok(Preset::Multiplicative),
            "universal" | "truncated-universal" => Ok(Preset::Universal),
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }
}

/// Coefficient ring a series lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Rational,
    /// Rationals adjoined the universal coefficients, truncated at the degree.
    Universal(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalGroupLaw {
    preset: Preset,
    truncation: u32,
    law: Poly,
    inverse: Poly,
}

pub fn make_fgl(preset: Preset, truncation: u32) -> Result<FormalGroupLaw> {
    if truncation < 2 {
        return Err(Error::InvalidTruncation(truncation));
    }
    let (x, y) = (Poly::var(Var::X), Poly::var(Var::Y));
    let law = match preset {
        Preset::Additive => &x + &y,
        Preset::Multiplicative => &(&x + &y) - &(&x * &y),
        Preset::Universal => universal_law(truncation),
    };
    let mut fgl = FormalGroupLaw { preset, truncation, law, inverse: Poly::zero() };
    fgl.inverse = match preset {
        Preset::Additive => -x,
        _ => fgl.iterate_inverse(),
    };
    Ok(fgl)
}

impl FormalGroupLaw {
    pub fn additive() -> Self {
        make_fgl(Preset::Additive, DEFAULT_TRUNCATION).unwrap()
    }

    pub fn multiplicative() -> Self {
        make_fgl(Preset::Multiplicative, DEFAULT_TRUNCATION).unwrap()
    }

    pub fn universal(truncation: u32) -> Result<Self> {
        make_fgl(Preset::Universal, truncation)
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_exact(&self) -> bool {
        self.preset != Preset::Universal
    }

    pub fn coefficient_ring(&self) -> CoefficientRing {
        match self.preset {
            Preset::Universal => CoefficientRing::Universal(self.truncation),
            _ => CoefficientRing::Rational,
        }
    }

    /// `F(x, y)` as a polynomial in [`Var::X`], [`Var::Y`].
    pub fn law(&self) -> &Poly {
        &self.law
    }

    /// The formal inverse `ι(x)` in [`Var::X`], truncated below the
    /// truncation degree (exact for the additive law).
    pub fn inverse_series(&self) -> &Poly {
        &self.inverse
    }

    /// Coefficients `c_ij` of `F = Σ c_ij x^i y^j`, in term order.
    pub fn law_terms(&self) -> Vec<(u16, u16, Poly)> {
        collect_xy(&self.law)
    }

    /// Name accepted by [`FromStr`]: `additive`, `multiplicative` or `universal:N`.
    pub fn theory_name(&self) -> String {
        match self.preset {
            Preset::Additive => "additive".into(),
            Preset::Multiplicative => "multiplicative".into(),
            Preset::Universal => format!("universal:{}", self.truncation),
        }
    }

    fn iterate_inverse(&self) -> Poly {
        // ι <- ι - F(x, ι) gains one order per step
        let x = Poly::var(Var::X);
        let mut iota = -&x;
        for _ in 0..self.truncation {
            let f = compose_mod(&self.law, &x, &iota, Some(self.truncation));
            if f.is_zero() {
                break;
            }
            iota = (&iota - &f).truncate(self.truncation);
        }
        iota
    }
}

impl FromStr for FormalGroupLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some(n) = s.strip_prefix("universal:") {
            let n: u32 = n.parse().map_err(|_| Error::UnknownPreset(s.to_string()))?;
            return make_fgl(Preset::Universal, n);
        }
        make_fgl(s.parse()?, DEFAULT_TRUNCATION)
    }
}

impl fmt::Display for FormalGroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.theory_name())
    }
}

/// A polynomial read as a truncated power series over a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub poly: Poly,
    pub ring: CoefficientRing,
}

impl Series {
    pub fn new(poly: Poly, ring: CoefficientRing) -> Self {
        let poly = match ring {
            CoefficientRing::Universal(n) => poly.truncate(n),
            CoefficientRing::Rational => poly,
        };
        Series { poly, ring }
    }

    pub fn rational(poly: Poly) -> Self {
        Series::new(poly, CoefficientRing::Rational)
    }

    pub fn var(v: Var, ring: CoefficientRing) -> Self {
        Series::new(Poly::var(v), ring)
    }

    /// Zero modulo degree `n` in the series variables.
    pub fn vanishes_mod(&self, n: u32) -> bool {
        self.poly.truncate(n).is_zero()
    }
}

fn result_ring(f: &FormalGroupLaw, r: CoefficientRing) -> CoefficientRing {
    match f.coefficient_ring() {
        CoefficientRing::Rational => r,
        u => u,
    }
}

/// `F(x, y)`, truncated at the law's degree unless the law is exact.
pub fn fgl_sum(f: &FormalGroupLaw, x: &Series, y: &Series) -> Result<Series> {
    if x.ring != y.ring {
        return Err(Error::RingMismatch);
    }
    let p = compose_mod(&f.law, &x.poly, &y.poly, (!f.is_exact()).then_some(f.truncation));
    Ok(Series::new(p, result_ring(f, x.ring)))
}

/// `ι(x)` with `F(x, ι(x)) = 0` modulo the truncation degree.
pub fn fgl_inverse(f: &FormalGroupLaw, x: &Series) -> Result<Series> {
    if !x.poly.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let p = if f.preset == Preset::Additive {
        -&x.poly
    } else {
        compose_mod(&f.inverse, &x.poly, &Poly::zero(), Some(f.truncation))
    };
    Ok(Series::new(p, result_ring(f, x.ring)))
}

/// Substitutes `x -> a`, `y -> b` in a polynomial in [`Var::X`], [`Var::Y`].
pub fn compose(p: &Poly, a: &Poly, b: &Poly) -> Poly {
    compose_mod(p, a, b, None)
}

/// [`compose`] dropping terms of series degree `n` and above as it goes.
pub fn compose_mod(p: &Poly, a: &Poly, b: &Poly, n: Option<u32>) -> Poly {
    let cut = |q: Poly| match n {
        Some(n) => q.truncate(n),
        None => q,
    };
    let terms = collect_xy(p);
    let max_i = terms.iter().map(|t| t.0).max().unwrap_or(0) as usize;
    let max_j = terms.iter().map(|t| t.1).max().unwrap_or(0) as usize;
    let mut pa = vec![Poly::one()];
    for k in 1..=max_i {
        pa.push(cut(&pa[k - 1] * a));
    }
    let mut pb = vec![Poly::one()];
    for k in 1..=max_j {
        pb.push(cut(&pb[k - 1] * b));
    }
    let mut acc = Poly::zero();
    for (i, j, c) in &terms {
        acc = &acc + &cut(c * &cut(&pa[*i as usize] * &pb[*j as usize]));
    }
    acc
}

fn collect_xy(p: &Poly) -> Vec<(u16, u16, Poly)> {
    let mut out: Vec<(u16, u16, Poly)> = Vec::new();
    for (m, c) in p.terms() {
        let (i, j) = (m.exponent(Var::X), m.exponent(Var::Y));
        let rest: Vec<(Mono, Q)> = vec![(
            Mono::from_pairs(m.iter().filter(|(v, _)| *v != Var::X && *v != Var::Y)),
            c.clone(),
        )];
        let coeff = Poly::from_terms(rest);
        match out.iter_mut().find(|(a, b, _)| *a == i && *b == j) {
            Some(slot) => slot.2 = &slot.2 + &coeff,
            None => out.push((i, j, coeff)),
        }
    }
    out
}

/// Universal law to total degree below `n`: `F = exp(log x + log y)` where
/// `log'(y) = 1 / (1 + Σ beta1_k y^k)`, so `∂F/∂x (0, y) = 1 + Σ beta1_k y^k`.
fn universal_law(n: u32) -> Poly {
    let y = Var::Y;
    // B(y) = 1 + Σ beta1_k y^k
    let mut b = Poly::one();
    for k in 1..n.saturating_sub(1) {
        b = &b + &(&Poly::var(Var::beta(k as usize)) * &Poly::monomial(Mono::var(y, k as u16), Q::one()));
    }
    let dlog = series_recip(&b, n);
    // log(y) = Σ [y^k](1/B) y^{k+1}/(k+1)
    let coeffs = dlog.coefficients_in(y);
    let mut log = Poly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if k + 1 >= n as usize {
            break;
        }
        let term = c.mul_mono(&Mono::var(y, (k + 1) as u16), &Q::new(1.into(), ((k + 1) as i64).into()));
        log = &log + &term;
    }
    let exp = compositional_inverse(&log, y, n);
    let s = &log.substitute(y, &Poly::var(Var::X)) + &log;
    substitute_truncated(&exp, y, &s, n)
}

/// `p(v -> s)` keeping only terms of series degree below `n`.
fn substitute_truncated(p: &Poly, v: Var, s: &Poly, n: u32) -> Poly {
    let coeffs = p.coefficients_in(v);
    let mut acc = Poly::zero();
    let mut power = Poly::one();
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            power = (&power * s).truncate(n);
        }
        acc = &acc + &(c * &power).truncate(n);
    }
    acc
}

/// `1 / p` as a series with `p(0) = 1`, to degree below `n`.
fn series_recip(p: &Poly, n: u32) -> Poly {
    let one = Poly::one();
    let tail = &p.clone() - &one;
    let mut acc = Poly::one();
    let mut power = Poly::one();
    for _ in 1..n {
        power = (&power * &tail).truncate(n);
        power = -power;
        acc = &acc + &power;
    }
    acc.truncate(n)
}

/// Compositional inverse of `p = v + O(v^2)` modulo `v^n`.
fn compositional_inverse(p: &Poly, v: Var, n: u32) -> Poly {
    let x = Poly::var(v);
    let mut g = x.clone();
    for _ in 0..n {
        // g <- g - (p(g) - v)
        let err = &substitute_truncated(p, v, &g, n) - &x;
        if err.is_zero() {
            break;
        }
        g = (&g - &err).truncate(n);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn u() -> Poly {
        Poly::var(Var::u(1))
    }
    fn v() -> Poly {
        Poly::var(Var::u(2))
    }
    fn w() -> Poly {
        Poly::var(Var::u(3))
    }

    #[test]
    fn preset_laws() {
        let (x, y) = (Poly::var(Var::X), Poly::var(Var::Y));
        assert_eq!(*FormalGroupLaw::additive().law(), &x + &y);
        assert_eq!(*FormalGroupLaw::multiplicative().law(), &(&x + &y) - &(&x * &y));
        let f3 = FormalGroupLaw::universal(3).unwrap();
        let b = Poly::var(Var::beta(1));
        assert_eq!(*f3.law(), &(&x + &y) + &(&b * &(&x * &y)));
        assert!(make_fgl(Preset::Additive, 1).is_err());
        assert!("weird".parse::<FormalGroupLaw>().is_err());
    }

    #[test]
    fn sums() {
        let r = CoefficientRing::Rational;
        let m = FormalGroupLaw::multiplicative();
        let s = fgl_sum(&m, &Series::rational(u()), &Series::rational(u())).unwrap();
        assert_eq!(s.poly, &u().scale(&q(2)) - &(&u() * &u()));
        let f3 = FormalGroupLaw::universal(3).unwrap();
        let ur = f3.coefficient_ring();
        let s = fgl_sum(&f3, &Series::new(u(), ur), &Series::new(Poly::zero(), ur)).unwrap();
        assert_eq!(s.poly, u());
        assert_eq!(
            fgl_sum(&f3, &Series::new(u(), ur), &Series::new(u(), r)),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn inverses() {
        let r = |p: Poly| Series::rational(p);
        assert_eq!(fgl_inverse(&FormalGroupLaw::additive(), &r(u())).unwrap().poly, -u());
        let m = make_fgl(Preset::Multiplicative, 5).unwrap();
        let i = fgl_inverse(&m, &r(u())).unwrap().poly;
        let expected = -&(&(&u() + &u().pow(2)) + &(&u().pow(3) + &u().pow(4)));
        assert_eq!(i, expected);
        let f3 = FormalGroupLaw::universal(3).unwrap();
        let i = fgl_inverse(&f3, &Series::new(u(), f3.coefficient_ring())).unwrap().poly;
        assert_eq!(i, &-u() + &(&Poly::var(Var::beta(1)) * &u().pow(2)));
        assert_eq!(fgl_inverse(&m, &r(&u() + &Poly::one())), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn universal_law_is_a_group_law_mod_truncation() {
        for n in 2..=8 {
            let f = FormalGroupLaw::universal(n).unwrap();
            let ring = f.coefficient_ring();
            let (x, y, z) = (Series::new(u(), ring), Series::new(v(), ring), Series::new(w(), ring));
            let l = fgl_sum(&f, &fgl_sum(&f, &x, &y).unwrap(), &z).unwrap();
            let r = fgl_sum(&f, &x, &fgl_sum(&f, &y, &z).unwrap()).unwrap();
            assert!(Series::new(&l.poly - &r.poly, ring).vanishes_mod(n), "n = {n}");
            let c = fgl_sum(&f, &y, &x).unwrap();
            assert_eq!(c.poly, fgl_sum(&f, &x, &y).unwrap().poly);
            let i = fgl_inverse(&f, &x).unwrap();
            assert!(fgl_sum(&f, &x, &i).unwrap().vanishes_mod(n));
            let ii = fgl_inverse(&f, &i).unwrap();
            assert!(Series::new(&ii.poly - &x.poly, ring).vanishes_mod(n));
        }
    }

    #[test]
    fn beta_coefficients_are_the_u_v_k_terms() {
        let f = FormalGroupLaw::universal(6).unwrap();
        for (i, j, c) in f.law_terms() {
            if i == 1 && j >= 1 {
                assert_eq!(c, Poly::var(Var::beta(j as usize)));
            }
        }
    }
}
