//! Even cohomology of the ruled surface `S = P(T*C ⊕ O)` over a genus `g`
//! curve, with `NS(S) = Z D ⊕ Z f`, and the pushforward to `C`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{q, Q};
use crate::error::{Error, Result};

/// `(r, b_D D + b_f f, c)` in `H^0 ⊕ H^2 ⊕ H^4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceClass {
    pub r: Q,
    pub b_d: Q,
    pub b_f: Q,
    pub c: Q,
    pub genus: u32,
}

/// `(r, deg)` in `H^0(C) ⊕ H^2(C)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveEvenClass {
    pub r: Q,
    pub deg: Q,
    pub genus: u32,
}

fn g_q(g: u32) -> Q {
    q(g as i64)
}

impl SurfaceClass {
    pub fn new(r: Q, b_d: Q, b_f: Q, c: Q, genus: u32) -> Self {
        SurfaceClass { r, b_d, b_f, c, genus }
    }

    pub fn from_ints(r: i64, b_d: i64, b_f: i64, c: i64, genus: u32) -> Self {
        SurfaceClass::new(q(r), q(b_d), q(b_f), q(c), genus)
    }

    pub fn zero(genus: u32) -> Self {
        SurfaceClass::from_ints(0, 0, 0, 0, genus)
    }

    pub fn one(genus: u32) -> Self {
        SurfaceClass::from_ints(1, 0, 0, 0, genus)
    }

    pub fn d(genus: u32) -> Self {
        SurfaceClass::from_ints(0, 1, 0, 0, genus)
    }

    pub fn f(genus: u32) -> Self {
        SurfaceClass::from_ints(0, 0, 1, 0, genus)
    }

    pub fn point(genus: u32) -> Self {
        SurfaceClass::from_ints(0, 0, 0, 1, genus)
    }

    /// `K_S = -2D`.
    pub fn canonical(genus: u32) -> Self {
        SurfaceClass::from_ints(0, -2, 0, 0, genus)
    }

    /// Intersection number of two `H^2` classes: `f^2 = 0`, `Df = 1`, `D^2 = 2 - 2g`.
    pub fn intersect(&self, other: &Self) -> Q {
        let d2 = q(2) - q(2) * g_q(self.genus);
        &self.b_d * &other.b_d * d2 + &self.b_d * &other.b_f + &self.b_f * &other.b_d
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(())
    }

    pub fn scale(&self, k: &Q) -> Self {
        SurfaceClass::new(&self.r * k, &self.b_d * k, &self.b_f * k, &self.c * k, self.genus)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(SurfaceClass::new(
            &self.r + &other.r,
            &self.b_d + &other.b_d,
            &self.b_f + &other.b_f,
            &self.c + &other.c,
            self.genus,
        ))
    }
}

impl Add for &SurfaceClass {
    type Output = SurfaceClass;
    fn add(self, rhs: &SurfaceClass) -> SurfaceClass {
        self.checked_add(rhs).expect("genus mismatch")
    }
}

impl Neg for &SurfaceClass {
    type Output = SurfaceClass;
    fn neg(self) -> SurfaceClass {
        self.scale(&-Q::one())
    }
}

impl Sub for &SurfaceClass {
    type Output = SurfaceClass;
    fn sub(self, rhs: &SurfaceClass) -> SurfaceClass {
        self + &-rhs
    }
}

/// Graded product truncated above `H^4`.
pub fn surf_mul(x: &SurfaceClass, y: &SurfaceClass) -> Result<SurfaceClass> {
    x.check(y)?;
    Ok(SurfaceClass::new(
        &x.r * &y.r,
        &x.r * &y.b_d + &x.b_d * &y.r,
        &x.r * &y.b_f + &x.b_f * &y.r,
        &x.r * &y.c + &x.c * &y.r + x.intersect(y),
        x.genus,
    ))
}

/// `(1, D, 1 - g)`.
pub fn todd_surface(g: u32) -> SurfaceClass {
    SurfaceClass::new(q(1), q(1), q(0), q(1) - g_q(g), g)
}

/// `(1, 1 - g)`.
pub fn todd_curve(g: u32) -> CurveEvenClass {
    CurveEvenClass { r: q(1), deg: q(1) - g_q(g), genus: g }
}

/// `π_*(a, b_D D + b_f f, c) = (b_D, c)`.
pub fn grr_pushforward(x: &SurfaceClass) -> CurveEvenClass {
    CurveEvenClass { r: x.b_d.clone(), deg: x.c.clone(), genus: x.genus }
}

impl CurveEvenClass {
    pub fn new(r: Q, deg: Q, genus: u32) -> Self {
        CurveEvenClass { r, deg, genus }
    }

    pub fn from_ints(r: i64, deg: i64, genus: u32) -> Self {
        CurveEvenClass::new(q(r), q(deg), genus)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(CurveEvenClass::new(&self.r * &other.r, &self.r * &other.deg + &self.deg * &other.r, self.genus))
    }

    /// Inverse of a class with nonzero rank.
    pub fn invert(&self) -> Result<Self> {
        if self.r.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv = self.r.recip();
        Ok(CurveEvenClass::new(inv.clone(), -&self.deg * &inv * &inv, self.genus))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(CurveEvenClass::new(&self.r + &other.r, &self.deg + &other.deg, self.genus))
    }
}

/// `ch(E) = (r, aD + bf, a^2(1-g) + ab - c_2)` for `c_1(E) = aD + bf`.
pub fn ch_from_invariants(r: i64, a: i64, b: i64, c2: i64, g: u32) -> SurfaceClass {
    let (a, b) = (q(a), q(b));
    let ch2 = &a * &a * (q(1) - g_q(g)) + &a * &b - q(c2);
    SurfaceClass::new(q(r), a, b, ch2, g)
}

/// `c_2 = c_1^2 / 2 - ch_2`.
pub fn c2_from_ch(ch: &SurfaceClass) -> Q {
    ch.intersect(ch) / q(2) - &ch.c
}

/// `ch(Rπ_*E)` from `π_*(ch(E) td(S)) = ch(Rπ_*E) td(C)`.
pub fn pushforward_ch(ch: &SurfaceClass) -> Result<CurveEvenClass> {
    let g = ch.genus;
    let rhs = grr_pushforward(&surf_mul(ch, &todd_surface(g))?);
    rhs.mul(&todd_curve(g).invert()?)
}

/// Invariants `(a, c_2)` forcing `Rπ_*E` to have rank 0 and degree `-d`:
/// `a = -r`, `c_2 = d + (r-1)(r(1-g) - b)`.
pub fn torsion_solve(r: i64, b: i64, d: i64, g: u32) -> (i64, i64) {
    let gi = g as i64;
    (-r, d + (r - 1) * (r * (1 - gi) - b))
}

/// The numerical invariants of a framed sheaf of rank `n` whose
/// pushforward is torsion of length `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramedInvariants {
    pub n: i64,
    pub d: i64,
    pub g: u32,
    pub rank: i64,
    pub c1_f: i64,
    pub c1_d: i64,
    pub c2: i64,
}

/// `rk = n`, `c_{1,f} = n(2-2g)`, `c_{1,D} = -n`, `c_2 = d + n(n-1)(g-1)`.
pub fn framed_invariants(n: i64, d: i64, g: u32) -> FramedInvariants {
    let gi = g as i64;
    FramedInvariants { n, d, g, rank: n, c1_f: n * (2 - 2 * gi), c1_d: -n, c2: d + n * (n - 1) * (gi - 1) }
}

/// `ch(E)` assembled from the resolution of the framed sheaf:
/// `(1, -2D + (2-2g)f, 0) · ((0, df, 0) - (-n, df, 0) · td(S))`.
pub fn framed_ch(n: i64, d: i64, g: u32) -> Result<SurfaceClass> {
    let gi = g as i64;
    let twist = SurfaceClass::from_ints(1, -2, 2 - 2 * gi, 0, g);
    let alpha = SurfaceClass::from_ints(0, 0, d, 0, g);
    let beta = SurfaceClass::from_ints(-n, 0, d, 0, g);
    surf_mul(&twist, &(&alpha - &surf_mul(&beta, &todd_surface(g))?))
}

/// `(n, -nD + n(2-2g)f, -n(1-g) - d)`.
pub fn framed_ch_closed_form(n: i64, d: i64, g: u32) -> SurfaceClass {
    let gi = g as i64;
    SurfaceClass::from_ints(n, -n, n * (2 - 2 * gi), -n * (1 - gi) - d, g)
}

/// Every step of the chain for one `(n, d, g)`.
#[derive(Clone, Debug, Serialize)]
pub struct ChernReport {
    #[serde(flatten)]
    pub invariants: FramedInvariants,
    pub ch: ChJson,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChJson {
    pub rank: String,
    #[serde(rename = "D")]
    pub d: String,
    pub f: String,
    pub ch2: String,
    pub text: String,
}

impl From<&SurfaceClass> for ChJson {
    fn from(x: &SurfaceClass) -> Self {
        ChJson { rank: x.r.to_string(), d: x.b_d.to_string(), f: x.b_f.to_string(), ch2: x.c.to_string(), text: x.to_string() }
    }
}

pub fn chern_report(n: i64, d: i64, g: u32) -> Result<ChernReport> {
    if n < 1 || d < 0 {
        return Err(Error::Domain(format!("need n >= 1 and d >= 0, got n={n}, d={d}")));
    }
    let inv = framed_invariants(n, d, g);
    let ch = framed_ch(n, d, g)?;
    let (a, c2) = torsion_solve(n, inv.c1_f, d, g);
    let from_invariants = ch_from_invariants(n, a, inv.c1_f, c2, g);
    let pushed = pushforward_ch(&from_invariants)?;
    let holds = ch == framed_ch_closed_form(n, d, g)
        && from_invariants == ch
        && a == inv.c1_d
        && c2 == inv.c2
        && c2_from_ch(&ch) == q(inv.c2)
        && pushed == CurveEvenClass::from_ints(0, -d, g);
    Ok(ChernReport { invariants: inv, ch: ChJson::from(&ch), holds })
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Q, sym: &str, first: bool) -> fmt::Result {
    if c.is_zero() {
        return Ok(());
    }
    let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
    let abs = c.abs();
    if abs.is_one() {
        write!(f, "{sign}{sym}")
    } else {
        write!(f, "{sign}{abs}{sym}")
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, ", self.r)?;
        if self.b_d.is_zero() && self.b_f.is_zero() {
            write!(f, "0")?;
        } else {
            write_coeff(f, &self.b_d, "D", true)?;
            write_coeff(f, &self.b_f, "f", self.b_d.is_zero())?;
        }
        write!(f, ", {})", self.c)
    }
}

impl fmt::Display for CurveEvenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.deg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(g: u32) -> Vec<SurfaceClass> {
        vec![SurfaceClass::one(g), SurfaceClass::d(g), SurfaceClass::f(g), SurfaceClass::point(g)]
    }

    #[test]
    fn product_rules() {
        for g in 0..=3 {
            let gi = g as i64;
            assert_eq!(surf_mul(&SurfaceClass::d(g), &SurfaceClass::f(g)).unwrap(), SurfaceClass::point(g));
            assert_eq!(surf_mul(&SurfaceClass::f(g), &SurfaceClass::f(g)).unwrap(), SurfaceClass::zero(g));
            assert_eq!(surf_mul(&SurfaceClass::d(g), &SurfaceClass::d(g)).unwrap().c, q(2 - 2 * gi));
            for x in basis(g) {
                assert_eq!(surf_mul(&SurfaceClass::one(g), &x).unwrap(), x);
                for y in basis(g) {
                    assert_eq!(surf_mul(&x, &y).unwrap(), surf_mul(&y, &x).unwrap());
                    for z in basis(g) {
                        let l = surf_mul(&surf_mul(&x, &y).unwrap(), &z).unwrap();
                        let r = surf_mul(&x, &surf_mul(&y, &z).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
        let td = todd_surface(1);
        assert_eq!(surf_mul(&td, &td).unwrap(), SurfaceClass::from_ints(1, 2, 0, 0, 1));
        assert_eq!(surf_mul(&SurfaceClass::d(0), &SurfaceClass::d(1)), Err(Error::GenusMismatch(0, 1)));
    }

    #[test]
    fn todd_and_pushforward() {
        assert_eq!(todd_surface(0), SurfaceClass::from_ints(1, 1, 0, 1, 0));
        assert_eq!(todd_surface(1), SurfaceClass::from_ints(1, 1, 0, 0, 1));
        assert_eq!(todd_curve(2), CurveEvenClass::from_ints(1, -1, 2));
        assert_eq!(grr_pushforward(&SurfaceClass::from_ints(1, 2, 3, 5, 0)), CurveEvenClass::from_ints(2, 5, 0));
        assert_eq!(grr_pushforward(&SurfaceClass::zero(0)), CurveEvenClass::from_ints(0, 0, 0));
        for g in 0..=3 {
            assert_eq!(grr_pushforward(&todd_surface(g)), todd_curve(g));
        }
    }

    #[test]
    fn chain_reproduces_closed_forms() {
        for g in 0..=3u32 {
            let gi = g as i64;
            for r in -2..=3 {
                for a in -3..=3 {
                    for b in -3..=3 {
                        let c2 = 2;
                        let ch = ch_from_invariants(r, a, b, c2, g);
                        let lhs = grr_pushforward(&surf_mul(&ch, &todd_surface(g)).unwrap());
                        let expected = CurveEvenClass::from_ints(
                            a + r,
                            (r + a * a + 2 * a) * (1 - gi) + (a + 1) * b - c2,
                            g,
                        );
                        assert_eq!(lhs, expected);
                        assert_eq!(c2_from_ch(&ch), q(c2));
                    }
                }
            }
            for n in 1..=5 {
                for d in 1..=5 {
                    let report = chern_report(n, d, g).unwrap();
                    assert!(report.holds, "n={n} d={d} g={g}");
                }
            }
        }
    }

    #[test]
    fn chern_example() {
        let r = chern_report(1, 3, 2).unwrap();
        assert_eq!(r.invariants.c2, 3);
        assert_eq!(r.ch.text, "(1, -D-2f, -2)");
        assert!(chern_report(0, 3, 2).is_err());
    }
}
