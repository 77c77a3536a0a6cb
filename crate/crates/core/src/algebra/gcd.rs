//! Multivariate gcd by recursive primitive pseudo-remainder sequences.
//!
//! Only used when new denominator atoms are registered, so it favours
//! simplicity over speed.

use num_traits::One;

use super::poly::{Mono, Poly, Q};
use super::var::Var;

/// Normalized gcd: primitive integer polynomial with positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    normalize(&gcd_nonzero(a, b))
}

pub fn normalize(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    p.primitive().1
}

fn gcd_nonzero(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a = if ma.is_one() { a.clone() } else { a.exact_div(&Poly::monomial(ma, Q::one())).unwrap() };
    let b = if mb.is_one() { b.clone() } else { b.exact_div(&Poly::monomial(mb, Q::one())).unwrap() };
    gcd_no_monomial(&a, &b).mul_mono(&mg, &Q::one())
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(&x) = va.iter().find(|v| !vb.contains(v)) {
        return gcd_nonzero(&content_in(a, x), b);
    }
    if let Some(&x) = vb.iter().find(|v| !va.contains(v)) {
        return gcd_nonzero(a, &content_in(b, x));
    }
    if a.exact_div(b).is_some() {
        return normalize(b);
    }
    if b.exact_div(a).is_some() {
        return normalize(a);
    }
    let x = *va
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomial has a variable");
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let c = gcd_nonzero(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut r = b.exact_div(&cb).expect("content divides");
    if p.degree_in(x) < r.degree_in(x) {
        std::mem::swap(&mut p, &mut r);
    }
    let g = loop {
        let rem = pseudo_rem(&p, &r, x);
        if rem.is_zero() {
            break r;
        }
        if rem.degree_in(x) == 0 {
            break Poly::one();
        }
        let rem = primitive_in(&rem, x);
        p = r;
        r = rem;
    };
    let g = primitive_in(&g, x);
    normalize(&(&c * &g))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content_in(p: &Poly, x: Var) -> Poly {
    let mut coeffs: Vec<Poly> = p.coefficients_in(x).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = match coeffs.first() {
        Some(c) => normalize(c),
        None => return Poly::zero(),
    };
    for c in &coeffs[1..] {
        if g.is_constant() {
            return Poly::one();
        }
        g = normalize(&gcd_nonzero(&g, c));
    }
    if g.is_constant() {
        Poly::one()
    } else {
        g
    }
}

fn primitive_in(p: &Poly, x: Var) -> Poly {
    let c = content_in(p, x);
    if c.is_one() {
        normalize(p)
    } else {
        normalize(&p.exact_div(&c).expect("content divides"))
    }
}

/// Sparse pseudo-remainder of `a` by `b` with respect to `x`.
fn pseudo_rem(a: &Poly, b: &Poly, x: Var) -> Poly {
    let db = b.degree_in(x);
    let bc = b.coefficients_in(x);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    loop {
        let dr = r.degree_in(x);
        if r.is_zero() || dr < db {
            return r;
        }
        let lr = r.coefficients_in(x)[dr as usize].clone();
        let shift = Poly::monomial(Mono::var(x, dr - db), Q::one());
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: usize) -> Poly {
        Poly::var(Var::u(k))
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let t = Poly::var(Var::TAU);
        let f = &(&v(1) - &v(2)) + &t;
        let g1 = &(&v(1) + &Poly::int(2)) * &v(3);
        let g2 = &(&v(2) * &v(2)) - &t;
        let a = &f * &g1;
        let b = &f * &g2;
        assert_eq!(gcd(&a, &b), normalize(&f));
        assert!(gcd(&g1, &g2).is_one());
    }

    #[test]
    fn gcd_with_monomial_and_powers() {
        let f = &v(1) - &v(2);
        let a = &(&f * &f) * &v(1);
        let b = &f * &(&v(1) * &v(1));
        assert_eq!(gcd(&a, &b), normalize(&(&f * &v(1))));
    }
}
