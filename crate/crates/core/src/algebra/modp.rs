//! Arithmetic modulo the Mersenne prime 2^61 - 1, used for fast
//! divisibility filters.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::poly::Q;
use super::var::Var;

pub const P: u64 = (1u64 << 61) - 1;

#[inline]
pub fn reduce128(x: u128) -> u64 {
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let mut s = lo + (hi & P) + ((hi >> 61) & P);
    while s >= P {
        s -= P;
    }
    s
}

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    reduce128(a as u128 * b as u128)
}

pub fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> Option<u64> {
    (a != 0).then(|| pow(a, P - 2))
}

pub fn from_bigint(n: &BigInt) -> u64 {
    if let Some(x) = n.to_i64() {
        return if x >= 0 { x as u64 % P } else { sub(0, x.unsigned_abs() % P) };
    }
    let m = BigInt::from(P);
    let r = n.abs() % &m;
    let r = r.to_u64().unwrap();
    if n.is_negative() {
        sub(0, r)
    } else {
        r
    }
}

pub fn from_rational(c: &Q) -> Option<u64> {
    let d = from_bigint(c.denom());
    Some(mul(from_bigint(c.numer()), inv(d)?))
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Deterministic pseudo-random value for variable `v` in evaluation set `set`.
pub fn sample(v: Var, set: u64) -> u64 {
    splitmix((v.0 as u64) << 20 ^ set.wrapping_mul(0x1234_5678_9abc_def1)) % P
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_laws() {
        let a = 123_456_789_012_345u64 % P;
        assert_eq!(mul(a, inv(a).unwrap()), 1);
        assert_eq!(add(sub(5, 7), 2), 0);
        assert_eq!(from_bigint(&BigInt::from(-1)), P - 1);
    }
}
