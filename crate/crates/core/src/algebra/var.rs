use std::fmt;

/// A polynomial variable.
///
/// Ids are global so that coefficients from different models can be
/// combined without a symbol table: `t` is the dilation-torus class,
/// `u1, u2, ...` are the Euler classes of the slot characters, `Z`/`W`
/// are the formal symbols of the distribution calculus and `beta1_k`
/// are the free coefficients of the truncated universal group law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u16);

const U_BASE: u16 = 0;
const U_MAX: u16 = 999;
const Z_ID: u16 = 1000;
const W_ID: u16 = 1001;
const X_ID: u16 = 1002;
const Y_ID: u16 = 1003;
const ARG_ID: u16 = 1004;
const BETA_BASE: u16 = 2000;

impl Var {
    pub const TAU: Var = Var(0);
    pub const Z: Var = Var(Z_ID);
    pub const W: Var = Var(W_ID);
    /// Formal arguments of a group law `F(x, y)`.
    pub const X: Var = Var(X_ID);
    pub const Y: Var = Var(Y_ID);
    /// Argument `z` of a kernel written as an expression; never a ring variable.
    pub const ARG: Var = Var(ARG_ID);

    /// Euler class of the `k`-th slot character (1-based).
    pub fn u(k: usize) -> Var {
        assert!(k >= 1 && k <= U_MAX as usize, "slot index {k} out of range");
        Var(U_BASE + k as u16)
    }

    /// Free generator `beta_{1,k}` of the universal law (coefficient of `u v^k`).
    pub fn beta(k: usize) -> Var {
        assert!((1..1000).contains(&k));
        Var(BETA_BASE + k as u16)
    }

    pub fn slot(self) -> Option<usize> {
        if self.0 > U_BASE && self.0 <= U_MAX {
            Some((self.0 - U_BASE) as usize)
        } else {
            None
        }
    }

    pub fn beta_index(self) -> Option<usize> {
        (self.0 > BETA_BASE && self.0 < BETA_BASE + 1000).then(|| (self.0 - BETA_BASE) as usize)
    }

    pub fn is_coefficient_symbol(self) -> bool {
        self.0 > BETA_BASE
    }

    pub fn is_extra(self) -> bool {
        self == Var::Z || self == Var::W
    }

    pub fn parse(name: &str) -> Option<Var> {
        match name {
            "t" => return Some(Var::TAU),
            "Z" => return Some(Var::Z),
            "W" => return Some(Var::W),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix("beta1_") {
            return rest.parse::<usize>().ok().filter(|k| (1..1000).contains(k)).map(Var::beta);
        }
        let digits = name.strip_prefix('u').or_else(|| name.strip_prefix('t'))?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
            return None;
        }
        digits
            .parse::<usize>()
            .ok()
            .filter(|k| (1..=U_MAX as usize).contains(k))
            .map(Var::u)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "t"),
            x if x <= U_MAX => write!(f, "u{}", x - U_BASE),
            Z_ID => write!(f, "Z"),
            W_ID => write!(f, "W"),
            X_ID => write!(f, "x"),
            Y_ID => write!(f, "y"),
            ARG_ID => write!(f, "z"),
            x if x > BETA_BASE && x < BETA_BASE + 1000 => write!(f, "beta1_{}", x - BETA_BASE),
            x => write!(f, "v{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in [Var::TAU, Var::u(1), Var::u(12), Var::Z, Var::W, Var::beta(3)] {
            assert_eq!(Var::parse(&v.to_string()), Some(v));
        }
        assert_eq!(Var::parse("t3"), Some(Var::u(3)));
        assert_eq!(Var::parse("u0"), None);
        assert_eq!(Var::parse("x"), None);
    }
}
