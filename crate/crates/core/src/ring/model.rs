use std::fmt;
use std::sync::Arc;

use crate::algebra::Var;
use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;

/// One curve-cohomology class in a single factor, as a code:
/// `0` is the unit, `1..=g` are `a_i`, `g+1..=2g` are `b_i`, `2g+1` is the point class.
pub type ClassCode = u8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveClass {
    One,
    A(u32),
    B(u32),
    Point,
}

/// Exact model of the localized equivariant theory of `C^d`.
#[derive(Debug, PartialEq, Eq)]
pub struct RingModel {
    genus: u32,
    factors: usize,
    fgl: FormalGroupLaw,
    extra_vars: Vec<Var>,
}

pub type Model = Arc<RingModel>;

pub fn make_model(genus: u32, factors: usize, fgl: FormalGroupLaw, extra_vars: &[Var]) -> Model {
    assert!(2 * genus + 1 < u8::MAX as u32, "genus too large");
    Arc::new(RingModel { genus, factors, fgl, extra_vars: extra_vars.to_vec() })
}

impl RingModel {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn fgl(&self) -> &FormalGroupLaw {
        &self.fgl
    }

    pub fn extra_vars(&self) -> &[Var] {
        &self.extra_vars
    }

    /// Same genus, law and extra variables with a different number of factors.
    pub fn with_factors(&self, factors: usize) -> Model {
        make_model(self.genus, factors, self.fgl.clone(), &self.extra_vars)
    }

    pub fn with_extra_vars(&self, extra: &[Var]) -> Model {
        make_model(self.genus, self.factors, self.fgl.clone(), extra)
    }

    /// Number of classes in one factor: `2 + 2g`.
    pub fn classes_per_factor(&self) -> usize {
        2 + 2 * self.genus as usize
    }

    pub fn basis_size(&self) -> usize {
        self.classes_per_factor().pow(self.factors as u32)
    }

    pub fn point_code(&self) -> ClassCode {
        (2 * self.genus + 1) as ClassCode
    }

    pub fn a_code(&self, i: u32) -> ClassCode {
        debug_assert!(i >= 1 && i <= self.genus);
        i as ClassCode
    }

    pub fn b_code(&self, i: u32) -> ClassCode {
        debug_assert!(i >= 1 && i <= self.genus);
        (self.genus + i) as ClassCode
    }

    pub fn class(&self, code: ClassCode) -> CurveClass {
        let c = code as u32;
        let g = self.genus;
        match c {
            0 => CurveClass::One,
            c if c <= g => CurveClass::A(c),
            c if c <= 2 * g => CurveClass::B(c - g),
            _ => CurveClass::Point,
        }
    }

    pub fn code(&self, class: CurveClass) -> ClassCode {
        match class {
            CurveClass::One => 0,
            CurveClass::A(i) => self.a_code(i),
            CurveClass::B(i) => self.b_code(i),
            CurveClass::Point => self.point_code(),
        }
    }

    /// Cohomological degree: 0 for the unit, 1 for `a_i`, `b_i`, 2 for the point.
    pub fn degree(&self, code: ClassCode) -> u32 {
        match code as u32 {
            0 => 0,
            c if c <= 2 * self.genus => 1,
            _ => 2,
        }
    }

    pub fn is_odd(&self, code: ClassCode) -> bool {
        self.degree(code) == 1
    }

    /// Product of two classes in one factor: `None` for zero, else a sign and code.
    pub fn class_mul(&self, x: ClassCode, y: ClassCode) -> Option<(bool, ClassCode)> {
        if x == 0 {
            return Some((false, y));
        }
        if y == 0 {
            return Some((false, x));
        }
        let g = self.genus as ClassCode;
        // a_i b_i = pt = -b_i a_i; all other positive-degree products vanish
        if x <= g && y == x + g {
            return Some((false, self.point_code()));
        }
        if y <= g && x == y + g {
            return Some((true, self.point_code()));
        }
        None
    }

    pub fn check_factor(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.factors {
            return Err(Error::FactorIndex { index: k, factors: self.factors });
        }
        Ok(())
    }

    pub fn check_class_index(&self, i: u32) -> Result<()> {
        if i == 0 || i > self.genus {
            return Err(Error::ClassIndex { index: i as usize, genus: self.genus });
        }
        Ok(())
    }

    /// Every variable that may appear in a coefficient.
    pub fn allows_var(&self, v: Var) -> bool {
        v == Var::TAU
            || v.slot().is_some_and(|k| k <= self.factors)
            || self.extra_vars.contains(&v)
            || (v.beta_index().is_some() && !self.fgl.is_exact())
    }
}

impl fmt::Display for RingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genus {} with {} factors, {} theory", self.genus, self.factors, self.fgl)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(make_model(0, 1, FormalGroupLaw::additive(), &[]).basis_size(), 2);
        assert_eq!(make_model(1, 2, FormalGroupLaw::additive(), &[]).basis_size(), 16);
        let m = make_model(2, 2, FormalGroupLaw::multiplicative(), &[Var::Z, Var::W]);
        assert_eq!(m.basis_size(), 36);
    }

    #[test]
    fn symplectic_products() {
        let m = make_model(2, 1, FormalGroupLaw::additive(), &[]);
        let (a1, b1, a2) = (m.a_code(1), m.b_code(1), m.a_code(2));
        assert_eq!(m.class_mul(a1, b1), Some((false, m.point_code())));
        assert_eq!(m.class_mul(b1, a1), Some((true, m.point_code())));
        assert_eq!(m.class_mul(a1, a2), None);
        assert_eq!(m.class_mul(a1, a1), None);
        assert_eq!(m.class_mul(m.point_code(), a1), None);
    }
}
