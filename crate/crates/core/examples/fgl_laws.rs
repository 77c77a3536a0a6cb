//! The three formal group law presets, their inverses, and the group axioms
//! checked modulo the truncation degree.

use gshuffle::algebra::{Poly, Var};
use gshuffle::fgl::{fgl_inverse, fgl_sum, FormalGroupLaw, Series};

fn main() -> gshuffle::Result<()> {
    let laws = [FormalGroupLaw::additive(), FormalGroupLaw::multiplicative(), FormalGroupLaw::universal(4)?];
    for f in &laws {
        let ring = f.coefficient_ring();
        let x = Series::new(Poly::var(Var::u(1)), ring);
        let y = Series::new(Poly::var(Var::u(2)), ring);
        let z = Series::new(Poly::var(Var::u(3)), ring);
        let left = fgl_sum(f, &fgl_sum(f, &x, &y)?, &z)?;
        let right = fgl_sum(f, &x, &fgl_sum(f, &y, &z)?)?;
        let cancel = fgl_sum(f, &x, &fgl_inverse(f, &x)?)?;

        println!("{f}");
        println!("  F(x, y) = {}", f.law());
        println!("  inverse = {}", f.inverse_series());
        println!("  associative: {}", Series::new(&left.poly - &right.poly, ring).vanishes_mod(f.truncation()));
        println!("  F(x, inverse(x)) = 0: {}", cancel.vanishes_mod(f.truncation()));
    }
    Ok(())
}
