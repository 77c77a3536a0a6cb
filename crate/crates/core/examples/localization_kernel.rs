//! The kernel block of a composition rebuilt from the tangent weights at a
//! torus-fixed point.

use gshuffle::fgl::FormalGroupLaw;
use gshuffle::quot::{derived_kernel, tangent_weights, Composition};
use gshuffle::ring::make_model;

fn main() -> gshuffle::Result<()> {
    let c = Composition::new(&[1, 2])?;
    let (full, filtered, nilp) = tangent_weights(&c);
    println!("composition {c}");
    println!("  full weights:     {:?}", full.monomials());
    println!("  filtered weights: {:?}", filtered.monomials());
    println!("  nilpotent dual:   {:?}", nilp.monomials());

    for fgl in [FormalGroupLaw::additive(), FormalGroupLaw::multiplicative()] {
        for d in 1..=3 {
            let m = make_model(1, d, fgl.clone(), &[]);
            for c in Composition::all(d) {
                println!("{fgl} {c}: derived == kernel block: {}", derived_kernel(&c, &m)?.equal());
            }
        }
    }
    Ok(())
}
