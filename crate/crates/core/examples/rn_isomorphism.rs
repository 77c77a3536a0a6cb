//! The renormalization map carries the normalized product to the plain one.

use gshuffle::fgl::FormalGroupLaw;
use gshuffle::ring::{make_model, RingElement};
use gshuffle::shuffle::{rn_inverse, rn_map, shuffle_product, Kernel, ShuffleElement};

fn main() -> gshuffle::Result<()> {
    let m1 = make_model(1, 1, FormalGroupLaw::additive(), &[]);
    let f = ShuffleElement::new(RingElement::u(&m1, 1))?;
    let h = ShuffleElement::new(RingElement::u(&m1, 1).powi(-1)?)?;

    let lhs = rn_map(&shuffle_product(&f, &h, &Kernel::gc_norm())?)?;
    let rhs = shuffle_product(&rn_map(&f)?, &rn_map(&h)?, &Kernel::gc())?;
    println!("RN(f *norm h) == RN(f) * RN(h): {}", lhs == rhs);
    println!("RN^-1 RN(f) == f: {}", rn_inverse(&rn_map(&f)?)? == f);
    Ok(())
}
