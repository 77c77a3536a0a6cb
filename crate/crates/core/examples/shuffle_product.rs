//! Products in the global shuffle algebra under both kernels, and the two
//! bracketings of a triple product.

use gshuffle::fgl::FormalGroupLaw;
use gshuffle::ring::{make_model, RingElement};
use gshuffle::shuffle::{shuffle_product, Kernel, ShuffleElement};

fn main() -> gshuffle::Result<()> {
    let m1 = make_model(1, 1, FormalGroupLaw::additive(), &[]);
    let one = ShuffleElement::unit(&m1);
    let u = ShuffleElement::new(RingElement::u(&m1, 1))?;

    for k in [Kernel::gc(), Kernel::gc_norm()] {
        println!("kernel {}: g(1,2) = {}", k.name(), k.at_pair(&m1.with_factors(2), 1, 2)?);
        let x = shuffle_product(&one, &u, &k)?;
        println!("  1 * u1 = {}", x.value());
        let left = shuffle_product(&x, &one, &k)?;
        let right = shuffle_product(&one, &shuffle_product(&u, &one, &k)?, &k)?;
        println!("  (1 * u1) * 1 == 1 * (u1 * 1): {}", left == right);
    }
    Ok(())
}
