//! The cubic relation among degree-one generators, and what is left over
//! when the generators are taken as plain powers of `u_1`.

use gshuffle::fgl::FormalGroupLaw;
use gshuffle::ring::make_model;
use gshuffle::shuffle::{verify_genus_relation, GeneratorConvention};

fn main() -> gshuffle::Result<()> {
    let m = make_model(1, 1, FormalGroupLaw::additive(), &[]);
    for (i, j) in [(-1, 0), (0, 1), (1, 3)] {
        let r = verify_genus_relation(&m, i, j, GeneratorConvention::DualEuler)?;
        println!("e_{i}, e_{j}: holds {}", r.holds());
    }
    let r = verify_genus_relation(&m, 0, 1, GeneratorConvention::UPower)?;
    println!("with e_m = u1^m the residual is {}", r.residual.value());
    Ok(())
}
