//! The exchange relation between two `E_L` series, as delta-distributions.

use gshuffle::distributions::verify_quadratic;
use gshuffle::fgl::FormalGroupLaw;
use gshuffle::ring::make_model;
use gshuffle::shuffle::Kernel;

fn main() -> gshuffle::Result<()> {
    for fgl in [FormalGroupLaw::additive(), FormalGroupLaw::multiplicative()] {
        let m = make_model(1, 2, fgl.clone(), &[]);
        for (l1, l2) in [("t1^-1", "t2^-1"), ("t*t1^-1", "t2^-1")] {
            let r = verify_quadratic(&m, &l1.parse()?, &l2.parse()?, &Kernel::gc())?;
            println!(
                "{fgl} L1={l1} L2={l2}: {} components, residual zero: {}",
                r.lhs.components().len(),
                r.holds()
            );
        }
    }
    Ok(())
}
