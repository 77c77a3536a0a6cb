//! Chern data of framed sheaves on the ruled surface over a genus `g` curve.

use gshuffle::surface::{chern_report, framed_ch, todd_surface, SurfaceClass};

fn main() -> gshuffle::Result<()> {
    for g in 0..=2 {
        println!("g={g}: td(S) = {}, K = {}", todd_surface(g), SurfaceClass::canonical(g));
    }
    for (n, d, g) in [(1, 3, 2), (2, 1, 0), (3, 4, 1)] {
        let r = chern_report(n, d, g)?;
        println!("n={n} d={d} g={g}: c2 = {}, ch = {}, chain holds: {}", r.invariants.c2, framed_ch(n, d, g)?, r.holds);
    }
    Ok(())
}
