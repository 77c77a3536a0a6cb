//! The ring of `C^d`: Künneth classes, the diagonal, Euler classes of
//! line-bundle monomials and the JSON interchange format.

use gshuffle::fgl::FormalGroupLaw;
use gshuffle::ring::{diagonal_class, euler, json, make_model, LineBundleMonomial, RingElement};

fn main() -> gshuffle::Result<()> {
    let m = make_model(2, 2, FormalGroupLaw::additive(), &[]);

    let delta = diagonal_class(&m, 1, 2)?;
    println!("Delta(1,2)   = {delta}");
    println!("Delta^2      = {}", &delta * &delta);
    println!("a(1,1)b(1,1) = {}", &RingElement::a(&m, 1, 1)? * &RingElement::b(&m, 1, 1)?);
    println!("a(1,1)a(2,1) + a(2,1)a(1,1) = {}", {
        let (x, y) = (RingElement::a(&m, 1, 1)?, RingElement::a(&m, 2, 1)?);
        &(&x * &y) + &(&y * &x)
    });

    let mono: LineBundleMonomial = "t*t2/t1*O(Delta(1,2))".parse()?;
    let e = euler(&m, &mono)?;
    println!("e({mono}) = {e}");

    let mm = make_model(1, 1, FormalGroupLaw::multiplicative(), &[]);
    println!("multiplicative e(t1^-1) = {}", euler(&mm, &LineBundleMonomial::slot(1).inverse())?);

    let s = json::to_json(&e);
    println!("{s}");
    assert_eq!(json::to_json(&json::from_json(&s)?), s);
    Ok(())
}
