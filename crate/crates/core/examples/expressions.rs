//! The expression language behind the command line, and the CLI entry point
//! driven in-process.

use gshuffle::expr::{parse_kernel, Expr};

fn main() -> gshuffle::Result<()> {
    for src in ["e(t*t2/t1*O(Delta(1,2)))", "a(1,1)*b(1,1) - pt(1)", "sh(u1, 1)^2 / 3"] {
        let e = Expr::parse(src)?;
        println!("{src}  ->  {e}");
    }
    let kernel = parse_kernel("e(z*O(-Delta))*e(t*z*O(Delta))/(e(z)*e(t*z))")?;
    let e = Expr::parse("sh(1, 1)")?;
    let m = gshuffle::ring::make_model(0, 0, gshuffle::fgl::FormalGroupLaw::additive(), &[]);
    println!("sh(1, 1) under a custom kernel = {}", e.eval(&m, &[1, 1], &kernel)?);

    let args = ["gshuffle", "--json", "chern", "2", "1", "0"];
    let code = gshuffle::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
    println!("exit code {code}");
    Ok(())
}
