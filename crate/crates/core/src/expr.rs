//! Expression language for ring and shuffle elements.
//!
//! ```text
//! expr    := '-'? term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*
//! factor  := atom ('^' int)?
//! atom    := integer | t | tN | Z | W | beta1_N | pt(k) | a(k,i) | b(k,i)
//!          | Delta(k,l) | e(monomial) | sh(expr, expr) | (expr)
//! ```
//!
//! Inside a kernel expression a bare `Delta` names the diagonal of the slot
//! pair being evaluated and `z` is the kernel argument (only inside `e(...)`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;

use crate::algebra::parse::Lexer;
use crate::algebra::{RatFunc, Var, Q};
use crate::error::{Error, Result};
use crate::ring::{diagonal_class, euler, parse_index, parse_monomial, parse_pair, LineBundleMonomial, Model, RingElement};
use crate::shuffle::{shuffle_product, Kernel, ShuffleElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Var(Var),
    Point(usize),
    A(usize, u32),
    B(usize, u32),
    Delta(usize, usize),
    Euler(LineBundleMonomial),
    Shuffle(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

fn bx(e: Expr) -> Box<Expr> {
    Box::new(e)
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        Expr::parse_in(src, None)
    }

    /// Parses with `pair` resolving bare `Delta` and enabling `z`.
    pub fn parse_in(src: &str, pair: Option<(usize, usize)>) -> Result<Expr> {
        let mut p = Parser { lx: Lexer::new(src), pair };
        let e = p.expr()?;
        if !p.lx.at_end() {
            return Err(p.lx.error("trailing input"));
        }
        Ok(e)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Neg(_) | Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }

    fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Shuffle(a, b) | Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => vec![a, b],
            Expr::Neg(a) | Expr::Pow(a, _) => vec![a],
            _ => Vec::new(),
        }
    }

    /// Number of degree blocks the expression consumes: each `sh` operand
    /// that is not itself a product counts as one.
    pub fn leaves(&self) -> usize {
        match self {
            Expr::Shuffle(a, b) => a.leaves() + b.leaves(),
            _ => self.children().iter().map(|c| c.leaves()).max().unwrap_or(1),
        }
    }

    pub fn contains_shuffle(&self) -> bool {
        matches!(self, Expr::Shuffle(..)) || self.children().iter().any(|c| c.contains_shuffle())
    }

    /// Largest slot index mentioned outside `sh` operands.
    pub fn max_slot(&self) -> usize {
        let own = match self {
            Expr::Var(v) => v.slot().unwrap_or(0),
            Expr::Point(k) | Expr::A(k, _) | Expr::B(k, _) => *k,
            Expr::Delta(k, l) => (*k).max(*l),
            Expr::Euler(m) => m.slots().into_iter().max().unwrap_or(0),
            _ => 0,
        };
        self.children().iter().map(|c| c.max_slot()).fold(own, usize::max)
    }

    fn extra_vars(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Var(v) if v.is_extra() => out.push(*v),
            Expr::Euler(m) => out.extend(m.vars.keys().filter(|v| v.is_extra())),
            _ => {}
        }
        for c in self.children() {
            c.extra_vars(out);
        }
    }

    /// Evaluates in the fixed model `model`; `arg` binds the kernel argument.
    pub fn eval_in(&self, model: &Model, arg: Option<&LineBundleMonomial>) -> Result<RingElement> {
        Evaluator { kernel: None, arg }.eval(self, model, &[model.factors()])
    }

    /// Evaluates with `sh` blocks sized by `parts` (one entry per leaf).
    pub fn eval(&self, base: &Model, parts: &[usize], kernel: &Kernel) -> Result<RingElement> {
        let mut extras: Vec<Var> = base.extra_vars().to_vec();
        self.extra_vars(&mut extras);
        extras.sort_unstable();
        extras.dedup();
        let model = base.with_extra_vars(&extras);
        let total: usize = parts.iter().sum();
        Evaluator { kernel: Some(kernel), arg: None }.eval(self, &model.with_factors(total), parts)
    }

    /// Default block sizes: one factor per `sh` leaf, or `factors` for a plain expression.
    pub fn default_parts(&self, factors: Option<usize>) -> Vec<usize> {
        if self.contains_shuffle() {
            vec![1; self.leaves()]
        } else {
            vec![factors.unwrap_or_else(|| self.max_slot().max(1))]
        }
    }
}

struct Parser<'a> {
    lx: Lexer<'a>,
    pair: Option<(usize, usize)>,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<Expr> {
        let mut acc = if self.lx.eat(b'-') { Expr::Neg(bx(self.term()?)) } else { self.term()? };
        loop {
            if self.lx.eat(b'+') {
                acc = Expr::Add(bx(acc), bx(self.term()?));
            } else if self.lx.eat(b'-') {
                acc = Expr::Sub(bx(acc), bx(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.lx.eat(b'*') {
                acc = Expr::Mul(bx(acc), bx(self.factor()?));
            } else if self.lx.eat(b'/') {
                acc = Expr::Div(bx(acc), bx(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.lx.eat(b'^') {
            return Ok(Expr::Pow(bx(base), self.lx.exponent()?));
        }
        Ok(base)
    }

    fn class_args(&mut self) -> Result<(usize, u32)> {
        let (k, i) = parse_pair(&mut self.lx)?;
        let i = u32::try_from(i).map_err(|_| self.lx.error("class index too large"))?;
        Ok((k, i))
    }

    fn atom(&mut self) -> Result<Expr> {
        if self.lx.eat(b'(') {
            let e = self.expr()?;
            self.lx.expect(b')')?;
            return Ok(e);
        }
        if let Some(n) = self.lx.integer() {
            return Ok(Expr::Num(n));
        }
        let pos = self.lx.pos;
        let Some(name) = self.lx.ident() else {
            return Err(self.lx.error("expected a number, name or `(`"));
        };
        match name {
            "e" => {
                self.lx.expect(b'(')?;
                let m = parse_monomial(&mut self.lx, self.pair)?;
                self.lx.expect(b')')?;
                Ok(Expr::Euler(m))
            }
            "sh" => {
                self.lx.expect(b'(')?;
                let a = self.expr()?;
                self.lx.expect(b',')?;
                let b = self.expr()?;
                self.lx.expect(b')')?;
                Ok(Expr::Shuffle(bx(a), bx(b)))
            }
            "pt" => {
                self.lx.expect(b'(')?;
                let k = parse_index(&mut self.lx)?;
                self.lx.expect(b')')?;
                Ok(Expr::Point(k))
            }
            "a" => self.class_args().map(|(k, i)| Expr::A(k, i)),
            "b" => self.class_args().map(|(k, i)| Expr::B(k, i)),
            "Delta" => {
                let (k, l) = if self.lx.peek() == Some(b'(') {
                    parse_pair(&mut self.lx)?
                } else {
                    self.pair.ok_or(Error::Parse { pos, msg: "bare Delta needs a slot pair".into() })?
                };
                if k == l {
                    return Err(Error::Parse { pos, msg: "diagonal needs two distinct factors".into() });
                }
                Ok(Expr::Delta(k, l))
            }
            "z" if self.pair.is_some() => {
                Err(Error::Parse { pos, msg: "`z` is a line bundle; use e(z)".into() })
            }
            _ => Var::parse(name)
                .map(Expr::Var)
                .ok_or_else(|| Error::Parse { pos, msg: format!("unknown name `{name}`") }),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Expr::parse(s)
    }
}

impl Expr {
    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Var(v) => match v.slot() {
                Some(k) => write!(f, "t{k}"),
                None => write!(f, "{v}"),
            },
            Expr::Point(k) => write!(f, "pt({k})"),
            Expr::A(k, i) => write!(f, "a({k},{i})"),
            Expr::B(k, i) => write!(f, "b({k},{i})"),
            Expr::Delta(k, l) => write!(f, "Delta({k},{l})"),
            Expr::Euler(m) => write!(f, "e({m})"),
            Expr::Shuffle(a, b) => {
                write!(f, "sh(")?;
                a.write_at(f, 0)?;
                write!(f, ", ")?;
                b.write_at(f, 0)?;
                write!(f, ")")
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 2)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.write_at(f, 3)
            }
            Expr::Pow(a, e) => {
                a.write_at(f, 4)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

struct Evaluator<'a> {
    kernel: Option<&'a Kernel>,
    arg: Option<&'a LineBundleMonomial>,
}

impl Evaluator<'_> {
    /// `model` has `sum(parts)` factors.
    fn eval(&self, e: &Expr, model: &Model, parts: &[usize]) -> Result<RingElement> {
        let two = |a: &Expr, b: &Expr| -> Result<(RingElement, RingElement)> {
            Ok((self.eval(a, model, parts)?, self.eval(b, model, parts)?))
        };
        Ok(match e {
            Expr::Num(n) => RingElement::scalar(model, RatFunc::constant(Q::from_integer(n.clone()))),
            Expr::Var(v) => {
                if let Some(k) = v.slot() {
                    model.check_factor(k)?;
                }
                if v.is_coefficient_symbol() && !model.fgl().law().vars().contains(v) {
                    return Err(Error::Domain(format!("`{v}` is not a coefficient of the {} law", model.fgl().theory_name())));
                }
                RingElement::var(model, *v)
            }
            Expr::Point(k) => RingElement::point(model, *k)?,
            Expr::A(k, i) => RingElement::a(model, *k, *i)?,
            Expr::B(k, i) => RingElement::b(model, *k, *i)?,
            Expr::Delta(k, l) => diagonal_class(model, *k, *l)?,
            Expr::Euler(m) => {
                let m = match self.arg {
                    Some(z) => m.bind_arg(z),
                    None if m.vars.contains_key(&Var::ARG) => {
                        return Err(Error::Domain("`z` is only bound inside a kernel".into()));
                    }
                    None => m.clone(),
                };
                euler(model, &m)?
            }
            Expr::Shuffle(a, b) => {
                let kernel = self.kernel.ok_or_else(|| Error::Domain("sh(...) is not available here".into()))?;
                let la = a.leaves();
                if parts.len() != la + b.leaves() {
                    return Err(Error::Domain(format!(
                        "sh(...) needs {} degree blocks, got {parts:?}",
                        la + b.leaves()
                    )));
                }
                let (pa, pb) = parts.split_at(la);
                let ma = model.with_factors(pa.iter().sum());
                let mb = model.with_factors(pb.iter().sum());
                let fa = ShuffleElement::new(self.eval(a, &ma, pa)?)?;
                let fb = ShuffleElement::new(self.eval(b, &mb, pb)?)?;
                shuffle_product(&fa, &fb, kernel)?.into_value()
            }
            Expr::Neg(a) => -&self.eval(a, model, parts)?,
            Expr::Add(a, b) => {
                let (x, y) = two(a, b)?;
                x.checked_add(&y)?
            }
            Expr::Sub(a, b) => {
                let (x, y) = two(a, b)?;
                x.checked_add(&-&y)?
            }
            Expr::Mul(a, b) => {
                let (x, y) = two(a, b)?;
                x.checked_mul(&y)?
            }
            Expr::Div(a, b) => {
                let (x, y) = two(a, b)?;
                x.checked_div(&y).map_err(|_| Error::Domain(format!("{b} is not invertible")))?
            }
            Expr::Pow(a, n) => self
                .eval(a, model, parts)?
                .powi(*n)
                .map_err(|_| Error::Domain(format!("{a} is not invertible")))?,
        })
    }
}

/// `gc`, `gcnorm`, or an expression in `z` and the bare diagonal `Delta`.
pub fn parse_kernel(spec: &str) -> Result<Kernel> {
    match spec {
        "gc" => Ok(Kernel::gc()),
        "gcnorm" => Ok(Kernel::gc_norm()),
        src => {
            let e = Expr::parse_in(src, Some((1, 2)))?;
            if e.contains_shuffle() {
                return Err(Error::Domain("a kernel expression cannot contain sh(...)".into()));
            }
            let text = src.to_string();
            Ok(Kernel::custom(src, move |model, z, pair| Expr::parse_in(&text, Some(pair))?.eval_in(model, Some(z))))
        }
    }
}

fn random_monomial<R: Rng>(rng: &mut R) -> LineBundleMonomial {
    let gens = [
        LineBundleMonomial::t(),
        LineBundleMonomial::slot(1),
        LineBundleMonomial::slot(2),
        LineBundleMonomial::diagonal(1, 2),
        LineBundleMonomial::point(1),
    ];
    let mut m = LineBundleMonomial::trivial();
    for g in &gens {
        if rng.random_bool(0.4) {
            m = m.tensor(&g.pow(rng.random_range(-2..=2)));
        }
    }
    m
}

/// A random tree of depth at most `depth` over slots 1 and 2 and genus-one classes.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    if depth == 0 || rng.random_bool(0.3) {
        return match rng.random_range(0..8) {
            0 => Expr::Num(BigInt::from(rng.random_range(0..7u32))),
            1 => Expr::Var(Var::TAU),
            2 => Expr::Var(Var::u(rng.random_range(1..=2))),
            3 => Expr::Point(rng.random_range(1..=2)),
            4 => Expr::A(rng.random_range(1..=2), 1),
            5 => Expr::B(rng.random_range(1..=2), 1),
            6 => Expr::Delta(1, 2),
            _ => Expr::Euler(random_monomial(rng)),
        };
    }
    let d = depth - 1;
    match rng.random_range(0..8) {
        0 => Expr::Neg(bx(random_expr(rng, d))),
        1 => Expr::Add(bx(random_expr(rng, d)), bx(random_expr(rng, d))),
        2 => Expr::Sub(bx(random_expr(rng, d)), bx(random_expr(rng, d))),
        3 => Expr::Mul(bx(random_expr(rng, d)), bx(random_expr(rng, d))),
        4 => Expr::Div(bx(random_expr(rng, d)), bx(random_expr(rng, d))),
        5 => Expr::Pow(bx(random_expr(rng, d)), rng.random_range(-2..=3)),
        6 => Expr::Shuffle(bx(random_expr(rng, d)), bx(random_expr(rng, d))),
        _ => Expr::Euler(random_monomial(rng)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::FormalGroupLaw;
    use crate::ring::make_model;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn eval(src: &str, g: u32, d: usize) -> Result<RingElement> {
        let m = make_model(g, d, FormalGroupLaw::additive(), &[]);
        let e = Expr::parse(src)?;
        e.eval(&m, &e.default_parts(Some(d)), &Kernel::gc_norm())
    }

    #[test]
    fn grammar_examples() {
        let e = Expr::parse("e(t*t2/t1*O(Delta(1,2)))").unwrap();
        assert!(matches!(e, Expr::Euler(_)));
        assert!(eval("a(1,1)*b(1,1) - pt(1)", 1, 1).unwrap().is_zero());
        assert!(eval("b(1,1)*a(1,1) + pt(1)", 1, 1).unwrap().is_zero());
        assert!(eval("e(t1) - t1", 0, 1).unwrap().is_zero());
        assert!(matches!(Expr::parse("1 +"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(Expr::parse("q"), Err(Error::Parse { .. })));
        assert!(matches!(Expr::parse("Delta"), Err(Error::Parse { .. })));
        assert_eq!(eval("t3", 0, 2).unwrap_err(), Error::FactorIndex { index: 3, factors: 2 });
        assert!(matches!(eval("a(1,2)", 1, 1), Err(Error::ClassIndex { .. })));
        assert!(matches!(eval("1/(t-t)", 0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn shuffle_dispatch() {
        let m = make_model(1, 2, FormalGroupLaw::additive(), &[]);
        let e = Expr::parse("sh(1, 1)").unwrap();
        let via_expr = e.eval(&m, &[1, 1], &Kernel::gc_norm()).unwrap();
        let one = ShuffleElement::new(RingElement::one(&m.with_factors(1))).unwrap();
        let direct = shuffle_product(&one, &one, &Kernel::gc_norm()).unwrap();
        assert_eq!(via_expr, *direct.value());
        let nested = Expr::parse("sh(sh(1, 1), t1)").unwrap();
        assert_eq!(nested.leaves(), 3);
        assert!(nested.eval(&m, &[1, 1, 1], &Kernel::gc()).is_ok());
        assert!(Expr::parse("sh(t1, 1)").unwrap().eval(&m, &[2, 1], &Kernel::gc()).is_err());
    }

    #[test]
    fn custom_kernel_matches_builtin() {
        let k = parse_kernel("e(z*O(-Delta))*e(t*z*O(Delta))/(e(z)*e(t*z))").unwrap();
        for g in 0..=1 {
            let m = make_model(g, 2, FormalGroupLaw::multiplicative(), &[]);
            assert_eq!(k.at_pair(&m, 1, 2).unwrap(), Kernel::gc_norm().at_pair(&m, 1, 2).unwrap());
            assert_eq!(k.at_pair(&m, 2, 1).unwrap(), Kernel::gc_norm().at_pair(&m, 2, 1).unwrap());
        }
        assert!(parse_kernel("z + 1").is_err());
        assert!(parse_kernel("sh(1,1)").is_err());
    }

    #[test]
    fn printing_is_a_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let e = random_expr(&mut rng, 4);
            let s = e.to_string();
            let back = Expr::parse(&s).unwrap_or_else(|err| panic!("{s}: {err}"));
            assert_eq!(back, e, "{s}");
            assert_eq!(back.to_string(), s);
        }
        assert!(Expr::parse("-(a(1,1) - -2)").unwrap_err().to_string().contains("byte"));
        assert_eq!(Expr::parse("(-t)^2*t1^-1").unwrap().to_string(), "(-t)^2*t1^-1");
        assert_eq!(Expr::parse("1 - (2 - t)").unwrap().to_string(), "1 - (2 - t)");
    }
}
