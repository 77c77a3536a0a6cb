//! Parser for rational-function text as printed by [`RatFunc`]'s `Display`.
//!
//! Grammar: sums and differences of products and quotients of powers of
//! integers, variable names and parenthesized expressions; a leading minus
//! is allowed on any operand of `+`/`-`.

use std::str::FromStr;

use num_bigint::BigInt;

use super::poly::Q;
use super::ratfunc::RatFunc;
use super::var::Var;
use crate::error::Error;

pub(crate) struct Lexer<'a> {
    pub src: &'a [u8],
    pub pos: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    /// Signed integer exponent after `^`.
    pub fn exponent(&mut self) -> Result<i32, Error> {
        let neg = self.eat(b'-');
        let n = self.integer().ok_or_else(|| self.error("expected integer exponent"))?;
        let n: i32 = i32::try_from(n).map_err(|_| self.error("exponent too large"))?;
        Ok(if neg { -n } else { n })
    }

    pub fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos || self.src[start].is_ascii_digit() {
            self.pos = start;
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()
    }
}

fn expr(lx: &mut Lexer) -> Result<RatFunc, Error> {
    let mut acc = if lx.eat(b'-') { -term(lx)? } else { term(lx)? };
    loop {
        if lx.eat(b'+') {
            acc = &acc + &term(lx)?;
        } else if lx.eat(b'-') {
            acc = &acc - &term(lx)?;
        } else {
            return Ok(acc);
        }
    }
}

fn term(lx: &mut Lexer) -> Result<RatFunc, Error> {
    let mut acc = factor(lx)?;
    loop {
        if lx.eat(b'*') {
            acc = &acc * &factor(lx)?;
        } else if lx.eat(b'/') {
            let pos = lx.pos;
            for d in divisor(lx)? {
                acc = acc.checked_div(&d).map_err(|_| Error::Parse { pos, msg: "division by zero".into() })?;
            }
        } else {
            return Ok(acc);
        }
    }
}

/// The multiplicands of a divisor. A parenthesized product is divided out one
/// factor at a time, so a printed denominator keeps its factored form.
fn divisor(lx: &mut Lexer) -> Result<Vec<RatFunc>, Error> {
    let start = lx.pos;
    if lx.eat(b'(') {
        let mut fs = vec![factor(lx)?];
        while lx.eat(b'*') {
            fs.push(factor(lx)?);
        }
        if lx.eat(b')') && lx.peek() != Some(b'^') {
            return Ok(fs);
        }
        lx.pos = start;
    }
    Ok(vec![factor(lx)?])
}

fn factor(lx: &mut Lexer) -> Result<RatFunc, Error> {
    let base = atom(lx)?;
    if lx.eat(b'^') {
        let pos = lx.pos;
        let e = lx.exponent()?;
        return base.pow(e).map_err(|_| Error::Parse { pos, msg: "zero to a negative power".into() });
    }
    Ok(base)
}

fn atom(lx: &mut Lexer) -> Result<RatFunc, Error> {
    if lx.eat(b'(') {
        let e = expr(lx)?;
        lx.expect(b')')?;
        return Ok(e);
    }
    if let Some(n) = lx.integer() {
        return Ok(RatFunc::constant(Q::from_integer(n)));
    }
    let pos = lx.pos;
    match lx.ident() {
        Some(name) => Var::parse(name)
            .map(RatFunc::var)
            .ok_or_else(|| Error::Parse { pos, msg: format!("unknown variable `{name}`") }),
        None => Err(lx.error("expected a number, variable or `(`")),
    }
}

impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut lx = Lexer::new(s);
        let r = expr(&mut lx)?;
        if !lx.at_end() {
            return Err(lx.error("trailing input"));
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_forms_parse_back() {
        let samples = ["0", "-3/4*t^2+u1", "(-u1+u2)/(t-u1+u2)", "(1)/((u1)^2*(u1-1))", "beta1_2*u1-Z*W"];
        for s in samples {
            let r: RatFunc = s.parse().unwrap();
            let again: RatFunc = r.to_string().parse().unwrap();
            assert_eq!(r.to_string(), again.to_string(), "{s}");
        }
        // a product of atoms unknown to this process stays factored
        let r: RatFunc = "(2*t)/((t+u7-u8)*(t-u7+u8))".parse().unwrap();
        assert_eq!(r.to_string(), "(2*t)/((t+u7-u8)*(t-u7+u8))");
        assert!("u1+".parse::<RatFunc>().is_err());
        assert!("1/(u1-u1)".parse::<RatFunc>().is_err());
        assert!("q".parse::<RatFunc>().is_err());
    }
}
