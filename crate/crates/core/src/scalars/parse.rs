//! Text literals for Laurent polynomials, e.g. `"1/2*t^(1/2) - i*t^-1 + 3"`.
//!
//! Grammar: sums and differences of products/quotients of atoms, where an
//! atom is an integer, `i` (needs 4 | N), `z` (ζ_N), `t`, or a parenthesized
//! expression. `^` takes an integer, or a parenthesized rational when the
//! base is a monomial. Division is only allowed by units.

use super::cyclotomic::{default_field, Scalar};
use super::laurent::{Exponent, Laurent};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&mut self) -> Option<char> {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.peek();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("integer out of range"))
    }

    fn expr(&mut self) -> Result<Laurent> {
        let mut acc = if self.eat('-') { -self.term()? } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Laurent> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc * self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                let inv = d.unit_inverse().ok_or_else(|| self.err("division by a non-unit"))?;
                acc = acc * inv;
            } else if matches!(self.peek(), Some('i' | 'z' | 't' | '(')) {
                // implicit product, as in `2i` or `3t`
                acc = acc * self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn exponent(&mut self) -> Result<Exponent> {
        if self.eat('(') {
            let neg = self.eat('-');
            let n = self.integer()?;
            let d = if self.eat('/') { self.integer()? } else { 1 };
            if !self.eat(')') || d == 0 {
                return Err(self.err("malformed exponent"));
            }
            Ok(Exponent::new(if neg { -n } else { n }, d))
        } else {
            let neg = self.eat('-');
            let n = self.integer()?;
            Ok(Exponent::from_integer(if neg { -n } else { n }))
        }
    }

    fn power(&mut self) -> Result<Laurent> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if base.is_unit() {
            let (be, c) = base.terms().next().map(|(x, c)| (x, c.clone())).unwrap();
            if !e.is_integer() && !c.is_one() {
                return Err(self.err("fractional power of a non-monic monomial"));
            }
            let coeff = if e.is_integer() { c.powi(*e.numer()) } else { Scalar::one() };
            return Ok(Laurent::monomial(coeff, be * e));
        }
        if e.is_integer() && *e.numer() >= 0 {
            return Ok(base.pow(*e.numer() as u32));
        }
        Err(self.err("unsupported power"))
    }

    fn atom(&mut self) -> Result<Laurent> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some('t') => {
                self.pos += 1;
                Ok(Laurent::t())
            }
            Some('i') => {
                self.pos += 1;
                let f = default_field();
                let i = Scalar::imaginary_unit(f).ok_or_else(|| self.err("i is not in the scalar field"))?;
                Ok(Laurent::constant(i))
            }
            Some('z') => {
                self.pos += 1;
                Ok(Laurent::constant(Scalar::zeta(default_field())))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Laurent::from_integer(n))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

pub fn parse_laurent(src: &str) -> Result<Laurent> {
    let mut p = Parser { src, chars: src.chars().collect(), pos: 0 };
    if p.peek().is_none() {
        return Err(Error::Parse("empty Laurent literal".into()));
    }
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let l = parse_laurent(src)?;
    if !l.is_constant() {
        return Err(Error::Parse(format!("{src:?} is not a constant")));
    }
    Ok(l.constant_term())
}

pub fn parse_exponent(src: &str) -> Result<Exponent> {
    let s = src.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => n.trim().parse::<i64>().ok().zip(d.trim().parse::<i64>().ok()),
        None => s.parse::<i64>().ok().map(|n| (n, 1)),
    };
    match parsed {
        Some((n, d)) if d != 0 => Ok(Exponent::new(n, d)),
        _ => Err(Error::Parse(format!("bad exponent {src:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_laurent("t").unwrap(), Laurent::t());
        assert_eq!(parse_laurent("t^-1").unwrap(), Laurent::t_pow(-1));
        assert_eq!(parse_laurent("t^(1/2)").unwrap(), Laurent::monomial(Scalar::one(), Exponent::new(1, 2)));
        assert_eq!(parse_laurent("1/2").unwrap(), Laurent::constant(Scalar::from_ratio(1, 2)));
        let x = parse_laurent("-2*t + 3 - i*t^2").unwrap();
        let expect = Laurent::t().scale(&Scalar::from_integer(-2)) + Laurent::from_integer(3)
            - Laurent::t_pow(2).scale(&Scalar::i());
        assert_eq!(x, expect);
        assert_eq!(parse_laurent("(t+1)^2").unwrap(), Laurent::t_pow(2) + Laurent::t().scale(&Scalar::from_integer(2)) + Laurent::one());
        assert_eq!(parse_laurent("t/t").unwrap(), Laurent::one());
        assert!(parse_laurent("1/(t+1)").is_err());
        assert!(parse_laurent("").is_err());
        assert!(parse_laurent("t +").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["1/2*t^(-1/2) - 2 + t", "(1/2 - 3i)*t^2", "-t^-1", "i"] {
            let x = parse_laurent(s).unwrap();
            assert_eq!(parse_laurent(&x.to_string()).unwrap(), x, "{s}");
        }
    }
}
