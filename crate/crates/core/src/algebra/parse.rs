//! Text syntax for polynomials: `3/2*p1_1_12^2*t - p2_1_13`.
//!
//! Terms are joined by `+`/`-`, factors by `*`; a factor is a coefficient
//! (`a` or `a/b`) or a variable name with an optional `^` exponent.
//! Whitespace is insignificant.

use num_bigint::BigInt;

use super::poly::Polynomial;
use super::rational::Rational;
use super::ring::{Monomial, RingRef};
use crate::error::ParseError;

/// One parsed term: coefficient and `(name, exponent)` factors.
pub type RawTerm = (Rational, Vec<(String, i64)>);

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {}
            _ => return None,
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(b'-');
        let at = self.pos;
        let d = self.digits()?;
        let v: i64 = d
            .try_into()
            .map_err(|_| ParseError::new(at, "exponent too large"))?;
        Ok(if neg { -v } else { v })
    }
}

/// Parses into raw terms without resolving variable names.
pub fn parse_raw(text: &str) -> Result<Vec<RawTerm>, ParseError> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut out = Vec::new();
    let mut first = true;
    loop {
        let mut sign = 1i64;
        if lx.eat(b'-') {
            sign = -1;
        } else if !lx.eat(b'+') && !first {
            return match lx.peek() {
                None => Ok(out),
                Some(c) => Err(ParseError::new(
                    lx.pos,
                    format!("unexpected `{}`", c as char),
                )),
            };
        }
        if first && lx.peek().is_none() {
            return Err(ParseError::new(lx.pos, "empty polynomial"));
        }
        first = false;
        let mut coeff = Rational::from_int(sign);
        let mut factors = Vec::new();
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = lx.digits()?;
                    let mut q = Rational::from(n);
                    if lx.eat(b'/') {
                        let at = lx.pos;
                        let d = lx.digits()?;
                        if d == BigInt::from(0) {
                            return Err(ParseError::new(at, "zero denominator"));
                        }
                        q = &q / &Rational::from(d);
                    }
                    coeff = &coeff * &q;
                }
                Some(_) => {
                    let at = lx.pos;
                    let name = lx
                        .ident()
                        .ok_or_else(|| ParseError::new(at, "expected a coefficient or variable"))?;
                    let e = if lx.eat(b'^') { lx.exponent()? } else { 1 };
                    factors.push((name, e));
                }
                None => return Err(ParseError::new(lx.pos, "unexpected end of input")),
            }
            if !lx.eat(b'*') {
                break;
            }
        }
        out.push((coeff, factors));
        if lx.peek().is_none() {
            return Ok(out);
        }
    }
}

/// Parses a polynomial over `ring`.
pub fn parse_polynomial(ring: &RingRef, text: &str) -> Result<Polynomial, ParseError> {
    let raw = parse_raw(text)?;
    let n = ring.nvars();
    let mut terms = Vec::with_capacity(raw.len());
    for (c, factors) in raw {
        let mut m = Monomial::one(n);
        for (name, e) in factors {
            let i = ring
                .index_of(&name)
                .ok_or_else(|| ParseError::new(0, format!("unknown variable `{name}`")))?;
            if e < 0 {
                return Err(ParseError::new(0, format!("negative exponent on `{name}`")));
            }
            m.0[i] = u16::try_from(m.0[i] as i64 + e)
                .map_err(|_| ParseError::new(0, "exponent too large"))?;
        }
        terms.push((m, c));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

impl Polynomial {
    pub fn parse(ring: &RingRef, text: &str) -> Result<Polynomial, ParseError> {
        parse_polynomial(ring, text)
    }
}
