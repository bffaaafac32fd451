//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! poly   := term (("+"|"-") term)*
//! term   := [coef "*"] factor ("*" factor)* | coef
//! factor := var ["^" nat]
//! coef   := ["-"] nat ["/" nat]
//! ```
//!
//! Whitespace is insignificant and products need an explicit `*`. A leading
//! sign on the first term is accepted, so printed polynomials parse back.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Coeff, Monomial, Polynomial, RingSignature};
use crate::error::{Error, Result};

pub fn parse_polynomial(text: &str, sig: &RingSignature) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, sig };
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: &'a RingSignature,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
    }

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

    fn poly(&mut self) -> Result<Polynomial> {
        let mut terms: Vec<(Monomial, Coeff)> = Vec::new();
        let mut negative = self.eat(b'-');
        if !negative {
            self.eat(b'+');
        }
        loop {
            let (m, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((m, c));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                _ => break,
            }
        }
        Ok(Polynomial::from_terms(self.sig, terms))
    }

    fn term(&mut self) -> Result<(Monomial, Coeff)> {
        let mut coeff = Coeff::one();
        let mut exps = vec![0u32; self.sig.nvars()];
        let mut first = true;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() || (first && c == b'-') => {
                    if !first {
                        return Err(self.error("coefficient must come first in a term"));
                    }
                    coeff = self.coef()?;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let (index, e) = self.factor()?;
                    exps[index] = exps[index]
                        .checked_add(e)
                        .ok_or_else(|| self.error("exponent overflow"))?;
                }
                Some(_) => return Err(self.error("expected coefficient or variable")),
                None => return Err(self.error("unexpected end of input")),
            }
            first = false;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((Monomial::from_exponents(&exps), coeff))
    }

    fn coef(&mut self) -> Result<Coeff> {
        let negative = self.eat(b'-');
        let numer = self.nat()?;
        let value = if self.eat(b'/') {
            let denom = self.nat()?;
            if denom.is_zero() {
                return Err(self.error("division by zero"));
            }
            Coeff::new(numer, denom)
        } else {
            Coeff::from_integer(numer)
        };
        Ok(if negative { -value } else { value })
    }

    fn nat(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse::<BigInt>().expect("digit string"))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        let index = self
            .sig
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable { name: name.to_string(), position: start })?;
        let e = if self.eat(b'^') {
            let n = self.nat()?;
            u32::try_from(n).map_err(|_| self.error("exponent too large"))?
        } else {
            1
        };
        Ok((index, e))
    }
}
