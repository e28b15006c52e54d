//! A small reader for exact polynomial expressions in `t, u, z, v`, used to
//! state fixed differential-operator coefficients legibly.
//!
//! Grammar: sums and differences of products; factors are integers, the four
//! variables, parenthesised expressions, and `^` with a non-negative integer
//! exponent. Juxtaposition is not multiplication; write `*`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::mpoly::{MPoly, Var};
use super::series::TSeries;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Invalid(format!("{what} at byte {} of `{}`", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn expr(&mut self) -> Result<TSeries> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TSeries> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<TSeries> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<TSeries> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(TSeries::monomial(1, MPoly::one()))
            }
            Some(c @ (b'u' | b'z' | b'v')) => {
                self.pos += 1;
                let var = match c {
                    b'u' => Var::U,
                    b'z' => Var::Z,
                    _ => Var::V,
                };
                Ok(TSeries::constant(MPoly::var(var)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(TSeries::constant(MPoly::constant(BigRational::from_integer(n))))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parses an exact polynomial in `t` with coefficients in ℤ[u, z, v].
pub fn parse_series(src: &str) -> Result<TSeries> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a `t`-free polynomial.
pub fn parse_poly(src: &str) -> Result<MPoly> {
    let s = parse_series(src)?;
    match s.top_order() {
        None => Ok(MPoly::zero()),
        Some(0) if s.valuation() == Some(0) => s.coeff(0),
        _ => Err(Error::Invalid(format!("`{src}` depends on t"))),
    }
}
