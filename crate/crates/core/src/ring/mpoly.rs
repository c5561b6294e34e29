use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{Generator, Monomial, Poly, Rational, Scalar};
use crate::error::{domain, parse_err, Error, Result};

/// A named polynomial variable (`q`, `t`, `l2`, `rx3`, ...).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl Generator for Var {
    fn label(&self) -> String {
        self.0.to_string()
    }
}

/// Multivariate polynomial with rational coefficients.
pub type MPoly = Poly<Var>;

impl MPoly {
    /// The polynomial consisting of a single variable.
    pub fn named(name: &str) -> Self {
        Poly::var(Var::new(name))
    }

    pub fn from_int(v: i64) -> Self {
        Poly::constant(Rational::from_integer(BigInt::from(v)))
    }
}

impl Scalar for MPoly {
    const RING: &'static str = "mpoly";

    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn from_int(v: i64) -> Self {
        MPoly::from_int(v)
    }
    fn from_rational(v: &Rational) -> Self {
        Poly::constant(v.clone())
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn div_int(&self, d: i64) -> Result<Self> {
        if d == 0 {
            return domain("division by zero");
        }
        Ok(self.scale(&Rational::new(BigInt::from(1), BigInt::from(d))))
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign(other);
    }
    fn pow(&self, e: u32) -> Self {
        Poly::pow(self, e)
    }
}

impl FromStr for MPoly {
    type Err = Error;

    /// Parses the canonical printed form and small variations of it:
    /// integers, fractions, variables, `^`, `*`, `+`, `-` and parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return parse_err(p.pos, "unexpected trailing input");
        }
        Ok(out)
    }
}

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

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = MPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return parse_err(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return parse_err(self.pos, "expected `)`");
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.integer()?;
                    if den == BigInt::from(0) {
                        return parse_err(at, "zero denominator");
                    }
                    MPoly::constant(Rational::new(num, den))
                } else {
                    MPoly::constant(Rational::from_integer(num))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                MPoly::named(name)
            }
            Some(b'-') => {
                self.pos += 1;
                return Ok(self.factor()?.neg());
            }
            Some(_) => return parse_err(self.pos, "unexpected character"),
            None => return parse_err(self.pos, "unexpected end of input"),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = match e.try_into() {
                Ok(v) => v,
                Err(_) => return parse_err(at, "exponent too large"),
            };
            return Ok(Poly::pow(&base, e));
        }
        Ok(base)
    }
}

/// Monomial helper for tests and constructors: `mono(&[("q", 2), ("t", 1)])`.
pub fn mono(parts: &[(&str, u32)]) -> Monomial<Var> {
    Monomial::from_factors(parts.iter().map(|(n, e)| (Var::new(n), *e)).collect())
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn square_of_a_sum() {
        let q = MPoly::named("q");
        let t = MPoly::named("t");
        let s = q.add(&t);
        assert_eq!(s.mul(&s), p("q^2 + 2*q*t + t^2"));
    }

    #[test]
    fn canonical_printing_roundtrips() {
        let x = p("-19/12*l2^2*m3 + 43/180*q - 1");
        assert_eq!(x.to_string(), "-19/12*l2^2*m3 + 43/180*q - 1");
        assert_eq!(p(&x.to_string()), x);
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("(q - t)^2 - q^2 + 2*q*t - t^2"), MPoly::zero());
    }

    #[test]
    fn zero_terms_are_dropped() {
        let x = p("q - q + 3");
        assert_eq!(x.len(), 1);
        assert_eq!(x.as_constant(), Some(Rational::from_integer(3.into())));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "q + * t".parse::<MPoly>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!("1/0".parse::<MPoly>().is_err());
        assert!("q )".parse::<MPoly>().is_err());
    }

    #[test]
    fn monomial_helper_matches_parser() {
        let m = mono(&[("t", 1), ("q", 2)]);
        assert_eq!(MPoly::term(Rational::from_integer(1.into()), m), p("q^2*t"));
    }
}
