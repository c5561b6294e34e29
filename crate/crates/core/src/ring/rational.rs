use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Scalar;
use crate::error::{domain, parse_err, Result};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

impl Scalar for Rational {
    const RING: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(v: &Rational) -> Self {
        v.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_int(&self, d: i64) -> Result<Self> {
        if d == 0 {
            return domain("division by zero");
        }
        Ok(self / Rational::from_integer(BigInt::from(d)))
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

/// Parses `a`, `-a` or `a/b` with decimal integers.
pub fn parse_rational(text: &str) -> Result<Rational> {
    parse_rational_at(text, 0)
}

pub(crate) fn parse_rational_at(text: &str, offset: usize) -> Result<Rational> {
    let t = text.trim();
    let lead = offset + (text.len() - text.trim_start().len());
    if t.is_empty() {
        return parse_err(lead, "expected a rational number");
    }
    let (num, den) = match t.find('/') {
        Some(i) => (&t[..i], Some((&t[i + 1..], i + 1))),
        None => (t, None),
    };
    let n: BigInt = match num.trim().parse() {
        Ok(v) => v,
        Err(_) => return parse_err(lead, format!("invalid integer `{}`", num.trim())),
    };
    let d: BigInt = match den {
        Some((d, at)) => match d.trim().parse::<BigInt>() {
            Ok(v) if v.is_positive() || v.is_negative() => v,
            Ok(_) => return parse_err(lead + at, "zero denominator"),
            Err(_) => return parse_err(lead + at, format!("invalid integer `{}`", d.trim())),
        },
        None => BigInt::one(),
    };
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn sums_in_lowest_terms() {
        assert_eq!(q(1, 3).add_ref(&q(1, 6)), q(1, 2));
        assert_eq!(q(2, -4), q(-1, 2));
    }

    #[test]
    fn division_by_zero_is_a_domain_error() {
        assert!(q(1, 2).div_int(0).is_err());
        assert_eq!(q(1, 2).div_int(-3).unwrap(), q(-1, 6));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-19/12").unwrap(), q(-19, 12));
        assert_eq!(parse_rational(" 7 ").unwrap(), q(7, 1));
        assert!(matches!(
            parse_rational("1/0"),
            Err(crate::Error::Parse { pos: 2, .. })
        ));
        assert!(parse_rational("x").is_err());
    }
}
