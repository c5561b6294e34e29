use std::fmt;

use super::{Rational, Scalar};
use crate::error::Result;

/// `re + ε·eps` with `ε² = 0`: the even part of a Grassmann algebra on one
/// generator, used to carry a functional together with its infinitesimal
/// companion.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dual<S> {
    pub re: S,
    pub eps: S,
}

impl<S: Scalar> Dual<S> {
    pub fn new(re: S, eps: S) -> Self {
        Dual { re, eps }
    }

    /// Embeds a scalar with zero infinitesimal part.
    pub fn real(re: S) -> Self {
        Dual { re, eps: S::zero() }
    }

    /// The nilpotent generator ε.
    pub fn epsilon() -> Self {
        Dual {
            re: S::zero(),
            eps: S::one(),
        }
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    const RING: &'static str = "dual";

    fn zero() -> Self {
        Dual::real(S::zero())
    }
    fn one() -> Self {
        Dual::real(S::one())
    }
    fn from_int(v: i64) -> Self {
        Dual::real(S::from_int(v))
    }
    fn from_rational(v: &Rational) -> Self {
        Dual::real(S::from_rational(v))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    fn is_constant(&self) -> bool {
        self.re.is_constant() && self.eps.is_constant()
    }
    fn add_ref(&self, o: &Self) -> Self {
        Dual::new(self.re.add_ref(&o.re), self.eps.add_ref(&o.eps))
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Dual::new(self.re.sub_ref(&o.re), self.eps.sub_ref(&o.eps))
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Dual::new(
            self.re.mul_ref(&o.re),
            self.re.mul_ref(&o.eps).add_ref(&o.re.mul_ref(&self.eps)),
        )
    }
    fn neg_ref(&self) -> Self {
        Dual::new(self.re.neg_ref(), self.eps.neg_ref())
    }
    fn div_int(&self, d: i64) -> Result<Self> {
        Ok(Dual::new(self.re.div_int(d)?, self.eps.div_int(d)?))
    }
}

impl<S: Scalar> fmt::Display for Dual<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*eps", self.re, self.eps)
    }
}
