//! Exact commutative coefficient rings.
//!
//! Everything in the crate is generic over [`Scalar`]. Three instances are
//! provided: [`Rational`] (big-integer backed), [`MPoly`] (sparse polynomials
//! with rational coefficients over named variables) and [`Dual`] (numbers
//! `a + εb` with `ε² = 0`, over any other scalar).

mod dual;
mod mpoly;
mod poly;
mod rational;

use std::fmt;

use crate::error::Result;

pub use dual::Dual;
pub use mpoly::{mono, MPoly, Var};
pub use poly::{Generator, Monomial, Poly, Tensor};
pub use rational::{parse_rational, Rational};

/// A commutative ring with decidable, exact equality.
///
/// Division is only required by nonzero integers, which is all the
/// artifact ever needs (monotone weights `1/|π|!`, halving, ...).
pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short tag used in serialized forms.
    const RING: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_rational(v: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Exact division by a nonzero integer.
    fn div_int(&self, d: i64) -> Result<Self>;

    /// Whether the element lies in the rational subring.
    fn is_constant(&self) -> bool {
        true
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Product of a slice of scalars; the empty product is one.
pub fn product<'a, S: Scalar>(items: impl IntoIterator<Item = &'a S>) -> S {
    let mut acc = S::one();
    for s in items {
        if s.is_zero() {
            return S::zero();
        }
        acc = acc.mul_ref(s);
    }
    acc
}

/// Sum of scalars; the empty sum is zero.
pub fn sum<'a, S: Scalar>(items: impl IntoIterator<Item = &'a S>) -> S {
    let mut acc = S::zero();
    for s in items {
        acc.add_assign_ref(s);
    }
    acc
}
