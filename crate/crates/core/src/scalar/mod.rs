//! Exact coefficient arithmetic.
//!
//! Everything in the crate is generic over a [`Field`]. Two fields ship:
//! arbitrary precision rationals ([`Rational`]) and rational functions over a
//! field in the fixed indeterminate alphabet [`Var`]. The crate root aliases
//! `Scalar = RationalFunction<Rational>`, which is what every check uses.

mod poly;
mod ratfunc;
mod var;

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use poly::{Exponents, Polynomial};
pub use ratfunc::RationalFunction;
pub use var::{Var, NVARS};

/// Arbitrary precision rational numbers.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

/// An exact field usable as a coefficient ring.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    /// Division that reports a zero divisor instead of panicking.
    fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.clone() / other.clone())
        }
    }

    /// True when the value is a negative constant; only used for rendering signs.
    fn is_negative_constant(&self) -> bool {
        false
    }

    /// The value as a rational constant, if it is one.
    fn as_rational(&self) -> Option<Rational> {
        None
    }
}

/// Fields that contain a value for the central element `c`.
///
/// For rational functions this is the indeterminate `chat`; specializing it
/// substitutes the value a module assigns to `c`.
pub trait CentralCharge: Field {
    fn central() -> Self;

    fn specialize_central(&self, value: &Self) -> Result<Self, ScalarError>;
}

impl Field for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn is_negative_constant(&self) -> bool {
        self.is_negative()
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
