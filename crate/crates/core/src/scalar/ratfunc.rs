use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{CentralCharge, Field, Polynomial, Rational, ScalarError, Var};

/// Reduced fraction of polynomials with a monic denominator.
///
/// The canonical form makes equality structural: two values are equal iff
/// their numerators and denominators are identical polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<F> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        if num.is_zero() {
            return Self::from_poly(Polynomial::zero());
        }
        if let Some(c) = den.as_constant() {
            let inv = F::one() / c;
            return RationalFunction {
                num: num.scale(&inv),
                den: Polynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = F::one() / lc;
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(num: Polynomial<F>) -> Self {
        RationalFunction {
            num,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn numerator(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<F> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        RationalFunction {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    /// Simultaneous substitution of indeterminates.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Self>) -> Result<Self, ScalarError> {
        if bindings.keys().all(|v| !self.uses(*v)) {
            return Ok(self.clone());
        }
        let value = |v: Var| bindings.get(&v).cloned().unwrap_or_else(|| Self::var(v));
        let embed = |c: &F| Self::constant(c.clone());
        let num = self.num.evaluate(embed, value);
        let den = self.den.evaluate(embed, value);
        num.checked_div(&den)
    }

    pub fn substitute_one(&self, v: Var, value: &Self) -> Result<Self, ScalarError> {
        let mut b = BTreeMap::new();
        b.insert(v, value.clone());
        self.substitute(&b)
    }
}

impl<F: Field> Zero for RationalFunction<F> {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RationalFunction<F> {
    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }
}

impl<F: Field> Add for RationalFunction<F> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::normalized(num, self.den);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::normalized(num, &self.den * &rhs.den)
    }
}

impl<F: Field> Neg for RationalFunction<F> {
    type Output = Self;

    fn neg(self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl<F: Field> Sub for RationalFunction<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for RationalFunction<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        Self::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on a zero divisor; use [`Field::checked_div`] when that can happen.
impl<F: Field> Div for RationalFunction<F> {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "rational function division by zero");
        if let Some(c) = rhs.as_constant() {
            let inv = F::one() / c;
            return RationalFunction {
                num: self.num.scale(&inv),
                den: self.den,
            };
        }
        Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field> Field for RationalFunction<F> {
    fn from_rational(q: &Rational) -> Self {
        Self::constant(F::from_rational(q))
    }

    fn is_negative_constant(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_negative_constant())
    }

    fn as_rational(&self) -> Option<Rational> {
        self.as_constant().and_then(|c| c.as_rational())
    }
}

impl<F: Field> CentralCharge for RationalFunction<F> {
    fn central() -> Self {
        Self::var(Var::Chat)
    }

    fn specialize_central(&self, value: &Self) -> Result<Self, ScalarError> {
        if !self.uses(Var::Chat) || *value == Self::central() {
            return Ok(self.clone());
        }
        self.substitute_one(Var::Chat, value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type S = RationalFunction<Rational>;

    fn mu() -> S {
        S::var(Var::Mu)
    }

    fn k(n: i64, d: i64) -> S {
        S::from_rational(&rat(n, d))
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(k(1, 2) + k(1, 3), k(5, 6));
    }

    #[test]
    fn polynomial_identity() {
        assert_eq!((mu() + k(1, 1)) * (mu() - k(1, 1)), mu().pow(2) - k(1, 1));
    }

    #[test]
    fn tau_is_reduced_with_monic_denominator() {
        let tau = (mu() + k(1, 1)) * (k(2, 1) * mu() - k(1, 1)) / (mu() - k(1, 1));
        assert_eq!(tau.denominator(), &Polynomial::from(mu() - k(1, 1)));
        assert_eq!(tau.to_string(), "(2*mu^2 + mu - 1)/(mu - 1)");
        // cancelling a common factor
        let r = (mu().pow(2) - k(1, 1)) / (k(3, 1) * mu() - k(3, 1));
        assert_eq!(r, (mu() + k(1, 1)) * k(1, 3));
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(mu().checked_div(&S::zero()), Err(ScalarError::DivisionByZero));
        let inv = (mu() - mu()).inverse();
        assert_eq!(inv, Err(ScalarError::DivisionByZero));
        let f = S::one() / mu();
        assert_eq!(
            f.substitute_one(Var::Mu, &S::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn substitution_examples() {
        let closed = (mu() + k(1, 1)) * (k(2, 1) * mu() - k(1, 1)) / (mu() - k(1, 1));
        let tau = S::var(Var::Tau);
        assert_eq!(tau.substitute_one(Var::Tau, &closed).unwrap(), closed);
        assert!(mu().pow(2).substitute_one(Var::Mu, &S::zero()).unwrap().is_zero());
        let chat = S::var(Var::Chat);
        let p_closed = tau.clone() + k(2, 3) * chat.clone();
        let expr = S::var(Var::P) - tau - k(2, 3) * chat;
        assert!(expr.substitute_one(Var::P, &p_closed).unwrap().is_zero());
    }

    #[test]
    fn claim_quadratic_factors() {
        let lhs = k(2, 1) * (mu() + k(1, 1)).pow(2) - k(3, 1) * (mu() + k(1, 1));
        let rhs = (mu() + k(1, 1)) * (k(2, 1) * mu() - k(1, 1));
        assert!((lhs - rhs).is_zero());
        assert!((mu() - mu()).is_zero());
    }
}

impl<F: Field> From<RationalFunction<F>> for Polynomial<F> {
    /// Numerator of a polynomial-valued function; panics on a proper fraction.
    fn from(r: RationalFunction<F>) -> Self {
        assert!(r.den.is_one(), "not a polynomial");
        r.num
    }
}
