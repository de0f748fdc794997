use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Field, Rational, Var, NVARS};

/// Exponent vector over the fixed alphabet, ordered graded-lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Exponents(pub [u16; NVARS]);

impl Exponents {
    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn of(var: Var, power: u16) -> Self {
        let mut e = [0; NVARS];
        e[var.index()] = power;
        Exponents(e)
    }

    fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn plus(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            *x = x.checked_add(*y).expect("exponent overflow");
        }
        Exponents(e)
    }

    fn minus(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            *x -= *y;
        }
        Exponents(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial; terms stored in increasing monomial order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<F> {
    terms: BTreeMap<Exponents, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents::default(), c);
        }
        Polynomial { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Exponents::of(v, 1), F::one())
    }

    pub fn monomial(e: Exponents, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value if the polynomial has no indeterminates.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Exponents, &F)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> F {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, e: Exponents, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (*e, x.clone() * c.clone()))
                .collect(),
        }
    }

    fn mul_term(&self, e: &Exponents, c: &F) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(e2, x)| (e2.plus(e), x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&(F::one() / c.clone())),
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e.0[v.index()] > 0)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.uses(v)).collect()
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms
            .keys()
            .map(|e| e.0[v.index()])
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `v^k`, as a polynomial free of `v`.
    pub fn coefficient_in(&self, v: Var, k: u16) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e.0[i] == k {
                let mut e2 = *e;
                e2.0[i] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    /// Exact quotient, `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lde, ldc) = divisor.leading()?;
        let (lde, ldc) = (*lde, ldc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.leading() {
            if !lde.divides(e) {
                return None;
            }
            let te = e.minus(&lde);
            let tc = c.clone() / ldc.clone();
            rem = &rem - &divisor.mul_term(&te, &tc);
            quot.add_term(te, tc);
        }
        Some(quot)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b` of `a = self`,
    /// both viewed as univariate in `v`.
    fn pseudo_rem(&self, b: &Self, v: Var) -> Self {
        let db = b.degree_in(v);
        let lb = b.coefficient_in(v, db);
        let mut r = self.clone();
        let mut steps = (self.degree_in(v) + 1).saturating_sub(db);
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.coefficient_in(v, dr);
            let shift = Polynomial::monomial(Exponents::of(v, dr - db), F::one());
            r = &(&lb * &r) - &(&(&lr * &shift) * b);
            steps -= 1;
        }
        &r * &lb.pow(steps as u32)
    }

    fn content_in(&self, v: Var) -> Self {
        let mut g = Self::zero();
        for k in 0..=self.degree_in(v) {
            let c = self.coefficient_in(v, k);
            if !c.is_zero() {
                g = g.gcd(&c);
                if g.is_one() {
                    break;
                }
            }
        }
        g
    }

    fn primitive_in(&self, v: Var) -> Self {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides polynomial")
    }

    /// Componentwise minimum of the exponents of all terms.
    fn monomial_content(&self) -> Exponents {
        let mut it = self.terms.keys();
        let mut m = it.next().copied().unwrap_or_default();
        for e in it {
            for (x, y) in m.0.iter_mut().zip(e.0.iter()) {
                *x = (*x).min(*y);
            }
        }
        m
    }

    fn div_monomial(&self, m: &Exponents) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (e.minus(m), c.clone())).collect(),
        }
    }

    /// Rescales rational coefficients to coprime integers.
    fn numeric_primitive(&self) -> Self {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            let Some(q) = c.as_rational() else {
                return self.clone();
            };
            den = den.lcm(q.denom());
            num = num.gcd(q.numer());
        }
        if num.is_zero() {
            return self.clone();
        }
        self.scale(&F::from_rational(&Rational::new(den, num)))
    }

    /// Monic greatest common divisor.
    ///
    /// Monomial content and variables private to one argument are split off
    /// first; the rest is a subresultant remainder sequence in the variable
    /// of lowest degree.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.as_constant().is_some() || other.as_constant().is_some() {
            return Self::one();
        }
        if self == other {
            return self.monic();
        }
        let (ma, mb) = (self.monomial_content(), other.monomial_content());
        if !ma.is_one() || !mb.is_one() {
            let mut m = ma;
            for (x, y) in m.0.iter_mut().zip(mb.0.iter()) {
                *x = (*x).min(*y);
            }
            let g = self.div_monomial(&ma).gcd(&other.div_monomial(&mb));
            return (&Self::monomial(m, F::one()) * &g).monic();
        }
        for v in Var::ALL {
            match (self.uses(v), other.uses(v)) {
                (true, false) => return self.content_in(v).gcd(other),
                (false, true) => return self.gcd(&other.content_in(v)),
                _ => {}
            }
        }
        let v = Var::ALL
            .into_iter()
            .filter(|&v| self.uses(v))
            .min_by_key(|&v| self.degree_in(v).max(other.degree_in(v)))
            .expect("non-constant polynomial uses a variable");
        let ca = self.content_in(v);
        let cb = other.content_in(v);
        let g = ca.gcd(&cb);
        let mut r0 = self.div_exact(&ca).unwrap().numeric_primitive();
        let mut r1 = other.div_exact(&cb).unwrap().numeric_primitive();
        if r0.degree_in(v) < r1.degree_in(v) {
            std::mem::swap(&mut r0, &mut r1);
        }
        // Subresultant remainder sequence.
        let mut sg = Self::one();
        let mut sh = Self::one();
        let tail = loop {
            if r1.degree_in(v) == 0 {
                break Self::one();
            }
            let delta = (r0.degree_in(v) - r1.degree_in(v)) as u32;
            let r = r0.pseudo_rem(&r1, v);
            if r.is_zero() {
                break r1;
            }
            let divisor = &sg * &sh.pow(delta);
            r0 = r1;
            r1 = r.div_exact(&divisor).expect("subresultant division is exact");
            sg = r0.coefficient_in(v, r0.degree_in(v));
            sh = if delta == 0 {
                sh
            } else {
                sg.pow(delta)
                    .div_exact(&sh.pow(delta - 1))
                    .expect("subresultant division is exact")
            };
        };
        (&g * &tail.primitive_in(v)).monic()
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        let mut out = Polynomial::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Evaluates with each variable replaced by a value of some field `T`.
    pub fn evaluate<T: Field>(&self, embed: impl Fn(&F) -> T, value: impl Fn(Var) -> T) -> T {
        let vals: Vec<T> = Var::ALL.iter().map(|&v| value(v)).collect();
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = embed(c);
            for (i, &k) in e.0.iter().enumerate() {
                for _ in 0..k {
                    t = t * vals[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }
}

impl<'a, F: Field> Add for &'a Polynomial<F> {
    type Output = Polynomial<F>;

    fn add(self, rhs: Self) -> Polynomial<F> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub for &'a Polynomial<F> {
    type Output = Polynomial<F>;

    fn sub(self, rhs: Self) -> Polynomial<F> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a, F: Field> Mul for &'a Polynomial<F> {
    type Output = Polynomial<F>;

    fn mul(self, rhs: Self) -> Polynomial<F> {
        let mut out = Polynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.plus(e2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<'a, F: Field> Neg for &'a Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, -c.clone()))
                .collect(),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponents) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let k = e.0[v.index()];
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{k}")?;
        }
    }
    Ok(())
}

/// Largest monomial first, e.g. `2*mu^2 - 3*mu + 1/2`.
impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative_constant();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    if mag.as_rational().is_some() {
                        write!(f, "{mag}*")?;
                    } else {
                        write!(f, "({mag})*")?;
                    }
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Zero for Polynomial<F> {
    fn zero() -> Self {
        Polynomial::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> Add for Polynomial<F> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<F: Field> Mul for Polynomial<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<F: Field> One for Polynomial<F> {
    fn one() -> Self {
        Polynomial::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type P = Polynomial<Rational>;

    fn mu() -> P {
        P::var(Var::Mu)
    }

    fn c(n: i64) -> P {
        P::constant(rat(n, 1))
    }

    #[test]
    fn grlex_orders_by_degree_first() {
        let a = Exponents::of(Var::H, 2);
        let b = Exponents::of(Var::Mu, 1);
        assert!(a > b);
        assert!(Exponents::of(Var::Mu, 1) > Exponents::of(Var::Lam, 1));
    }

    #[test]
    fn exact_division_and_failure() {
        let a = &(&mu() + &c(1)) * &(&mu() - &c(1));
        let q = a.div_exact(&(&mu() - &c(1))).unwrap();
        assert_eq!(q, &mu() + &c(1));
        assert!(mu().div_exact(&(&mu() + &c(1))).is_none());
    }

    #[test]
    fn multivariate_gcd() {
        let chat = P::var(Var::Chat);
        let f = &(&mu() + &chat) * &(&mu() - &c(2));
        let g = &(&mu() + &chat) * &(&chat + &c(3));
        assert_eq!(f.gcd(&g), &mu() + &chat);
        let coprime = (&mu() + &c(1)).gcd(&(&mu() - &c(1)));
        assert!(coprime.is_one());
    }

    #[test]
    fn gcd_with_scaled_factors_is_monic() {
        let f = (&mu() + &c(1)).scale(&rat(6, 1));
        let g = &(&mu() + &c(1)) * &mu();
        assert_eq!(f.gcd(&g), &mu() + &c(1));
    }

    #[test]
    fn renders_signs() {
        let p = &(&mu().pow(2).scale(&rat(2, 1)) - &mu().scale(&rat(3, 1))) + &P::constant(rat(1, 2));
        assert_eq!(p.to_string(), "2*mu^2 - 3*mu + 1/2");
        assert_eq!((-&mu()).to_string(), "-mu");
    }
}
