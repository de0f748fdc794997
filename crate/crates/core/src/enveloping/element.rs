use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::algebra::{Bracket, BracketTable, Generator, HalfInt, NeveuSchwarz};
use crate::scalar::{CentralCharge, Field};

use super::Monomial;

/// A finite linear combination of monomials; zero coefficients never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<K> {
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> Element<K> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(K::one())
    }

    pub fn scalar(k: K) -> Self {
        Self::monomial(Monomial::one(), k)
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(Monomial::generator(g), K::one())
    }

    pub fn monomial(m: Monomial, k: K) -> Self {
        let mut e = Self::zero();
        e.add_term(m, k);
        e
    }

    /// Product of modes, left to right.
    pub fn word(letters: &[Generator]) -> Self {
        Self::monomial(Monomial::from_letters(letters.iter().copied()), K::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn add_term(&mut self, m: Monomial, k: K) {
        if k.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + k;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, k);
            }
        }
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Bilinear concatenation; the only rewriting is `G_r G_r = L_{2r}`.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.concat(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn map_coefficients<E>(
        &self,
        mut f: impl FnMut(&K) -> Result<K, E>,
    ) -> Result<Self, E> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// The degree-`d` homogeneous component.
    pub fn component(&self, d: HalfInt) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> Vec<HalfInt> {
        let mut d: Vec<HalfInt> = self.terms.keys().map(|m| m.degree()).collect();
        d.dedup();
        d
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.multiply(self);
        }
        acc
    }
}

impl<K: CentralCharge> Element<K> {
    /// The super-bracket of two modes as an element, with `c` as `K::central()`.
    pub fn bracket(a: Generator, b: Generator) -> Self {
        Self::from_bracket(&NeveuSchwarz::default().bracket(a, b))
    }

    pub fn bracket_with(table: &dyn BracketTable, a: Generator, b: Generator) -> Self {
        Self::from_bracket(&table.bracket(a, b))
    }

    pub fn from_bracket(br: &Bracket) -> Self {
        let mut e = Self::zero();
        if let Some((c, g)) = &br.term {
            e.add_term(Monomial::generator(*g), K::from_rational(c));
        }
        e.add_term(Monomial::one(), K::from_rational(&br.central) * K::central());
        e
    }
}

impl<K: Field> Add for Element<K> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<K: Field> Sub for Element<K> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Field> Neg for Element<K> {
    type Output = Self;

    fn neg(self) -> Self {
        Element {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<K: Field> Mul for Element<K> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.multiply(&rhs)
    }
}

impl<K: Field> Zero for Element<K> {
    fn zero() -> Self {
        Element::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Writes `coeff*word` pieces joined by ` + ` / ` - `, e.g.
/// `-1*G[-1/2]*G[1/2] + 2*L[0]`. Rational coefficients are written bare,
/// other scalars in parentheses.
pub(crate) fn write_terms<'a, K: Field + 'a, W: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (W, &'a K, bool)>,
) -> fmt::Result {
    let mut first = true;
    for (word, c, is_unit) in terms {
        let negative = c.is_negative_constant();
        let mag = if negative { -c.clone() } else { c.clone() };
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else if negative {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        let coeff = if mag.as_rational().is_some() {
            mag.to_string()
        } else {
            format!("({mag})")
        };
        if is_unit {
            f.write_str(&coeff)?;
        } else if mag.is_one() && !(first && negative) {
            write!(f, "{word}")?;
        } else {
            write!(f, "{coeff}*{word}")?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<K: Field> fmt::Display for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().rev().map(|(m, c)| (m, c, m.is_one())),
        )
    }
}
