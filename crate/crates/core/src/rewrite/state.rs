use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{Generator, HalfInt};
use crate::enveloping::{Element, Monomial};
use crate::scalar::Field;

/// A word of modes applied right to left to the cyclic vector `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct StateWord(Vec<Generator>);

impl StateWord {
    pub fn empty() -> Self {
        StateWord(Vec::new())
    }

    pub fn new(letters: Vec<Generator>) -> Self {
        StateWord(letters)
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Generator> {
        self.0.first().copied()
    }

    /// The word without its leftmost letter.
    pub fn rest(&self) -> StateWord {
        StateWord(self.0.get(1..).unwrap_or_default().to_vec())
    }

    pub fn prepend(&self, g: Generator) -> StateWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(g);
        v.extend_from_slice(&self.0);
        StateWord(v)
    }

    /// `word · self`, with `word`'s letters applied after this word's.
    pub fn prepend_word(&self, word: &[Generator]) -> StateWord {
        let mut v = word.to_vec();
        v.extend_from_slice(&self.0);
        StateWord(v)
    }

    /// Sum of the modes' degrees: the weight offset from the cyclic vector.
    pub fn degree(&self) -> HalfInt {
        self.0.iter().map(|g| g.weight_degree()).sum()
    }
}

impl Ord for StateWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for StateWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for StateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{g}*")?;
        }
        f.write_str("v")
    }
}

/// A finite linear combination of state words.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<K> {
    terms: BTreeMap<StateWord, K>,
}

impl<K: Field> StateVector<K> {
    pub fn zero() -> Self {
        StateVector {
            terms: BTreeMap::new(),
        }
    }

    pub fn word(w: StateWord) -> Self {
        Self::term(w, K::one())
    }

    pub fn term(w: StateWord, k: K) -> Self {
        let mut v = Self::zero();
        v.add_term(w, k);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&StateWord, &K)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &StateWord> {
        self.terms.keys()
    }

    pub fn coefficient(&self, w: &StateWord) -> K {
        self.terms.get(w).cloned().unwrap_or_else(K::zero)
    }

    pub fn add_term(&mut self, w: StateWord, k: K) {
        if k.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let s = old + k;
                if !s.is_zero() {
                    self.terms.insert(w, s);
                }
            }
            None => {
                self.terms.insert(w, k);
            }
        }
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, k: &K) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone() * k.clone());
        }
    }

    pub fn map_coefficients<E>(&self, mut f: impl FnMut(&K) -> Result<K, E>) -> Result<Self, E> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// The operator that produces this vector from `v`, as an element of the
    /// enveloping algebra.
    pub fn to_element(&self) -> Element<K> {
        let mut e = Element::zero();
        for (w, c) in &self.terms {
            e.add_term(Monomial::from_letters(w.letters().iter().copied()), c.clone());
        }
        e
    }

    /// Reads each monomial of `e` as a state word on `v`.
    pub fn from_element(e: &Element<K>) -> Self {
        let mut out = Self::zero();
        for (m, c) in e.terms() {
            out.add_term(StateWord::new(m.letters().collect()), c.clone());
        }
        out
    }
}

impl<K: Field> Add for StateVector<K> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<K: Field> Sub for StateVector<K> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Field> Neg for StateVector<K> {
    type Output = Self;

    fn neg(self) -> Self {
        StateVector {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl<K: Field> fmt::Display for StateVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::enveloping::write_terms(f, self.terms.iter().rev().map(|(w, c)| (w, c, false)))
    }
}
