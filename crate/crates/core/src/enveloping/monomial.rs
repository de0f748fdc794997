use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{Generator, HalfInt};

use super::OrderSpec;

/// A word of modes with exponents. Adjacent entries are distinct and odd modes
/// carry exponent 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    word: Vec<(Generator, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { word: Vec::new() }
    }

    pub fn generator(g: Generator) -> Self {
        Monomial {
            word: vec![(g, 1)],
        }
    }

    /// Builds a monomial from letters, merging equal neighbours and rewriting
    /// `G_r G_r` to `L_{2r}`.
    pub fn from_letters<I: IntoIterator<Item = Generator>>(letters: I) -> Self {
        let mut m = Monomial::one();
        for g in letters {
            m.push(g, 1);
        }
        m
    }

    pub(crate) fn push(&mut self, g: Generator, exp: u32) {
        for _ in 0..exp {
            match self.word.last_mut() {
                Some((top, e)) if *top == g => {
                    if g.is_odd() {
                        self.word.pop();
                        self.push(g.odd_square().unwrap(), 1);
                    } else {
                        *e += 1;
                    }
                }
                _ => self.word.push((g, 1)),
            }
        }
    }

    pub fn entries(&self) -> &[(Generator, u32)] {
        &self.word
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Generator> + '_ {
        self.word
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize))
    }

    pub fn is_one(&self) -> bool {
        self.word.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn len(&self) -> u32 {
        self.word.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn degree(&self) -> HalfInt {
        self.word
            .iter()
            .map(|&(g, e)| HalfInt::from_doubled(g.index().doubled() * e as i64))
            .sum()
    }

    pub fn last_generator(&self) -> Option<Generator> {
        self.word.last().map(|&(g, _)| g)
    }

    pub fn is_normal(&self, order: &OrderSpec) -> bool {
        self.word
            .windows(2)
            .all(|w| order.key(w[0].0) < order.key(w[1].0))
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for &(g, e) in &other.word {
            m.push(g, e);
        }
        m
    }
}

/// Graded order: degree, then length, then the word itself.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_squares_collapse() {
        let m = Monomial::from_letters([Generator::g(1), Generator::g(1)]);
        assert_eq!(m, Monomial::generator(Generator::l(1)));
        // G_{1/2} L_1 G_{1/2} G_{1/2} -> G_{1/2} L_1^2
        let m = Monomial::from_letters([Generator::g(1), Generator::l(1), Generator::g(1), Generator::g(1)]);
        assert_eq!(m.entries(), &[(Generator::g(1), 1), (Generator::l(1), 2)]);
    }

    #[test]
    fn degrees() {
        let m = Monomial::from_letters([Generator::l(-1), Generator::g(-1), Generator::l(1), Generator::g(1)]);
        assert_eq!(m.degree(), HalfInt::ZERO);
        assert_eq!(Monomial::generator(Generator::g(3)).degree(), HalfInt::from_doubled(3));
        assert_eq!(Monomial::from_letters([Generator::l(0), Generator::l(0)]).degree(), HalfInt::ZERO);
    }
}
