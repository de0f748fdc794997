//! The Neveu-Schwarz superalgebra: modes `L_n` (even) and `G_r` (odd, `r`
//! half-odd), with the central element carried as a scalar.
//!
//! Sign conventions: `[L_m, L_n] = (n-m) L_{m+n}`, `[L_m, G_r] = (r - m/2) G_{m+r}`
//! and `[G_r, G_s] = 2 L_{r+s} + (4r^2-1)/12 δ c`. With the even bracket written
//! as `(n-m)`, the super-Jacobi identity forces the Virasoro central term to be
//! `-(m^3-m)/12 δ c`; that is what [`NeveuSchwarz::default`] uses. The literal
//! `+(m^3-m)/12` variant is available as [`NeveuSchwarz::verbatim`] and fails
//! the Jacobi sweep.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("L modes need an integer index, got {0}")]
    LIndexNotInteger(HalfInt),
    #[error("G modes need a half-odd index, got {0}")]
    GIndexNotHalfOdd(HalfInt),
    #[error("cannot parse `{0}` as a half-integer")]
    BadHalfInt(String),
    #[error("cannot parse `{0}` as a generator")]
    BadGenerator(String),
}

/// An element of ½ℤ, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn integer(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0, 2)
    }

    /// Half-integer steps from `from` to `to` inclusive.
    pub fn range_inclusive(from: HalfInt, to: HalfInt) -> impl Iterator<Item = HalfInt> {
        (from.0..=to.0).map(HalfInt)
    }
}

impl Add for HalfInt {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        HalfInt(self.0.checked_add(rhs.0).expect("half-integer overflow"))
    }
}

impl Sub for HalfInt {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        HalfInt(self.0.checked_sub(rhs.0).expect("half-integer overflow"))
    }
}

impl Neg for HalfInt {
    type Output = Self;

    fn neg(self) -> Self {
        HalfInt(-self.0)
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> Self {
        iter.fold(HalfInt::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = AlgebraError;

    /// Accepts `3`, `-2`, `3/2`, `-1/2`, `+5/2` and `4/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::BadHalfInt(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n, d),
            None => (t.as_str(), "1"),
        };
        let num: i64 = num.trim_start_matches('+').parse().map_err(|_| bad())?;
        let den: i64 = den.parse().map_err(|_| bad())?;
        match den {
            1 => Ok(HalfInt::integer(num)),
            2 => Ok(HalfInt(num)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    L,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{|a||b|}` as an integer.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

/// A basis mode `L_n` or `G_r`. The index determines the kind, so generators
/// are totally ordered by index alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    kind: Kind,
    index: HalfInt,
}

impl Generator {
    pub fn try_new(kind: Kind, index: HalfInt) -> Result<Self, AlgebraError> {
        match (kind, index.is_integer()) {
            (Kind::L, true) | (Kind::G, false) => Ok(Generator { kind, index }),
            (Kind::L, false) => Err(AlgebraError::LIndexNotInteger(index)),
            (Kind::G, true) => Err(AlgebraError::GIndexNotHalfOdd(index)),
        }
    }

    /// `L_n`.
    pub const fn l(n: i64) -> Self {
        Generator {
            kind: Kind::L,
            index: HalfInt::integer(n),
        }
    }

    /// `G_{doubled/2}`; panics if `doubled` is even.
    pub fn g(doubled: i64) -> Self {
        assert!(doubled % 2 != 0, "G index must be half-odd");
        Generator {
            kind: Kind::G,
            index: HalfInt::from_doubled(doubled),
        }
    }

    /// The unified mode `E_k`: `L_k` for integer `k`, `G_k` otherwise.
    pub fn e(k: HalfInt) -> Self {
        Generator {
            kind: if k.is_integer() { Kind::L } else { Kind::G },
            index: k,
        }
    }

    pub fn kind(self) -> Kind {
        self.kind
    }

    pub fn index(self) -> HalfInt {
        self.index
    }

    pub fn parity(self) -> Parity {
        match self.kind {
            Kind::L => Parity::Even,
            Kind::G => Parity::Odd,
        }
    }

    pub fn is_odd(self) -> bool {
        self.kind == Kind::G
    }

    /// The `L_0`-weight shift of the mode.
    pub fn weight_degree(self) -> HalfInt {
        self.index
    }

    pub fn is_l0(self) -> bool {
        self == Generator::l(0)
    }

    /// For an odd mode, `G_r G_r = L_{2r}`.
    pub fn odd_square(self) -> Option<Generator> {
        self.is_odd().then(|| Generator::l(self.index.doubled()))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index.cmp(&other.index)
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::L => 'L',
            Kind::G => 'G',
        };
        write!(f, "{k}[{}]", self.index)
    }
}

impl FromStr for Generator {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || AlgebraError::BadGenerator(s.to_string());
        let kind = match t.chars().next() {
            Some('L') => Kind::L,
            Some('G') => Kind::G,
            _ => return Err(bad()),
        };
        let inner = t[1..]
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        Generator::try_new(kind, inner.parse()?)
    }
}

/// A super-bracket value: a rational multiple of one mode plus a rational
/// multiple of the central element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub term: Option<(Rational, Generator)>,
    pub central: Rational,
}

impl Bracket {
    pub fn zero() -> Self {
        Bracket {
            term: None,
            central: Rational::zero(),
        }
    }

    fn new(coeff: Rational, g: Generator, central: Rational) -> Self {
        Bracket {
            term: (!coeff.is_zero()).then_some((coeff, g)),
            central,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.term.is_none() && self.central.is_zero()
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Bracket {
            term: self
                .term
                .as_ref()
                .map(|(c, g)| (c * k, *g))
                .filter(|(c, _)| !c.is_zero()),
            central: &self.central * k,
        }
    }

    pub fn plus(&self, other: &Bracket) -> Option<Bracket> {
        let term = match (&self.term, &other.term) {
            (None, t) | (t, None) => t.clone(),
            (Some((a, g)), Some((b, h))) if g == h => {
                let s = a + b;
                (!s.is_zero()).then_some((s, *g))
            }
            _ => return None,
        };
        Some(Bracket {
            term,
            central: &self.central + &other.central,
        })
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.term, self.central.is_zero()) {
            (None, true) => f.write_str("0"),
            (None, false) => write!(f, "{}*chat", self.central),
            (Some((c, g)), true) => write!(f, "{c}*{g}"),
            (Some((c, g)), false) if self.central.is_negative() => {
                write!(f, "{c}*{g} - {}*chat", -&self.central)
            }
            (Some((c, g)), false) => write!(f, "{c}*{g} + {}*chat", self.central),
        }
    }
}

/// Structure constants of a (super)algebra on the modes `L_n`, `G_r`.
pub trait BracketTable: Send + Sync + fmt::Debug {
    fn bracket(&self, a: Generator, b: Generator) -> Bracket;
}

/// Neveu-Schwarz structure constants with configurable central cocycle:
/// `[L_m, L_{-m}] ∋ vir·(m^3-m) c` and `[G_r, G_{-r}] ∋ (odd_r2·r^2 + odd_const) c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeveuSchwarz {
    pub vir: Rational,
    pub odd_r2: Rational,
    pub odd_const: Rational,
}

impl Default for NeveuSchwarz {
    fn default() -> Self {
        NeveuSchwarz {
            vir: rat(-1, 12),
            odd_r2: rat(1, 3),
            odd_const: rat(-1, 12),
        }
    }
}

impl NeveuSchwarz {
    /// The relations with `+(m^3-m)/12` on the even central term. Violates
    /// super-Jacobi on triples such as `(L_{-2}, G_{3/2}, G_{1/2})`.
    pub fn verbatim() -> Self {
        NeveuSchwarz {
            vir: rat(1, 12),
            ..Self::default()
        }
    }
}

impl BracketTable for NeveuSchwarz {
    fn bracket(&self, a: Generator, b: Generator) -> Bracket {
        let sum = a.index + b.index;
        let sum_zero = sum == HalfInt::ZERO;
        match (a.kind, b.kind) {
            (Kind::L, Kind::L) => {
                let m = a.index.to_rational();
                let n = b.index.to_rational();
                let central = if sum_zero {
                    &self.vir * (&m * &m * &m - &m)
                } else {
                    Rational::zero()
                };
                Bracket::new(n - m, Generator::e(sum), central)
            }
            (Kind::L, Kind::G) => {
                let m = a.index.to_rational();
                let r = b.index.to_rational();
                Bracket::new(r - m / rat(2, 1), Generator::e(sum), Rational::zero())
            }
            (Kind::G, Kind::L) => self.bracket(b, a).scaled(&rat(-1, 1)),
            (Kind::G, Kind::G) => {
                let r = a.index.to_rational();
                let central = if sum_zero {
                    &self.odd_r2 * &r * &r + &self.odd_const
                } else {
                    Rational::zero()
                };
                Bracket::new(rat(2, 1), Generator::e(sum), central)
            }
        }
    }
}

/// The bracket with the default table.
pub fn bracket(a: Generator, b: Generator) -> Bracket {
    NeveuSchwarz::default().bracket(a, b)
}

/// Every mode with `|index| <= bound`, in increasing index order.
pub fn generators_up_to(bound: HalfInt) -> Vec<Generator> {
    HalfInt::range_inclusive(-bound.abs(), bound.abs())
        .map(Generator::e)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub generators: BTreeSet<Generator>,
    pub central_reached: bool,
}

/// Breadth-first closure of `seeds` under the bracket, truncated to modes with
/// `|index| <= index_bound`.
///
/// The central element is reached when some bracket is purely central, or two
/// brackets landing on the same mode carry different central-to-mode ratios
/// (their difference is a nonzero multiple of `c`).
pub fn adjoint_closure(
    table: &dyn BracketTable,
    seeds: &[Generator],
    index_bound: HalfInt,
) -> Closure {
    let within = |g: &Generator| g.index.abs() <= index_bound;
    let mut found: BTreeSet<Generator> = seeds.iter().copied().filter(within).collect();
    let mut queue: VecDeque<Generator> = found.iter().copied().collect();
    let mut processed: Vec<Generator> = Vec::new();
    let mut ratios: BTreeMap<Generator, Rational> = BTreeMap::new();
    let mut central_reached = false;

    let mut record = |br: &Bracket, found: &mut BTreeSet<Generator>, queue: &mut VecDeque<Generator>| {
        match &br.term {
            None => central_reached |= !br.central.is_zero(),
            Some((c, g)) => {
                let ratio = &br.central / c;
                match ratios.get(g) {
                    Some(prev) if *prev != ratio => central_reached = true,
                    Some(_) => {}
                    None => {
                        ratios.insert(*g, ratio);
                    }
                }
                if within(g) && found.insert(*g) {
                    queue.push_back(*g);
                }
            }
        }
    };

    while let Some(a) = queue.pop_front() {
        processed.push(a);
        for &b in processed.clone().iter() {
            let br = table.bracket(a, b);
            record(&br, &mut found, &mut queue);
        }
    }
    Closure {
        generators: found,
        central_reached,
    }
}

/// `(-1)^{|a||b|}` as a rational.
pub(crate) fn koszul_sign(a: Generator, b: Generator) -> Rational {
    if a.is_odd() && b.is_odd() {
        -Rational::one()
    } else {
        Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(d: i64) -> Generator {
        Generator::g(d)
    }

    #[test]
    fn parses_and_displays() {
        let x: Generator = "G[-3/2]".parse().unwrap();
        assert_eq!(x, g(-3));
        assert_eq!(x.to_string(), "G[-3/2]");
        assert_eq!("L[ -2 ]".parse::<Generator>().unwrap(), Generator::l(-2));
        assert!(matches!("G[1]".parse::<Generator>(), Err(AlgebraError::GIndexNotHalfOdd(_))));
        assert!(matches!("L[1/2]".parse::<Generator>(), Err(AlgebraError::LIndexNotInteger(_))));
        assert!("L[1/3]".parse::<Generator>().is_err());
    }

    #[test]
    fn bracket_examples() {
        let b = bracket(Generator::l(1), g(1));
        assert!(b.is_zero());
        let b = bracket(g(3), g(-3));
        assert_eq!(b.term, Some((rat(2, 1), Generator::l(0))));
        assert_eq!(b.central, rat(2, 3));
        let b = bracket(Generator::l(0), g(1));
        assert_eq!(b.term, Some((rat(1, 2), g(1))));
        let b = bracket(Generator::l(2), Generator::l(-2));
        assert_eq!(b.term, Some((rat(-4, 1), Generator::l(0))));
    }

    #[test]
    fn verbatim_even_central_term() {
        let b = NeveuSchwarz::verbatim().bracket(Generator::l(2), Generator::l(-2));
        assert_eq!(b.central, rat(1, 2));
        assert_eq!(bracket(Generator::l(2), Generator::l(-2)).central, rat(-1, 2));
    }

    #[test]
    fn parity_and_degree() {
        assert_eq!(Generator::l(5).parity(), Parity::Even);
        assert_eq!(g(-1).parity(), Parity::Odd);
        assert_eq!(Generator::e(HalfInt::from_doubled(7)).parity(), Parity::Odd);
        assert_eq!(Generator::l(-2).weight_degree(), HalfInt::integer(-2));
        assert_eq!(g(3).weight_degree(), HalfInt::from_doubled(3));
    }

    #[test]
    fn closure_of_single_modes() {
        let t = NeveuSchwarz::default();
        let c = adjoint_closure(&t, &[Generator::l(1)], HalfInt::integer(3));
        assert_eq!(c.generators.into_iter().collect::<Vec<_>>(), vec![Generator::l(1)]);
        assert!(!c.central_reached);
        // [L_1, G_{1/2}] vanishes, so G_{1/2} only produces L_1.
        let c = adjoint_closure(&t, &[g(1)], HalfInt::integer(2));
        assert_eq!(c.generators.into_iter().collect::<Vec<_>>(), vec![g(1), Generator::l(1)]);
    }

    #[test]
    fn halfint_parsing() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::from_doubled(3));
        assert_eq!("-2".parse::<HalfInt>().unwrap(), HalfInt::integer(-2));
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt::integer(2));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert_eq!(HalfInt::from_doubled(-1).to_string(), "-1/2");
    }
}
