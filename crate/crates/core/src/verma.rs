//! Verma modules `M(h, c)`: the module induced from a vector `|h>` killed by
//! every positive mode, with `L_0 |h> = h |h>`. Positive modes raise the
//! `L_0` eigenvalue, so level-`l` vectors have weight `h - l`.
//!
//! The action is computed directly on partition monomials, independently of
//! the enveloping-algebra straightener, so it serves as an oracle for it.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Sub};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::algebra::{koszul_sign, BracketTable, Generator, HalfInt, Kind, NeveuSchwarz};
use crate::enveloping::Element;
use crate::scalar::CentralCharge;

#[derive(Debug, Clone, Error)]
pub enum VermaError {
    #[error("representation property fails: {0}")]
    RepresentationFailure(String),
    #[error("level {0} is negative")]
    NegativeLevel(HalfInt),
}

/// `G_{-g_1} ... G_{-g_a} L_{-l_1} ... L_{-l_b} |h>` with
/// `g_1 > ... > g_a > 0` half-odd and `l_1 >= ... >= l_b > 0` integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PartitionMonomial {
    pub g_parts: Vec<HalfInt>,
    pub l_parts: Vec<HalfInt>,
}

impl PartitionMonomial {
    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn level(&self) -> HalfInt {
        self.g_parts.iter().chain(&self.l_parts).copied().sum()
    }

    /// The modes of the word, left to right.
    pub fn letters(&self) -> Vec<Generator> {
        self.g_parts
            .iter()
            .chain(&self.l_parts)
            .map(|&k| Generator::e(-k))
            .collect()
    }

    /// Inverse of [`letters`](Self::letters) for words already in canonical
    /// order.
    fn from_letters(letters: &[Generator]) -> Self {
        let mut m = Self::vacuum();
        for g in letters {
            match g.kind() {
                Kind::G => m.g_parts.push(-g.index()),
                Kind::L => m.l_parts.push(-g.index()),
            }
        }
        m
    }

    pub fn is_valid(&self) -> bool {
        let g_ok = self.g_parts.iter().all(|k| !k.is_integer() && *k > HalfInt::ZERO)
            && self.g_parts.windows(2).all(|w| w[0] > w[1]);
        let l_ok = self.l_parts.iter().all(|k| k.is_integer() && *k > HalfInt::ZERO)
            && self.l_parts.windows(2).all(|w| w[0] >= w[1]);
        g_ok && l_ok
    }
}

/// Canonical basis order: fewer odd parts first, then larger parts first.
impl Ord for PartitionMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |m: &Self| (m.g_parts.len(), Reverse(m.g_parts.clone()), Reverse(m.l_parts.clone()));
        self.level()
            .cmp(&other.level())
            .then_with(|| key(self).cmp(&key(other)))
    }
}

impl PartialOrd for PartitionMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PartitionMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = self.g_parts.iter().map(|k| Generator::e(-*k).to_string()).collect();
        let mut i = 0;
        while i < self.l_parts.len() {
            let k = self.l_parts[i];
            let run = self.l_parts[i..].iter().take_while(|&&p| p == k).count();
            let g = Generator::e(-k);
            pieces.push(if run == 1 { g.to_string() } else { format!("{g}^{run}") });
            i += run;
        }
        if pieces.is_empty() {
            f.write_str("|h>")
        } else {
            write!(f, "{} |h>", pieces.join("*"))
        }
    }
}

/// Strict partitions of `total` (doubled) into half-odd parts `<= max`.
fn strict_half_odd(total: i64, max: i64, prefix: &mut Vec<HalfInt>, out: &mut Vec<Vec<HalfInt>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    let mut p = max.min(total);
    if p % 2 == 0 {
        p -= 1;
    }
    while p >= 1 {
        prefix.push(HalfInt::from_doubled(p));
        strict_half_odd(total - p, p - 2, prefix, out);
        prefix.pop();
        p -= 2;
    }
}

/// Partitions of `total` (doubled, even) into integer parts `<= max`.
fn integer_parts(total: i64, max: i64, prefix: &mut Vec<HalfInt>, out: &mut Vec<Vec<HalfInt>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    let mut p = max.min(total);
    if p % 2 != 0 {
        p -= 1;
    }
    while p >= 2 {
        prefix.push(HalfInt::from_doubled(p));
        integer_parts(total - p, p, prefix, out);
        prefix.pop();
        p -= 2;
    }
}

/// All partition monomials of the given level, in canonical order.
pub fn basis(level: HalfInt) -> Vec<PartitionMonomial> {
    let d = level.doubled();
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    for gsum in 0..=d {
        if (d - gsum) % 2 != 0 {
            continue;
        }
        let mut gs = Vec::new();
        strict_half_odd(gsum, gsum, &mut Vec::new(), &mut gs);
        let mut ls = Vec::new();
        integer_parts(d - gsum, d - gsum, &mut Vec::new(), &mut ls);
        for g in &gs {
            for l in &ls {
                out.push(PartitionMonomial {
                    g_parts: g.clone(),
                    l_parts: l.clone(),
                });
            }
        }
    }
    out.sort();
    out
}

pub fn dim(level: HalfInt) -> usize {
    basis(level).len()
}

/// Coefficients of `prod_{n>=1} (1 + q^{n-1/2}) / (1 - q^n)` at
/// `q^0, q^{1/2}, ..., q^{max_doubled/2}`.
pub fn q_series_dims(max_doubled: usize) -> Vec<u64> {
    let mut series = vec![0u64; max_doubled + 1];
    series[0] = 1;
    for n in 1..=max_doubled {
        let odd = 2 * n - 1;
        if odd <= max_doubled {
            for e in (odd..=max_doubled).rev() {
                series[e] += series[e - odd];
            }
        }
        let even = 2 * n;
        if even <= max_doubled {
            for e in even..=max_doubled {
                series[e] += series[e - even];
            }
        }
    }
    series
}

/// A linear combination of partition monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct VermaVector<K> {
    terms: BTreeMap<PartitionMonomial, K>,
}

impl<K: CentralCharge> VermaVector<K> {
    pub fn zero() -> Self {
        VermaVector {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_vector(m: PartitionMonomial) -> Self {
        Self::term(m, K::one())
    }

    pub fn vacuum() -> Self {
        Self::basis_vector(PartitionMonomial::vacuum())
    }

    pub fn term(m: PartitionMonomial, k: K) -> Self {
        let mut v = Self::zero();
        v.add_term(m, k);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PartitionMonomial, &K)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PartitionMonomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn add_term(&mut self, m: PartitionMonomial, k: K) {
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

    pub fn add_scaled(&mut self, other: &Self, k: &K) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone() * k.clone());
        }
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, k);
        out
    }

    /// The set of levels present.
    pub fn levels(&self) -> Vec<HalfInt> {
        let mut l: Vec<HalfInt> = self.terms.keys().map(|m| m.level()).collect();
        l.dedup();
        l
    }
}

impl<K: CentralCharge> Add for VermaVector<K> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<K: CentralCharge> Sub for VermaVector<K> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<K: CentralCharge> fmt::Display for VermaVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::enveloping::write_terms(f, self.terms.iter().rev().map(|(m, c)| (m, c, false)))
    }
}

#[derive(Debug, Clone)]
pub struct VermaReport {
    pub max_level: HalfInt,
    pub index_bound: HalfInt,
    pub vectors: usize,
    pub checks: usize,
}

/// The Verma module with highest weight `h` and central value `central`.
pub struct VermaModule<K> {
    h: K,
    central: K,
    table: Arc<dyn BracketTable>,
    cache: Mutex<HashMap<(Generator, PartitionMonomial), VermaVector<K>>>,
}

impl<K: CentralCharge> VermaModule<K> {
    pub fn new(h: K, central: K) -> Self {
        Self::with_table(h, central, Arc::new(NeveuSchwarz::default()))
    }

    pub fn with_table(h: K, central: K, table: Arc<dyn BracketTable>) -> Self {
        VermaModule {
            h,
            central,
            table,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn h(&self) -> &K {
        &self.h
    }

    pub fn central(&self) -> &K {
        &self.central
    }

    fn key(g: Generator) -> (u8, i64) {
        match g.kind() {
            Kind::G => (0, g.index().doubled()),
            Kind::L => (1, g.index().doubled()),
        }
    }

    pub fn act(&self, g: Generator, vec: &VermaVector<K>) -> VermaVector<K> {
        let mut out = VermaVector::zero();
        for (m, c) in vec.terms() {
            out.add_scaled(&self.act_monomial(g, m), c);
        }
        out
    }

    pub fn act_monomial(&self, g: Generator, m: &PartitionMonomial) -> VermaVector<K> {
        let key = (g, m.clone());
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = self.compute(g, m);
        self.cache.lock().unwrap().insert(key, v.clone());
        v
    }

    fn compute(&self, g: Generator, m: &PartitionMonomial) -> VermaVector<K> {
        if g.is_l0() {
            let w = self.h.clone() - K::from_rational(&m.level().to_rational());
            return VermaVector::term(m.clone(), w);
        }
        let letters = m.letters();
        let negative = g.index() < HalfInt::ZERO;
        let Some(&a) = letters.first() else {
            return if negative {
                VermaVector::basis_vector(PartitionMonomial::from_letters(&[g]))
            } else {
                VermaVector::zero()
            };
        };
        let rest = PartitionMonomial::from_letters(&letters[1..]);
        if negative && (Self::key(g) < Self::key(a) || (g == a && !g.is_odd())) {
            let mut w = vec![g];
            w.extend_from_slice(&letters);
            return VermaVector::basis_vector(PartitionMonomial::from_letters(&w));
        }
        if g == a && g.is_odd() {
            return self.act_monomial(g.odd_square().unwrap(), &rest);
        }
        let sign = K::from_rational(&koszul_sign(g, a));
        let inner = self.act_monomial(g, &rest);
        let mut out = self.act(a, &inner).scale(&sign);
        let br = self.table.bracket(g, a);
        if let Some((c, e)) = &br.term {
            out.add_scaled(&self.act_monomial(*e, &rest), &K::from_rational(c));
        }
        if !num_traits::Zero::is_zero(&br.central) {
            let k = K::from_rational(&br.central) * self.central.clone();
            out.add_term(rest, k);
        }
        out
    }

    /// Applies the monomials of `e` right to left; `c` in coefficients is
    /// specialized to this module's central value.
    pub fn act_element(&self, e: &Element<K>, vec: &VermaVector<K>) -> VermaVector<K> {
        let mut out = VermaVector::zero();
        for (m, c) in e.terms() {
            let c = c
                .specialize_central(&self.central)
                .expect("central value keeps coefficients defined");
            let mut cur = vec.clone();
            for g in m.letters().rev() {
                cur = self.act(g, &cur);
            }
            out.add_scaled(&cur, &c);
        }
        out
    }

    /// Matrix of `g` from level `level` to level `level - deg g`; rows index
    /// the target basis, columns the source basis.
    pub fn action_matrix(&self, g: Generator, level: HalfInt) -> Vec<Vec<K>> {
        let source = basis(level);
        let target = basis(level - g.weight_degree());
        let images: Vec<VermaVector<K>> = source.iter().map(|m| self.act_monomial(g, m)).collect();
        target
            .iter()
            .map(|t| images.iter().map(|img| img.coefficient(t)).collect())
            .collect()
    }

    /// `a(b u) - (-1)^{|a||b|} b(a u) = [a, b] u` for every pair of modes with
    /// `|index| <= index_bound` and every basis vector `u` of level
    /// `<= max_level`.
    pub fn rep_check(&self, max_level: HalfInt, index_bound: HalfInt) -> Result<VermaReport, VermaError> {
        if max_level < HalfInt::ZERO {
            return Err(VermaError::NegativeLevel(max_level));
        }
        let gens = crate::algebra::generators_up_to(index_bound);
        let mut vectors = 0;
        let mut checks = 0;
        for level in HalfInt::range_inclusive(HalfInt::ZERO, max_level) {
            for u in basis(level) {
                vectors += 1;
                let uv = VermaVector::basis_vector(u.clone());
                for &a in &gens {
                    for &b in &gens {
                        checks += 1;
                        let sign = K::from_rational(&koszul_sign(a, b));
                        let lhs = self.act(a, &self.act(b, &uv)) - self.act(b, &self.act(a, &uv)).scale(&sign);
                        let br = self.table.bracket(a, b);
                        let mut rhs = VermaVector::zero();
                        if let Some((c, e)) = &br.term {
                            rhs.add_scaled(&self.act(*e, &uv), &K::from_rational(c));
                        }
                        rhs.add_scaled(&uv, &(K::from_rational(&br.central) * self.central.clone()));
                        if lhs != rhs {
                            return Err(VermaError::RepresentationFailure(format!(
                                "[{a}, {b}] on {u}: action gives {lhs}, bracket gives {rhs}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(VermaReport {
            max_level,
            index_bound,
            vectors,
            checks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Field, Var};
    use crate::Scalar;

    fn half(d: i64) -> HalfInt {
        HalfInt::from_doubled(d)
    }

    fn module() -> VermaModule<Scalar> {
        VermaModule::new(Scalar::var(Var::H), Scalar::var(Var::Chat))
    }

    #[test]
    fn bases() {
        assert_eq!(basis(HalfInt::ZERO), vec![PartitionMonomial::vacuum()]);
        let b: Vec<String> = basis(half(3)).iter().map(|m| m.to_string()).collect();
        assert_eq!(b, ["G[-3/2] |h>", "G[-1/2]*L[-1] |h>"]);
        let b: Vec<String> = basis(half(4)).iter().map(|m| m.to_string()).collect();
        assert_eq!(b, ["L[-2] |h>", "L[-1]^2 |h>", "G[-3/2]*G[-1/2] |h>"]);
        assert!(basis(half(8)).iter().all(|m| m.is_valid() && m.level() == half(8)));
    }

    #[test]
    fn dims_match_series() {
        let dims: Vec<usize> = (0..=8).map(|d| dim(half(d))).collect();
        assert_eq!(dims, [1, 1, 1, 2, 3, 4, 5, 7, 10]);
        let series: Vec<usize> = q_series_dims(8).into_iter().map(|c| c as usize).collect();
        assert_eq!(series, dims);
    }

    #[test]
    fn action_examples() {
        let m = module();
        let h = Scalar::var(Var::H);
        let gm = |d| VermaVector::basis_vector(PartitionMonomial::from_letters(&[Generator::g(d)]));
        assert_eq!(m.act(Generator::g(1), &gm(-1)), VermaVector::vacuum().scale(&(h.clone() * Scalar::from_int(2))));
        let l1 = VermaVector::basis_vector(PartitionMonomial::from_letters(&[Generator::l(-1)]));
        assert_eq!(m.act(Generator::g(1), &gm(-3)), l1.scale(&Scalar::from_int(2)));
        assert_eq!(m.act(Generator::l(1), &l1), VermaVector::vacuum().scale(&(h * Scalar::from_int(-2))));
    }

    #[test]
    fn matrices() {
        let m = module();
        let h = Scalar::var(Var::H);
        for d in 0..=4 {
            let mat = m.action_matrix(Generator::l(0), half(d));
            let w = h.clone() - Scalar::from_rational(&rat(d, 2));
            for (i, row) in mat.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    assert_eq!(*x, if i == j { w.clone() } else { Scalar::from_int(0) });
                }
            }
        }
        assert_eq!(m.action_matrix(Generator::g(1), half(1)), vec![vec![h * Scalar::from_int(2)]]);
        assert!(m.action_matrix(Generator::g(1), HalfInt::ZERO).is_empty());
    }

    #[test]
    fn symbolic_rep_check_small() {
        assert!(module().rep_check(half(2), half(3)).is_ok());
        let zero = VermaModule::new(Scalar::from_int(0), Scalar::from_int(0));
        assert!(zero.rep_check(half(4), half(5)).is_ok());
    }

    #[test]
    fn wrong_central_term_is_caught() {
        let bad = NeveuSchwarz {
            odd_const: rat(1, 12),
            ..NeveuSchwarz::default()
        };
        let m = VermaModule::with_table(Scalar::var(Var::H), Scalar::var(Var::Chat), Arc::new(bad));
        assert!(matches!(m.rep_check(half(3), half(5)), Err(VermaError::RepresentationFailure(_))));
    }
}
