use std::collections::HashMap;

use crate::algebra::{koszul_sign, BracketTable, Generator, NeveuSchwarz};
use crate::scalar::CentralCharge;

use super::{Element, EnvelopingError, Monomial, OrderSpec};

/// PBW straightening for a fixed order and bracket table.
///
/// Repeatedly takes the leftmost adjacent pair that is out of order, swaps it
/// with sign `(-1)^{|a||b|}` and adds the bracket correction. A repeated odd
/// mode is replaced by `G_r G_r = L_{2r}`. Results for each word are cached.
pub struct Straightener<'a, K> {
    table: &'a dyn BracketTable,
    order: OrderSpec,
    memo: HashMap<Vec<Generator>, Element<K>>,
    steps: usize,
}

impl<'a, K: CentralCharge> Straightener<'a, K> {
    pub fn new(table: &'a dyn BracketTable, order: OrderSpec) -> Self {
        Straightener {
            table,
            order,
            memo: HashMap::new(),
            steps: 0,
        }
    }

    /// Number of swap and square rewrites performed so far (cached words are
    /// not recounted).
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn normal_form(&mut self, x: &Element<K>) -> Element<K> {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let letters: Vec<Generator> = m.letters().collect();
            out = out + self.word(&letters).scale(c);
        }
        out
    }

    fn word(&mut self, w: &[Generator]) -> Element<K> {
        if let Some(e) = self.memo.get(w) {
            return e.clone();
        }
        let result = self.straighten(w);
        self.memo.insert(w.to_vec(), result.clone());
        result
    }

    fn straighten(&mut self, w: &[Generator]) -> Element<K> {
        let inversion = w.windows(2).position(|p| {
            let (ka, kb) = (self.order.key(p[0]), self.order.key(p[1]));
            ka > kb || (p[0] == p[1] && p[0].is_odd())
        });
        let Some(i) = inversion else {
            return Element::monomial(Monomial::from_letters(w.iter().copied()), K::one());
        };
        self.steps += 1;
        let (a, b) = (w[i], w[i + 1]);
        let splice = |mid: &[Generator]| -> Vec<Generator> {
            let mut v = Vec::with_capacity(w.len());
            v.extend_from_slice(&w[..i]);
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[i + 2..]);
            v
        };
        if a == b {
            return self.word(&splice(&[a.odd_square().unwrap()]));
        }
        let sign = K::from_rational(&koszul_sign(a, b));
        let mut out = self.word(&splice(&[b, a])).scale(&sign);
        let br = self.table.bracket(a, b);
        if let Some((c, g)) = &br.term {
            out = out + self.word(&splice(&[*g])).scale(&K::from_rational(c));
        }
        if !num_traits::Zero::is_zero(&br.central) {
            let k = K::from_rational(&br.central) * K::central();
            out = out + self.word(&splice(&[])).scale(&k);
        }
        out
    }
}

pub fn normal_form<K: CentralCharge>(x: &Element<K>, order: &OrderSpec) -> Element<K> {
    normal_form_with(x, order, &NeveuSchwarz::default())
}

pub fn normal_form_with<K: CentralCharge>(
    x: &Element<K>,
    order: &OrderSpec,
    table: &dyn BracketTable,
) -> Element<K> {
    Straightener::new(table, order.clone()).normal_form(x)
}

/// Splits the normal form of `x` into `(quotient, ideal_part)`, where the ideal
/// part holds the normal monomials ending in a trailing mode. Those monomials
/// lie in the left ideal generated by the trailing set.
pub fn reduce_trailing<K: CentralCharge>(
    x: &Element<K>,
    order: &OrderSpec,
) -> Result<(Element<K>, Element<K>), EnvelopingError> {
    reduce_trailing_with(x, order, &NeveuSchwarz::default())
}

pub fn reduce_trailing_with<K: CentralCharge>(
    x: &Element<K>,
    order: &OrderSpec,
    table: &dyn BracketTable,
) -> Result<(Element<K>, Element<K>), EnvelopingError> {
    if !order.is_trailing() {
        return Err(EnvelopingError::NotTrailing);
    }
    let nf = normal_form_with(x, order, table);
    let mut quotient = Element::zero();
    let mut ideal = Element::zero();
    for (m, c) in nf.terms() {
        let in_ideal = m
            .last_generator()
            .is_some_and(|g| order.trailing_set().contains(&g));
        if in_ideal {
            ideal.add_term(m.clone(), c.clone());
        } else {
            quotient.add_term(m.clone(), c.clone());
        }
    }
    Ok((quotient, ideal))
}

/// Sound test for `x ≡ y` modulo `Σ U·g` over the trailing modes: true means
/// `x - y` provably lies in the left ideal. False is inconclusive in general.
pub fn congruent_mod<K: CentralCharge>(x: &Element<K>, y: &Element<K>, trailing: &[Generator]) -> bool {
    congruent_mod_with(x, y, trailing, &NeveuSchwarz::default())
}

pub fn congruent_mod_with<K: CentralCharge>(
    x: &Element<K>,
    y: &Element<K>,
    trailing: &[Generator],
    table: &dyn BracketTable,
) -> bool {
    let mut list = Vec::new();
    for &g in trailing {
        if !list.contains(&g) {
            list.push(g);
        }
    }
    let order = OrderSpec::trailing(list).expect("deduplicated");
    let diff = x.clone() - y.clone();
    let (quotient, _) = reduce_trailing_with(&diff, &order, table).expect("trailing order");
    quotient.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Field, Rational, RationalFunction, Var};

    type S = RationalFunction<Rational>;
    type E = Element<S>;

    fn l(n: i64) -> E {
        E::generator(Generator::l(n))
    }

    fn g(d: i64) -> E {
        E::generator(Generator::g(d))
    }

    fn k(n: i64, d: i64) -> E {
        E::scalar(S::from_rational(&rat(n, d)))
    }

    #[test]
    fn anticommute_half_modes() {
        let nf = normal_form(&(g(1) * g(-1)), &OrderSpec::ascending());
        assert_eq!(nf, k(-1, 1) * g(-1) * g(1) + k(2, 1) * l(0));
        assert_eq!(nf.to_string(), "-1*G[-1/2]*G[1/2] + 2*L[0]");
    }

    #[test]
    fn paper_sign_convention_on_virasoro_modes() {
        let nf = normal_form(&(l(1) * l(-1)), &OrderSpec::ascending());
        assert_eq!(nf, l(-1) * l(1) - k(2, 1) * l(0));
        // [L_{-1}, L_{-2}] = (-2 - (-1)) L_{-3} = -L_{-3}
        let nf = normal_form(&(l(-1) * l(-2)), &OrderSpec::ascending());
        assert_eq!(nf, l(-2) * l(-1) - l(-3));
    }

    #[test]
    fn central_term_appears_on_the_unit() {
        let nf = normal_form(&(g(3) * g(-3)), &OrderSpec::ascending());
        let chat = E::scalar(S::var(Var::Chat));
        assert_eq!(nf, -(g(-3) * g(3)) + k(2, 1) * l(0) + k(2, 3) * chat);
    }

    #[test]
    fn trailing_reduction_examples() {
        let order = OrderSpec::trailing(vec![Generator::g(-1)]).unwrap();
        let (q, i) = reduce_trailing(&(g(3) * g(-1)), &order).unwrap();
        assert!(q.is_zero());
        assert_eq!(i, g(3) * g(-1));
        let (q, i) = reduce_trailing(&(g(-1) * g(3)), &order).unwrap();
        assert_eq!(q, k(2, 1) * l(1));
        assert_eq!(i, -(g(3) * g(-1)));
        assert_eq!(
            reduce_trailing(&l(0), &OrderSpec::ascending()),
            Err(EnvelopingError::NotTrailing)
        );
    }

    #[test]
    fn lemma3_quotient() {
        let op = l(-1) * g(-1) * (k(1, 2) * l(1) * g(1) - g(3));
        let order = OrderSpec::trailing(vec![Generator::l(-1), Generator::g(-1)]).unwrap();
        let (q, _) = reduce_trailing(&op, &order).unwrap();
        assert_eq!(q, k(2, 1) * l(0) * l(0) - k(3, 1) * l(0));
        assert_eq!(q.to_string(), "2*L[0]^2 - 3*L[0]");
    }

    #[test]
    fn lemma2_congruences() {
        let i = (k(1, 2) * l(1) * g(1) - g(3)) * g(3);
        assert!(congruent_mod(&i, &E::zero(), &[Generator::l(1), Generator::g(1)]));
        let ii = (k(1, 2) * l(-1) * g(-1) + g(-3)) * g(-3);
        assert!(congruent_mod(&ii, &E::zero(), &[Generator::l(-1), Generator::g(-1)]));
        assert!(congruent_mod(&l(0), &l(0), &[Generator::g(1)]));
        assert!(!congruent_mod(&l(0), &E::zero(), &[Generator::g(1)]));
    }

    #[test]
    fn normal_form_is_idempotent_and_normal() {
        let x = g(3) * l(-2) * g(-1) * l(1) + k(3, 1) * g(1) * g(-3) * l(0);
        for order in [
            OrderSpec::ascending(),
            OrderSpec::descending(),
            OrderSpec::trailing(vec![Generator::l(-1), Generator::g(-1)]).unwrap(),
        ] {
            let nf = normal_form(&x, &order);
            assert!(nf.terms().all(|(m, _)| m.is_normal(&order)));
            assert_eq!(normal_form(&nf, &order), nf);
        }
    }
}
