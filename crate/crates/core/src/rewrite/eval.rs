use std::collections::{HashMap, HashSet};

use crate::algebra::{koszul_sign, Generator};
use crate::enveloping::Element;
use crate::scalar::CentralCharge;

use super::{RewriteError, StateSpace, StateVector, StateWord};

const MAX_DEPTH: usize = 400;

/// Computes the action of the enveloping algebra on a [`StateSpace`].
///
/// For `g · s`:
/// 1. `L_0` multiplies by the weight of `s`;
/// 2. `L_{±1}` is expanded as `G_{±1/2} G_{±1/2}`, unless the same expansion
///    is already in progress on `s`, in which case steps 3-6 apply;
/// 3. a rule keyed `(g, s)` gives its replacement;
/// 4. `g · v` with no rule is the word `[g]`;
/// 5. if `g` sorts before the first letter `a` of `s` (or equals an even `a`)
///    it is prepended, and `G_r G_r s'` becomes `L_{2r} s'`;
/// 6. otherwise `g a s' = ±a (g s') + [g, a] s'`.
///
/// Every result is checked for degree consistency. Results are cached, so an
/// evaluator should not outlive edits to its space.
pub struct Evaluator<'a, K> {
    space: &'a StateSpace<K>,
    cache: HashMap<(Generator, StateWord, bool), StateVector<K>>,
    expanding: HashSet<(Generator, StateWord)>,
    depth: usize,
}

impl<'a, K: CentralCharge> Evaluator<'a, K> {
    pub fn new(space: &'a StateSpace<K>) -> Self {
        Evaluator {
            space,
            cache: HashMap::new(),
            expanding: HashSet::new(),
            depth: 0,
        }
    }

    pub fn space(&self) -> &StateSpace<K> {
        self.space
    }

    pub fn act_generator(&mut self, g: Generator, s: &StateWord) -> Result<StateVector<K>, RewriteError> {
        self.act(g, s, true)
    }

    pub fn act_vector(&mut self, g: Generator, vec: &StateVector<K>) -> Result<StateVector<K>, RewriteError> {
        self.act_vector_with(g, vec, true)
    }

    /// Applies each monomial of `e` right to left; `c` acts as the space's
    /// central value through the scalars themselves.
    pub fn act_element(&mut self, e: &Element<K>, vec: &StateVector<K>) -> Result<StateVector<K>, RewriteError> {
        let mut out = StateVector::zero();
        for (m, c) in e.terms() {
            let mut cur = vec.clone();
            for g in m.letters().rev() {
                if cur.is_zero() {
                    break;
                }
                cur = self.act_vector(g, &cur)?;
            }
            out.add_scaled(&cur, c);
        }
        Ok(out)
    }

    fn act_vector_with(
        &mut self,
        g: Generator,
        vec: &StateVector<K>,
        expand: bool,
    ) -> Result<StateVector<K>, RewriteError> {
        let mut out = StateVector::zero();
        for (w, c) in vec.terms() {
            let r = self.act(g, w, expand)?;
            out.add_scaled(&r, c);
        }
        Ok(out)
    }

    fn act(&mut self, g: Generator, s: &StateWord, expand: bool) -> Result<StateVector<K>, RewriteError> {
        let key = (g, s.clone(), expand);
        if let Some(r) = self.cache.get(&key) {
            return Ok(r.clone());
        }
        if self.depth >= MAX_DEPTH {
            return Err(RewriteError::DepthExceeded(MAX_DEPTH));
        }
        self.depth += 1;
        let r = self.compute(g, s, expand);
        self.depth -= 1;
        let r = r?;
        let d = s.degree() + g.weight_degree();
        if let Some(w) = r.words().find(|w| w.degree() != d) {
            return Err(RewriteError::WeightMismatch {
                head: g,
                state: s.clone(),
                produced: w.clone(),
            });
        }
        self.cache.insert(key, r.clone());
        Ok(r)
    }

    fn compute(&mut self, g: Generator, s: &StateWord, expand: bool) -> Result<StateVector<K>, RewriteError> {
        if g.is_l0() {
            return Ok(StateVector::term(s.clone(), self.space.weight(s)));
        }
        if expand && (g == Generator::l(1) || g == Generator::l(-1)) {
            if !self.expanding.insert((g, s.clone())) {
                return self.act(g, s, false);
            }
            let half = Generator::g(g.index().doubled() / 2);
            let r = self
                .act(half, s, true)
                .and_then(|once| self.act_vector_with(half, &once, true));
            self.expanding.remove(&(g, s.clone()));
            return r;
        }
        if let Some(r) = self.space.rule(g, s) {
            return Ok(r.clone());
        }
        let Some(a) = s.first() else {
            return Ok(StateVector::word(s.prepend(g)));
        };
        let rest = s.rest();
        if self.space.order().precedes(g, a) || (g == a && !g.is_odd()) {
            return Ok(StateVector::word(s.prepend(g)));
        }
        if g == a {
            return self.act(g.odd_square().unwrap(), &rest, false);
        }
        let sign = K::from_rational(&koszul_sign(g, a));
        let inner = self.act(g, &rest, true)?;
        let mut out = self.act_vector(a, &inner)?.scale(&sign);
        let br = self.space.table().bracket(g, a);
        if let Some((c, m)) = &br.term {
            let t = self.act(*m, &rest, true)?;
            out.add_scaled(&t, &K::from_rational(c));
        }
        if !num_traits::Zero::is_zero(&br.central) {
            let k = K::from_rational(&br.central) * self.space.central().clone();
            out.add_term(rest, k);
        }
        Ok(out)
    }
}

pub fn act_generator<K: CentralCharge>(
    g: Generator,
    s: &StateWord,
    space: &StateSpace<K>,
) -> Result<StateVector<K>, RewriteError> {
    Evaluator::new(space).act_generator(g, s)
}

pub fn act_element<K: CentralCharge>(
    e: &Element<K>,
    vec: &StateVector<K>,
    space: &StateSpace<K>,
) -> Result<StateVector<K>, RewriteError> {
    Evaluator::new(space).act_element(e, vec)
}

/// True iff `operator · source - expected` reduces to zero.
pub fn derive<K: CentralCharge>(
    space: &StateSpace<K>,
    operator: &Element<K>,
    source: &StateWord,
    expected: &StateVector<K>,
) -> Result<bool, RewriteError> {
    let got = act_element(operator, &StateVector::word(source.clone()), space)?;
    Ok((got - expected.clone()).is_zero())
}
