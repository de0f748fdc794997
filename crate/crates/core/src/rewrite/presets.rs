//! Rule tables for the modules that appear in the nonexistence argument.
//!
//! `tau`, `taup`, `p` and `q` stay indeterminates; their closed forms are
//! derived by the checks, not assumed here.

use crate::algebra::{Generator, HalfInt};
use crate::enveloping::OrderSpec;
use crate::scalar::{rat, Field, Var};
use crate::Scalar;

use super::{StateSpace, StateVector, StateWord};

fn g(d: i64) -> Generator {
    Generator::g(d)
}

fn var(v: Var) -> Scalar {
    Scalar::var(v)
}

fn zero() -> StateVector<Scalar> {
    StateVector::zero()
}

fn mu_plus(n: i64, d: i64) -> Scalar {
    var(Var::Mu) + Scalar::from_rational(&rat(n, d))
}

/// The `V` side: `v` of weight `mu - 1/2` with `x = G_{3/2} v`,
/// `y = G_{-1/2} x`, `h = G_{-3/2} x`, `z = G_{-3/2} y` and
///
/// ```text
/// G[1/2] v -> 0        G[-1/2] y -> 0       G[1/2] y -> tau x
/// G[1/2] h -> 0        G[3/2] h -> p x      G[3/2] z -> q y
/// ```
///
/// The last rule is taken as an axiom. Words are ordered with `L_1, G_{1/2}`
/// trailing so that annihilators sit next to `v`.
pub fn n_rules() -> StateSpace<Scalar> {
    n_rules_with(StateVector::term(StateWord::new(vec![g(-1), g(3)]), var(Var::Q)))
}

/// [`n_rules`] with `G[3/2] z -> q x`, which breaks degree bookkeeping.
pub fn n_rules_corrupted() -> StateSpace<Scalar> {
    n_rules_with(StateVector::term(StateWord::new(vec![g(3)]), var(Var::Q)))
}

fn n_rules_with(g32_on_z: StateVector<Scalar>) -> StateSpace<Scalar> {
    let order = OrderSpec::trailing(vec![Generator::l(1), g(1)]).expect("distinct");
    let mut s = StateSpace::new(mu_plus(-1, 2), var(Var::Chat)).with_order(order);
    s.define_state_from("x", &[g(3)], "v").unwrap();
    s.define_state_from("y", &[g(-1)], "x").unwrap();
    s.define_state_from("h", &[g(-3)], "x").unwrap();
    s.define_state_from("z", &[g(-3)], "y").unwrap();
    let x = s.vector("x").unwrap();
    s.add_named_rule(g(1), "v", zero()).unwrap();
    s.add_named_rule(g(-1), "y", zero()).unwrap();
    s.add_named_rule(g(1), "y", x.scale(&var(Var::Tau))).unwrap();
    s.add_named_rule(g(1), "h", zero()).unwrap();
    s.add_named_rule(g(3), "h", x.scale(&var(Var::P))).unwrap();
    s.add_named_rule(g(3), "z", g32_on_z).unwrap();
    s
}

/// The `W` side: `w` of weight `mu + 1/2` with `xp = G_{-3/2} w`,
/// `yp = G_{1/2} xp`, `hp = G_{3/2} xp` and
///
/// ```text
/// G[-1/2] w -> 0       G[1/2] yp -> 0       G[-1/2] yp -> taup xp
/// G[-1/2] hp -> 0      G[-3/2] hp -> q xp
/// ```
///
/// Words are ordered by decreasing index with `L_{-1}, G_{-1/2}` trailing.
pub fn w_rules() -> StateSpace<Scalar> {
    let order = OrderSpec::new(true, vec![Generator::l(-1), g(-1)]).expect("distinct");
    let mut s = StateSpace::new(mu_plus(1, 2), var(Var::Chat)).with_order(order);
    s.define_state("w", StateWord::empty()).unwrap();
    s.define_state_from("xp", &[g(-3)], "w").unwrap();
    s.define_state_from("yp", &[g(1)], "xp").unwrap();
    s.define_state_from("hp", &[g(3)], "xp").unwrap();
    let xp = s.vector("xp").unwrap();
    s.add_named_rule(g(-1), "w", zero()).unwrap();
    s.add_named_rule(g(1), "yp", zero()).unwrap();
    s.add_named_rule(g(-1), "yp", xp.scale(&var(Var::Taup))).unwrap();
    s.add_named_rule(g(-1), "hp", zero()).unwrap();
    s.add_named_rule(g(-3), "hp", xp.scale(&var(Var::Q))).unwrap();
    s
}

/// A highest-weight vector of weight `h`: every mode `E_k` with
/// `0 < k <= bound` kills `v`.
pub fn verma_rules(bound: HalfInt) -> StateSpace<Scalar> {
    let mut s = StateSpace::new(var(Var::H), var(Var::Chat));
    for k in HalfInt::range_inclusive(HalfInt::from_doubled(1), bound) {
        s.add_rule(Generator::e(k), StateWord::empty(), zero()).unwrap();
    }
    s
}

/// A single annihilator, `G[1/2] v -> 0`, with symbolic weight `lam`.
pub fn single_annihilator() -> StateSpace<Scalar> {
    let mut s = StateSpace::new(var(Var::Lam), var(Var::Chat));
    s.add_rule(g(1), StateWord::empty(), zero()).unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{act_element, act_generator, check_representation, derive, RewriteError};
    use crate::Element;
    use num_traits::Zero;

    fn sv(s: &StateSpace<Scalar>, name: &str) -> StateVector<Scalar> {
        s.vector(name).unwrap()
    }

    fn word(s: &StateSpace<Scalar>, name: &str) -> StateWord {
        s.state(name).unwrap().clone()
    }

    #[test]
    fn n_rule_examples() {
        let s = n_rules();
        assert_eq!(act_generator(g(-1), &word(&s, "x"), &s).unwrap(), sv(&s, "y"));
        let tau = var(Var::Tau);
        assert_eq!(act_generator(g(1), &word(&s, "z"), &s).unwrap(), sv(&s, "h").scale(&-tau));
        assert_eq!(act_generator(g(3), &word(&s, "h"), &s).unwrap(), sv(&s, "x").scale(&var(Var::P)));
        let l0 = Element::generator(Generator::l(0));
        assert_eq!(act_element(&l0, &sv(&s, "x"), &s).unwrap(), sv(&s, "x").scale(&mu_plus(1, 1)));
        let lm1 = Element::generator(Generator::l(-1));
        assert!(act_element(&lm1, &sv(&s, "y"), &s).unwrap().is_zero());
        let v = sv(&s, "x") + sv(&s, "h");
        assert_eq!(act_element(&Element::one(), &v, &s).unwrap(), v);
    }

    #[test]
    fn derive_examples() {
        let s = n_rules();
        let op = Element::word(&[g(1), g(-3)]);
        let tau = var(Var::Tau);
        assert!(derive(&s, &op, &word(&s, "y"), &sv(&s, "h").scale(&-tau)).unwrap());

        let mut l4 = StateSpace::new(Scalar::zero(), var(Var::Chat));
        l4.add_rule(g(1), StateWord::empty(), zero()).unwrap();
        assert!(derive(&l4, &Element::word(&[g(1), g(-1)]), &StateWord::empty(), &zero()).unwrap());
    }

    #[test]
    fn single_annihilator_is_consistent() {
        let s = single_annihilator();
        let r = check_representation(&s, &[g(1)], &[StateWord::empty()], 2).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn corrupted_rule_is_rejected() {
        let s = n_rules_corrupted();
        let seeds: Vec<StateWord> = ["x", "y", "z", "h"].iter().map(|n| word(&s, n)).collect();
        let r = check_representation(&s, &[g(1), g(-1), g(3), g(-3)], &seeds, 2);
        assert!(matches!(r, Err(RewriteError::InconsistentTable(_))));
        assert!(matches!(
            act_generator(g(3), &word(&s, "z"), &s),
            Err(RewriteError::WeightMismatch { .. })
        ));
    }

    #[test]
    fn duplicate_and_growing_rules_are_refused() {
        let mut s = single_annihilator();
        assert!(matches!(
            s.add_rule(g(1), StateWord::empty(), zero()),
            Err(RewriteError::DuplicateRule { .. })
        ));
        let long = StateVector::word(StateWord::new(vec![g(3), g(-3)]));
        assert!(matches!(
            s.add_rule(g(3), StateWord::new(vec![g(-1)]), long),
            Err(RewriteError::RuleNotDecreasing { .. })
        ));
    }
}
