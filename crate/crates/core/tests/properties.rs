use std::collections::BTreeMap;

use nscas::algebra::{Generator, HalfInt};
use nscas::cli::parser::parse_element;
use nscas::enveloping::{normal_form, OrderSpec};
use nscas::rewrite::{act_element, presets, StateVector as Sv, StateWord};
use nscas::scalar::{rat, Field, Var};
use nscas::{Element, Scalar, StateVector, VermaModule, VermaVector};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_poly() -> impl Strategy<Value = Scalar> {
    let term = (-4i64..=4, 0u32..=2, 0u32..=2, 0u32..=1);
    prop::collection::vec(term, 0..4).prop_map(|ts| {
        ts.into_iter().fold(Scalar::zero(), |acc, (c, a, b, t)| {
            acc + Scalar::from_int(c)
                * Scalar::var(Var::Mu).pow(a)
                * Scalar::var(Var::Chat).pow(b)
                * Scalar::var(Var::Tau).pow(t)
        })
    })
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (arb_poly(), arb_poly()).prop_map(|(n, d)| if d.is_zero() { n } else { n / d })
}

fn arb_nonzero() -> impl Strategy<Value = Scalar> {
    arb_scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn arb_gen(bound: i64) -> impl Strategy<Value = Generator> {
    (any::<bool>(), -bound..=bound).prop_map(|(odd, k)| {
        if odd {
            Generator::g(2 * k + 1)
        } else {
            Generator::l(k)
        }
    })
}

fn arb_coeff() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::from_rational(&rat(n, d))),
        arb_scalar(),
    ]
}

fn arb_element_with(bound: i64, len: usize, terms: usize) -> impl Strategy<Value = Element> {
    let word = prop::collection::vec(arb_gen(bound), 0..=len);
    prop::collection::vec((arb_coeff(), word), 0..=terms).prop_map(|ts| {
        ts.into_iter()
            .fold(Element::zero(), |acc, (c, w)| acc + Element::word(&w).scale(&c))
    })
}

fn arb_element() -> impl Strategy<Value = Element> {
    arb_element_with(2, 3, 4)
}

fn arb_order() -> impl Strategy<Value = OrderSpec> {
    prop_oneof![
        Just(OrderSpec::ascending()),
        Just(OrderSpec::descending()),
        Just(OrderSpec::trailing(vec![Generator::l(-1), Generator::g(-1)]).unwrap()),
        Just(OrderSpec::new(true, vec![Generator::l(1), Generator::g(1)]).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!(a.clone() * Scalar::one(), a);
    }

    #[test]
    fn scalar_inverse(a in arb_nonzero()) {
        prop_assert_eq!(a.clone() * a.inverse().unwrap(), Scalar::one());
        prop_assert!(Scalar::zero().inverse().is_err());
    }

    #[test]
    fn normalization_is_idempotent(a in arb_scalar()) {
        let again = Scalar::new(a.numerator().clone(), a.denominator().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert!(a.denominator().leading_coefficient().is_one());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in arb_scalar(), b in arb_scalar(), v in arb_poly()) {
        let s = |x: &Scalar| x.substitute_one(Var::Mu, &v);
        if let (Ok(sa), Ok(sb), Ok(sab), Ok(sapb)) =
            (s(&a), s(&b), s(&(a.clone() * b.clone())), s(&(a.clone() + b.clone())))
        {
            prop_assert_eq!(sab, sa.clone() * sb.clone());
            prop_assert_eq!(sapb, sa + sb);
        }
    }

    #[test]
    fn substitution_composes(a in arb_poly(), g in arb_poly(), k in arb_poly()) {
        let k = k.substitute_one(Var::Tau, &Scalar::zero()).unwrap();
        let step = a
            .substitute_one(Var::Mu, &g).unwrap()
            .substitute_one(Var::Tau, &k).unwrap();
        let bindings = BTreeMap::from([
            (Var::Mu, g.substitute_one(Var::Tau, &k).unwrap()),
            (Var::Tau, k.clone()),
        ]);
        prop_assert_eq!(step, a.substitute(&bindings).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent(x in arb_element(), order in arb_order()) {
        let nf = normal_form(&x, &order);
        prop_assert!(nf.terms().all(|(m, _)| m.is_normal(&order)));
        prop_assert_eq!(normal_form(&nf, &order), nf);
    }

    #[test]
    fn normal_form_respects_products(
        x in arb_element_with(2, 2, 3),
        y in arb_element_with(2, 2, 3),
        order in arb_order(),
    ) {
        let whole = normal_form(&(x.clone() * y.clone()), &order);
        let parts = normal_form(&(normal_form(&x, &order) * normal_form(&y, &order)), &order);
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn normal_form_is_order_independent_up_to_renormalizing(x in arb_element(), a in arb_order(), b in arb_order()) {
        let via_a = normal_form(&normal_form(&x, &a), &b);
        prop_assert_eq!(via_a, normal_form(&x, &b));
    }
}

/// Reads a state vector of the highest-weight preset as a Verma vector.
fn into_verma(m: &VermaModule, v: &StateVector) -> VermaVector {
    m.act_element(&v.to_element(), &VermaVector::vacuum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rewrite_engine_agrees_with_verma_module(x in arb_element_with(2, 3, 3)) {
        let space = presets::verma_rules(HalfInt::integer(12));
        let m = VermaModule::new(Scalar::var(Var::H), Scalar::var(Var::Chat));
        let rewritten = act_element(&x, &Sv::word(StateWord::empty()), &space).unwrap();
        prop_assert_eq!(into_verma(&m, &rewritten), m.act_element(&x, &VermaVector::vacuum()));
    }

    #[test]
    fn action_is_linear(
        x in arb_element_with(2, 2, 2),
        y in arb_element_with(2, 2, 2),
        a in arb_coeff(),
        b in arb_coeff(),
        seed in prop::sample::select(vec!["x", "y", "h", "z"]),
    ) {
        let space = presets::n_rules();
        let s = space.vector(seed).unwrap();
        let combined = x.scale(&a) + y.scale(&b);
        let lhs = act_element(&combined, &s, &space);
        let ax = act_element(&x, &s, &space);
        let by = act_element(&y, &s, &space);
        if let (Ok(lhs), Ok(ax), Ok(by)) = (lhs, ax, by) {
            prop_assert_eq!(lhs, ax.scale(&a) + by.scale(&b));
        }
    }

    #[test]
    fn verma_action_is_a_representation(a in arb_gen(2), b in arb_gen(2), x in arb_element_with(1, 2, 2)) {
        let m = VermaModule::new(Scalar::var(Var::H), Scalar::var(Var::Chat));
        let v = m.act_element(&x, &VermaVector::vacuum());
        let sign = if a.is_odd() && b.is_odd() { Scalar::one() } else { -Scalar::one() };
        let lhs = m.act(a, &m.act(b, &v)) + m.act(b, &m.act(a, &v)).scale(&sign);
        let rhs = m.act_element(&Element::bracket(a, b), &v);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn render_parse_round_trip(x in arb_element_with(3, 4, 5)) {
        let text = x.to_string();
        let back = parse_element(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, x);
    }
}

#[test]
fn pbw_dimension_count_matches_series() {
    let series = nscas::verma::q_series_dims(16);
    for (d, want) in series.iter().enumerate() {
        let level = HalfInt::from_doubled(d as i64);
        assert_eq!(nscas::verma::dim(level) as u64, *want, "level {level}");
    }
}

#[test]
fn central_conventions() {
    let m = VermaModule::new(Scalar::var(Var::H), Scalar::var(Var::Chat));
    let v = VermaVector::vacuum();
    let gg = parse_element("G[3/2]*G[-3/2]").unwrap();
    let want = parse_element("2*h + 2/3*chat").unwrap();
    assert_eq!(m.act_element(&gg, &v), m.act_element(&want, &v));
}
