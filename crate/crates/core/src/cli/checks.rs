//! The registry of named verifications.
//!
//! Each check recomputes one displayed identity or derivation with the
//! library and compares exactly. Identities about concrete `U(NS)` elements go
//! through [`congruent_mod`]; statements about vectors go through the rewrite
//! engine on a preset; module-level statements go through the Verma oracle.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{adjoint_closure, generators_up_to, koszul_sign, Bracket, BracketTable, Generator, HalfInt, NeveuSchwarz};
use crate::enveloping::{congruent_mod_with, reduce_trailing_with, OrderSpec};
use crate::rewrite::{act_element, check_representation, presets, RewriteError, StateWord};
use crate::scalar::{rat, Field, Rational, Var};
use crate::verma::{self, VermaError};
use crate::{Element, Poly, Scalar, StateSpace, StateVector, VermaModule};

use super::parser::{parse_element, parse_scalar};
use super::rules::parse_state_vector;
use super::report::{CheckReport, MachineValue, Status, ValueKind};

/// Settings shared by all checks.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    /// Word length explored by `lemma6.closure`.
    pub closure_depth: usize,
    /// Structure constants every computation uses.
    pub table: Arc<dyn BracketTable>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            closure_depth: 4,
            table: Arc::new(NeveuSchwarz::default()),
        }
    }
}

impl CheckConfig {
    /// Reads `NSCAS_DEPTH`, falling back to the default depth of 4.
    pub fn from_env() -> Self {
        let closure_depth = std::env::var("NSCAS_DEPTH")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&d: &usize| d >= 1)
            .unwrap_or(4);
        CheckConfig {
            closure_depth,
            ..CheckConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown check `{0}`")]
pub struct UnknownCheck(pub String);

type Outcome = Result<(), String>;
type CheckFn = Arc<dyn Fn(&mut Ctx, &CheckConfig) -> Outcome + Send + Sync>;

pub struct Check {
    pub id: String,
    run: CheckFn,
}

/// Collects the trace of one check.
pub struct Ctx {
    table: Arc<dyn BracketTable>,
    details: Vec<String>,
    machine: Vec<MachineValue>,
    ok: bool,
}

impl Ctx {
    fn new(table: Arc<dyn BracketTable>) -> Self {
        Ctx {
            table,
            details: Vec::new(),
            machine: Vec::new(),
            ok: true,
        }
    }

    /// A rule space using this check's structure constants.
    fn space(&self, s: StateSpace) -> StateSpace {
        s.with_table(self.table.clone())
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }

    /// Records a condition; the check fails if any condition is false.
    pub fn require(&mut self, cond: bool, what: impl Display) -> bool {
        self.details
            .push(format!("{} {what}", if cond { "ok:" } else { "FAILED:" }));
        self.ok &= cond;
        cond
    }

    fn value(&mut self, label: &str, kind: ValueKind, value: String) {
        self.machine.push(MachineValue {
            label: label.to_string(),
            kind,
            value,
        });
    }

    pub fn element(&mut self, label: &str, e: &Element) {
        self.value(label, ValueKind::Element, e.to_string());
    }

    pub fn scalar(&mut self, label: &str, s: &Scalar) {
        self.value(label, ValueKind::Scalar, s.to_string());
    }

    pub fn state(&mut self, label: &str, v: &StateVector) {
        self.value(label, ValueKind::State, v.to_element().to_string());
    }
}

fn err<E: Display>(e: E) -> String {
    e.to_string()
}

fn el(text: &str) -> Element {
    parse_element(text).unwrap_or_else(|e| panic!("built-in expression `{text}`: {e}"))
}

fn sc(text: &str) -> Scalar {
    parse_scalar(text).unwrap_or_else(|e| panic!("built-in scalar `{text}`: {e}"))
}

fn state(space: &StateSpace, text: &str) -> StateVector {
    parse_state_vector(space, text).unwrap_or_else(|e| panic!("built-in state `{text}`: {e}"))
}

fn half(doubled: i64) -> HalfInt {
    HalfInt::from_doubled(doubled)
}

fn l(n: i64) -> Generator {
    Generator::l(n)
}

fn g(d: i64) -> Generator {
    Generator::g(d)
}

const LEMMA2_I: &str = "(1/2*L[1]*G[1/2] - G[3/2])*G[3/2]";
const LEMMA2_II: &str = "(1/2*L[-1]*G[-1/2] + G[-3/2])*G[-3/2]";
const LEMMA2_I_OP: &str = "1/2*L[1]*G[1/2] - G[3/2]";
const LEMMA2_II_OP: &str = "1/2*L[-1]*G[-1/2] + G[-3/2]";
const LEMMA3_OP: &str = "L[-1]*G[-1/2]*(1/2*L[1]*G[1/2] - G[3/2])";
const EQ7_RHS: &str = "2*L[0]^2 - 3*L[0] - L[0]*G[1/2]*G[-1/2] + 2*G[1/2]*G[-1/2]";
const EQ8_LHS: &str = "L[1]*G[1/2]*(1/2*L[-1]*G[-1/2] + G[-3/2])";
const EQ8_RHS: &str = "-2*L[0]^2 - 3*L[0] + L[0]*G[-1/2]*G[1/2] + 2*G[-1/2]*G[1/2]";
const CENTRAL_LHS: &str = "G[-3/2]*(1/2*L[1]*G[1/2] - G[3/2])";
const CENTRAL_RHS: &str = "-G[1/2]*G[-1/2] - 1/2*L[1]*G[1/2]*G[-3/2] + G[3/2]*G[-3/2] - 2/3*chat";
const MIRROR_LHS: &str = "G[3/2]*(1/2*L[-1]*G[-1/2] + G[-3/2])";
const MIRROR_RHS: &str = "G[-1/2]*G[1/2] - 1/2*L[-1]*G[-1/2]*G[3/2] - G[-3/2]*G[3/2] + 2/3*chat";
const TAU: &str = "(mu+1)*(2*mu-1)/(mu-1)";
const TAUP: &str = "(mu-1)*(2*mu+1)/(mu+1)";

/// The 24 closing formulas: operator, source state, expected vector.
pub const LEMMA6_FORMULAS: [(&str, &str, &str); 24] = [
    ("G[-1/2]", "x", "y"),
    ("G[-1/2]", "y", "0"),
    ("G[-3/2]", "x", "h"),
    ("G[-3/2]", "y", "z"),
    ("G[1/2]", "h", "0"),
    ("G[1/2]", "z", "-tau*h"),
    ("G[3/2]", "h", "p*x"),
    ("G[3/2]", "z", "q*y"),
    ("G[1/2]*G[-3/2]", "x", "0"),
    ("G[3/2]*G[-3/2]", "x", "p*x"),
    ("G[1/2]*G[-3/2]", "y", "-tau*h"),
    ("G[3/2]*G[-3/2]", "y", "q*y"),
    ("G[1/2]*G[1/2]*G[-3/2]", "y", "0"),
    ("G[3/2]*G[1/2]*G[-3/2]", "y", "-tau*p*x"),
    ("L[-1]", "x", "0"),
    ("L[-1]", "y", "0"),
    ("G[-1/2]*G[3/2]", "h", "p*y"),
    ("G[-3/2]*G[3/2]", "h", "p*h"),
    ("G[-1/2]*G[3/2]", "z", "0"),
    ("G[-3/2]*G[3/2]", "z", "q*z"),
    ("G[-1/2]*G[-1/2]*G[3/2]", "h", "0"),
    ("G[-3/2]*G[-1/2]*G[3/2]", "h", "p*z"),
    ("L[1]", "h", "0"),
    ("L[1]", "z", "0"),
];

fn check(id: &str, f: impl Fn(&mut Ctx, &CheckConfig) -> Outcome + Send + Sync + 'static) -> Check {
    Check {
        id: id.to_string(),
        run: Arc::new(f),
    }
}

/// Every registered check, in report order.
pub fn registry() -> Vec<Check> {
    let mut v = vec![
        check("jacobi.sweep", jacobi_sweep),
        check("bracket.table", bracket_table),
        check("genset.principal", genset_principal),
        check("lemma1.commutators", lemma1_commutators),
        check("lemma1.induction", lemma1_induction),
        check("lemma2.i", |cx, _| congruence(cx, LEMMA2_I, "0", &[l(1), g(1)])),
        check("lemma2.ii", |cx, _| congruence(cx, LEMMA2_II, "0", &[l(-1), g(-1)])),
        check("lemma3.congruence", lemma3_congruence),
        check("lemma4.eq2", lemma4_eq2),
        check("lemma4.eq3", lemma4_eq3),
        check("lemma4.eq4", lemma4_eq4),
        check("claim.eq7", |cx, _| congruence(cx, LEMMA3_OP, EQ7_RHS, &[l(-1)])),
        check("claim.eq8", |cx, _| congruence(cx, EQ8_LHS, EQ8_RHS, &[l(1)])),
        check("claim.tau", claim_tau),
        check("claim.tauprime", claim_tauprime),
        check("lemma6.central", lemma6_central),
        check("lemma6.p", lemma6_p),
        check("lemma6.q", lemma6_q),
    ];
    for (i, &(op, src, expected)) in LEMMA6_FORMULAS.iter().enumerate() {
        v.push(check(&format!("lemma6.f{:02}", i + 1), move |cx, _| {
            lemma6_formula(cx, i + 1, op, src, expected)
        }));
    }
    v.push(check("lemma6.closure", lemma6_closure));
    v.push(check("verma.dims", verma_dims));
    v.push(check("verma.rep", verma_rep));
    v
}

pub fn check_ids() -> Vec<String> {
    registry().into_iter().map(|c| c.id).collect()
}

fn execute(c: &Check, config: &CheckConfig) -> CheckReport {
    let mut cx = Ctx::new(config.table.clone());
    let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(&mut cx, config)));
    let status = match outcome {
        Ok(Ok(())) if cx.ok => Status::Pass,
        Ok(Ok(())) => Status::Fail,
        Ok(Err(e)) => {
            cx.note(format!("error: {e}"));
            Status::Error
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            cx.note(format!("panic: {msg}"));
            Status::Error
        }
    };
    CheckReport {
        id: c.id.clone(),
        status,
        details: cx.details,
        machine: cx.machine,
    }
}

pub fn run_check(id: &str) -> Result<CheckReport, UnknownCheck> {
    run_check_with(id, &CheckConfig::from_env())
}

pub fn run_check_with(id: &str, config: &CheckConfig) -> Result<CheckReport, UnknownCheck> {
    let reg = registry();
    let c = reg
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| UnknownCheck(id.to_string()))?;
    Ok(execute(c, config))
}

/// Runs the whole registry concurrently; reports come back in registry order.
pub fn run_all() -> Vec<CheckReport> {
    run_all_with(&CheckConfig::from_env())
}

pub fn run_all_with(config: &CheckConfig) -> Vec<CheckReport> {
    registry().par_iter().map(|c| execute(c, config)).collect()
}

// ---------------------------------------------------------------- helpers

fn congruence(cx: &mut Ctx, lhs: &str, rhs: &str, trailing: &[Generator]) -> Outcome {
    let (a, b) = (el(lhs), el(rhs));
    let names: Vec<String> = trailing.iter().map(|g| g.to_string()).collect();
    let order = OrderSpec::trailing(trailing.to_vec()).map_err(err)?;
    let (q, _) = reduce_trailing_with(&(a.clone() - b.clone()), &order, &*cx.table).map_err(err)?;
    cx.element("quotient of lhs - rhs", &q);
    cx.require(
        congruent_mod_with(&a, &b, trailing, &*cx.table),
        format!("{lhs} == {rhs} mod left ideal of {}", names.join(", ")),
    );
    Ok(())
}

/// For `f = (a + b t) / d` with `d` free of `t`, returns `(-a/b, a/d, b/d)`.
fn solve_linear(f: &Scalar, t: Var) -> Result<(Scalar, Scalar, Scalar), String> {
    if f.denominator().uses(t) || f.numerator().degree_in(t) > 1 {
        return Err(format!("relation {f} is not linear in {t}"));
    }
    let d = Scalar::from_poly(f.denominator().clone());
    let a = Scalar::from_poly(f.numerator().coefficient_in(t, 0)) / d.clone();
    let b = Scalar::from_poly(f.numerator().coefficient_in(t, 1)) / d;
    if b.is_zero() {
        return Err(format!("relation {f} does not involve {t}"));
    }
    Ok((-(a.clone() / b.clone()), a, b))
}

/// Rational roots of a polynomial of degree at most two in `v` whose
/// coefficients are constants.
fn rational_roots(p: &Poly, v: Var) -> Option<Vec<Rational>> {
    let c = |k| p.coefficient_in(v, k).as_constant();
    match p.degree_in(v) {
        1 => Some(vec![-(c(0)? / c(1)?)]),
        2 => {
            let (a, b, c0) = (c(2)?, c(1)?, c(0)?);
            let disc = &b * &b - rat(4, 1) * &a * &c0;
            if disc.is_negative() {
                return Some(Vec::new());
            }
            let sqrt = |n: &BigInt| {
                let r = n.sqrt();
                (&r * &r == *n).then_some(r)
            };
            let s = Rational::new(sqrt(disc.numer())?, sqrt(disc.denom())?);
            let two_a = rat(2, 1) * &a;
            let mut roots = vec![(-&b - &s) / &two_a, (-&b + &s) / &two_a];
            roots.sort();
            roots.dedup();
            Some(roots)
        }
        _ => None,
    }
}

fn roots_text(r: &[Rational]) -> String {
    let v: Vec<String> = r.iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

/// The single coefficient of `vec` on `word`, failing if other words occur.
fn coefficient_on(vec: &StateVector, word: &StateWord) -> Result<Scalar, String> {
    if vec.words().any(|w| w != word) {
        return Err(format!("relation {vec} is not a multiple of {word}"));
    }
    Ok(vec.coefficient(word))
}

// ----------------------------------------------------------------- algebra

type Lin = (BTreeMap<Generator, Rational>, Rational);

fn lin_of(b: &Bracket) -> Lin {
    let mut m = BTreeMap::new();
    if let Some((c, g)) = &b.term {
        m.insert(*g, c.clone());
    }
    (m, b.central.clone())
}

fn lin_bracket(table: &dyn BracketTable, x: &Lin, y: &Lin) -> Lin {
    let mut out: Lin = (BTreeMap::new(), Rational::zero());
    for (a, ca) in &x.0 {
        for (b, cb) in &y.0 {
            let br = table.bracket(*a, *b);
            let k = ca * cb;
            if let Some((c, g)) = &br.term {
                *out.0.entry(*g).or_insert_with(Rational::zero) += c * &k;
            }
            out.1 += &br.central * &k;
        }
    }
    out.0.retain(|_, c| !c.is_zero());
    out
}

fn lin_add(mut x: Lin, y: &Lin, k: &Rational) -> Lin {
    for (g, c) in &y.0 {
        *x.0.entry(*g).or_insert_with(Rational::zero) += c * k;
    }
    x.1 += &y.1 * k;
    x.0.retain(|_, c| !c.is_zero());
    x
}

/// Triples violating `[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]`.
pub fn jacobi_failures(table: &dyn BracketTable, bound: HalfInt) -> Vec<(Generator, Generator, Generator)> {
    let gens = generators_up_to(bound);
    let unit = |g: Generator| -> Lin { (BTreeMap::from([(g, Rational::one())]), Rational::zero()) };
    let mut bad = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let ab = lin_of(&table.bracket(a, b));
            for &c in &gens {
                let lhs = lin_bracket(table, &unit(a), &lin_of(&table.bracket(b, c)));
                let first = lin_bracket(table, &ab, &unit(c));
                let second = lin_bracket(table, &unit(b), &lin_of(&table.bracket(a, c)));
                let rhs = lin_add(first, &second, &koszul_sign(a, b));
                if lhs != rhs {
                    bad.push((a, b, c));
                }
            }
        }
    }
    bad
}

fn jacobi_sweep(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let bound = HalfInt::integer(6);
    let n = generators_up_to(bound).len();
    let bad = jacobi_failures(&*cx.table, bound);
    cx.note(format!("{} triples over the modes with |index| <= 6", n * n * n));
    cx.require(bad.is_empty(), format!("super-Jacobi holds ({} failures)", bad.len()));
    let verbatim = jacobi_failures(&NeveuSchwarz::verbatim(), bound);
    cx.note(format!(
        "with [L_m, L_-m] central term +(m^3-m)/12: {} failing triples, first {}",
        verbatim.len(),
        verbatim
            .first()
            .map(|(a, b, c)| format!("({a}, {b}, {c})"))
            .unwrap_or_default()
    ));
    Ok(())
}

/// The relations as printed, evaluated independently of the library table.
fn relations_as_written(a: Generator, b: Generator) -> (Option<(Rational, Generator)>, Rational) {
    let x = a.index().to_rational();
    let y = b.index().to_rational();
    let s = a.index() + b.index();
    let delta = s == HalfInt::ZERO;
    let zero = Rational::zero();
    let (coeff, central) = match (a.is_odd(), b.is_odd()) {
        (false, false) => (
            &y - &x,
            if delta { (&x * &x * &x - &x) / rat(12, 1) } else { zero },
        ),
        (false, true) => (&y - &x / rat(2, 1), zero),
        (true, false) => (-(&x - &y / rat(2, 1)), zero),
        (true, true) => (
            rat(2, 1),
            if delta { (rat(4, 1) * &x * &x - rat(1, 1)) / rat(12, 1) } else { zero },
        ),
    };
    let term = (!coeff.is_zero()).then(|| (coeff, Generator::e(s)));
    (term, central)
}

/// The 50 sampled pairs: the two displayed central values, then a fixed
/// stride through the modes with `|index| <= 4`.
pub fn bracket_sample() -> Vec<(Generator, Generator)> {
    let gens = generators_up_to(HalfInt::integer(4));
    let n = gens.len();
    let mut pairs = vec![(l(2), l(-2)), (g(3), g(-3))];
    let mut k = 11usize;
    while pairs.len() < 50 {
        let p = (gens[k % n], gens[(k / n) % n]);
        if !pairs.contains(&p) {
            pairs.push(p);
        }
        k = (k * 37 + 13) % (n * n);
    }
    pairs
}

fn bracket_table(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let table = cx.table.clone();
    let mut mismatches = 0;
    for (a, b) in bracket_sample() {
        let got = table.bracket(a, b);
        let (term, central) = relations_as_written(a, b);
        let want = Bracket { term, central };
        if got != want {
            mismatches += 1;
            cx.require(false, format!("[{a}, {b}] = {got}, relations as written give {want}"));
        }
        if (a, b) == (l(2), l(-2)) || (a, b) == (g(3), g(-3)) {
            cx.element(&format!("[{a}, {b}]"), &Element::from_bracket(&got));
        }
    }
    cx.require(mismatches == 0, format!("50 sampled brackets agree ({mismatches} mismatches)"));
    if mismatches > 0 {
        cx.note(
            "the even central term is taken as -(m^3-m)/12 because +(m^3-m)/12 \
             with [L_m, L_n] = (n-m) L_{m+n} violates super-Jacobi (see jacobi.sweep)",
        );
    }
    Ok(())
}

fn genset_principal(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let bound = HalfInt::integer(5);
    let c = adjoint_closure(&*cx.table, &[g(1), g(-1), g(3), g(-3)], bound);
    let all = generators_up_to(bound);
    let missing: Vec<String> = all
        .iter()
        .filter(|m| !c.generators.contains(m))
        .map(|m| m.to_string())
        .collect();
    cx.note(format!("closure has {} modes", c.generators.len()));
    cx.require(missing.is_empty(), format!("every mode with |index| <= 5 reached (missing: {missing:?})"));
    cx.require(c.central_reached, "central element reached");
    Ok(())
}

fn lemma1_commutators(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    for k in HalfInt::range_inclusive(half(3), HalfInt::integer(6)) {
        let e = Generator::e(k);
        let got = Element::bracket_with(&*cx.table, g(1), e);
        let want = if k.is_integer() {
            let c = k.to_rational() / rat(2, 1) - rat(1, 2);
            Element::generator(Generator::e(k + half(1))).scale(&Scalar::from_rational(&c))
        } else {
            Element::generator(Generator::e(k + half(1))).scale(&Scalar::from_int(2))
        };
        cx.require(got == want && !got.is_zero(), format!("[G[1/2], {e}] = {got}"));
    }
    let at_one = Element::bracket_with(&*cx.table, g(1), l(1));
    cx.require(at_one.is_zero(), "[G[1/2], L[1]] = 0, the excluded case");
    Ok(())
}

// ------------------------------------------------------------- rewriting

fn e_rules(space: &mut StateSpace, target: &StateWord, ks: impl Iterator<Item = HalfInt>) -> Result<(), String> {
    for k in ks {
        space
            .add_rule(Generator::e(k), target.clone(), StateVector::zero())
            .map_err(err)?;
    }
    Ok(())
}

const LEMMA1_BOUND: HalfInt = HalfInt::integer(6);

fn lemma1_induction(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    cx.note("bounded sweep: modes E_l with l <= 6, hypotheses E_l u = 0 up to l = 8");
    let top = LEMMA1_BOUND + half(1);
    for k in HalfInt::range_inclusive(half(4), LEMMA1_BOUND) {
        // u in V: G[1/2] u = 0 and E_l u = 0 for l >= k; w = G[3/2] u.
        let mut su = cx.space(StateSpace::new(Scalar::var(Var::Lam), Scalar::var(Var::Chat)));
        su.add_rule(g(1), StateWord::empty(), StateVector::zero()).map_err(err)?;
        e_rules(&mut su, &StateWord::empty(), HalfInt::range_inclusive(k, HalfInt::integer(8)))?;
        let w = StateVector::word(StateWord::new(vec![g(3)]));
        let mut high = true;
        for l in HalfInt::range_inclusive(k, top) {
            let r = act_element(&Element::generator(Generator::e(l)), &w, &su).map_err(err)?;
            high &= r.is_zero();
        }
        // w: L[-1] w = 0 and E_l w = 0 for l >= k; descend with [L[-1], E_l].
        let mut sw = cx.space(StateSpace::new(Scalar::var(Var::Lam) + Scalar::from_rational(&rat(3, 2)), Scalar::var(Var::Chat)));
        sw.add_rule(l(-1), StateWord::empty(), StateVector::zero()).map_err(err)?;
        e_rules(&mut sw, &StateWord::empty(), HalfInt::range_inclusive(k, top))?;
        let mut low = true;
        let mut l_cur = k - half(1);
        while l_cur >= half(1) {
            let upper = Generator::e(l_cur + half(2));
            let br = cx.table.bracket(l(-1), upper);
            let nonzero = matches!(&br.term, Some((c, m)) if !c.is_zero() && *m == Generator::e(l_cur));
            let comm = Element::generator(l(-1)) * Element::generator(upper)
                - Element::generator(upper) * Element::generator(l(-1));
            let r = act_element(&comm, &StateVector::word(StateWord::empty()), &sw).map_err(err)?;
            low &= nonzero && r.is_zero();
            sw.add_rule(Generator::e(l_cur), StateWord::empty(), StateVector::zero())
                .map_err(err)?;
            l_cur = l_cur - half(1);
        }
        let mut all = true;
        for l in HalfInt::range_inclusive(half(1), LEMMA1_BOUND) {
            let r = act_element(&Element::generator(Generator::e(l)), &StateVector::word(StateWord::empty()), &sw)
                .map_err(err)?;
            all &= r.is_zero();
        }
        cx.require(
            high && low && all,
            format!("k = {k}: E_l G[3/2] u = 0 for k <= l <= {top}, then E_l w = 0 for 1/2 <= l <= 6"),
        );
    }
    Ok(())
}

fn lemma3_congruence(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let op = el(LEMMA3_OP);
    let order = OrderSpec::trailing(vec![l(-1), g(-1)]).map_err(err)?;
    let (q, _) = reduce_trailing_with(&op, &order, &*cx.table).map_err(err)?;
    cx.element("quotient mod U*G[-1/2]", &q);
    cx.require(q == el("2*L[0]^2 - 3*L[0]"), format!("quotient is {q}"));
    let quad = q
        .terms()
        .try_fold(Scalar::zero(), |acc, (m, c)| {
            let ok = m.letters().all(|x| x.is_l0());
            ok.then(|| acc + c.clone() * (Scalar::var(Var::Mu) + Scalar::one()).pow(m.len()))
        })
        .ok_or("quotient is not a polynomial in L[0]")?;
    cx.scalar("quadratic at L[0] = mu + 1", &quad);
    let roots = rational_roots(quad.numerator(), Var::Mu).ok_or("no rational roots")?;
    cx.require(
        roots == vec![rat(-1, 1), rat(1, 2)],
        format!("roots of 2(mu+1)^2 - 3(mu+1) are {}", roots_text(&roots)),
    );
    Ok(())
}

fn lemma4_eq2(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let mut s = cx.space(StateSpace::new(Scalar::zero(), Scalar::var(Var::Chat)));
    s.add_rule(g(1), StateWord::empty(), StateVector::zero()).map_err(err)?;
    let r = act_element(&el("G[1/2]*G[-1/2]"), &StateVector::word(StateWord::empty()), &s).map_err(err)?;
    cx.state("G[1/2]*G[-1/2] v", &r);
    cx.require(r.is_zero(), "G[1/2] G[-1/2] v = 2 L[0] v - G[-1/2] G[1/2] v = 0 at weight 0");
    Ok(())
}

fn lemma4_eq3(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let mut s = cx.space(StateSpace::new(Scalar::zero(), Scalar::var(Var::Chat)));
    s.add_rule(g(1), StateWord::empty(), StateVector::zero()).map_err(err)?;
    s.add_rule(g(-1), StateWord::empty(), StateVector::zero()).map_err(err)?;
    let r = act_element(&el("G[1/2]*G[-3/2]"), &StateVector::word(StateWord::empty()), &s).map_err(err)?;
    cx.state("G[1/2]*G[-3/2] x", &r);
    cx.require(r.is_zero(), "G[1/2] G[-3/2] x = 2 L[-1] x - G[-3/2] G[1/2] x = 0");
    Ok(())
}

const LEMMA4_TOP: HalfInt = HalfInt::from_doubled(15);

fn lemma4_eq4(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    // h in H: G[1/2] h = 0 and L[2] h = 0. Close under brackets of known
    // annihilators up to index 15/2.
    let v = StateWord::empty();
    let mut s = cx.space(StateSpace::new(Scalar::from_rational(&rat(-3, 2)), Scalar::var(Var::Chat)));
    let mut known = vec![g(1), l(2)];
    for &m in &known {
        s.add_rule(m, v.clone(), StateVector::zero()).map_err(err)?;
    }
    loop {
        let mut found = None;
        'search: for &a in &known {
            for &b in &known {
                let br = cx.table.bracket(a, b);
                if let Some((_, t)) = &br.term {
                    if br.central.is_zero() && t.index() > HalfInt::ZERO && t.index() <= LEMMA4_TOP && !known.contains(t) {
                        found = Some((a, b, *t));
                        break 'search;
                    }
                }
            }
        }
        let Some((a, b, t)) = found else { break };
        let sign = Scalar::from_rational(&koszul_sign(a, b));
        let comm = Element::generator(a) * Element::generator(b)
            - (Element::generator(b) * Element::generator(a)).scale(&sign);
        let r = act_element(&comm, &StateVector::word(v.clone()), &s).map_err(err)?;
        if !r.is_zero() {
            return Err(format!("[{a}, {b}] h = {r} is not zero"));
        }
        s.add_rule(t, v.clone(), StateVector::zero()).map_err(err)?;
        known.push(t);
    }
    known.sort();
    let expected: Vec<Generator> = HalfInt::range_inclusive(half(1), LEMMA4_TOP)
        .filter(|k| *k != half(3))
        .map(Generator::e)
        .collect();
    let names: Vec<String> = known.iter().map(|m| m.to_string()).collect();
    cx.require(
        known == expected,
        format!("E_k h = 0 derived exactly for k in {{1/2, 1, 2, 5/2, ..., 15/2}}: {}", names.join(" ")),
    );
    let x = StateVector::word(StateWord::new(vec![g(3)]));
    for k in HalfInt::range_inclusive(HalfInt::integer(2), HalfInt::integer(6)) {
        let r = act_element(&Element::generator(Generator::e(k)), &x, &s).map_err(err)?;
        cx.require(r.is_zero(), format!("{} G[3/2] h = 0", Generator::e(k)));
    }
    Ok(())
}

/// Solves the linear relation that an identity `lhs == rhs mod U*trailing`
/// imposes on `source` in `space` for the indeterminate `t`.
struct Relation<'a> {
    space: &'a StateSpace,
    source: &'a str,
    lhs: &'a str,
    rhs: &'a str,
    trailing: &'a [Generator],
    unknown: Var,
}

impl Relation<'_> {
    fn solve(&self, cx: &mut Ctx) -> Result<(Scalar, Scalar, Scalar), String> {
        let (lhs, rhs) = (el(self.lhs), el(self.rhs));
        cx.require(congruent_mod_with(&lhs, &rhs, self.trailing, &*cx.table), format!("{} == {} mod the left ideal", self.lhs, self.rhs));
        let x = self.space.vector(self.source).map_err(err)?;
        let lx = act_element(&lhs, &x, self.space).map_err(err)?;
        cx.require(lx.is_zero(), format!("({}) {} = 0", self.lhs, self.source));
        let rx = act_element(&rhs, &x, self.space).map_err(err)?;
        let relation = rx - lx;
        cx.state(&format!("relation on {}", self.source), &relation);
        let word = self.space.state(self.source).map_err(err)?;
        let f = coefficient_on(&relation, word)?;
        solve_linear(&f, self.unknown)
    }
}

fn claim_common(cx: &mut Ctx, space: &StateSpace, source: &str, op: &str, lhs: &str, rhs: &str, trailing: &[Generator], unknown: Var, closed: &str) -> Outcome {
    let x = space.vector(source).map_err(err)?;
    let ax = act_element(&el(op), &x, space).map_err(err)?;
    cx.require(ax.is_zero(), format!("({op}) {source} = 0"));
    let rel = Relation {
        space,
        source,
        lhs,
        rhs,
        trailing,
        unknown,
    };
    let (value, constant, slope) = rel.solve(cx)?;
    cx.scalar(unknown.name(), &value);
    cx.require(value == sc(closed), format!("{} = {value}", unknown.name()));
    // The coefficient of the unknown vanishes only where the constant does not.
    let roots = rational_roots(slope.numerator(), Var::Mu).ok_or("coefficient has no rational roots")?;
    for r in &roots {
        let at = constant
            .substitute_one(Var::Mu, &Scalar::from_rational(r))
            .map_err(err)?;
        cx.require(
            !at.is_zero(),
            format!("mu = {r}: coefficient of {} vanishes, relation becomes ({at}) {source} = 0", unknown.name()),
        );
    }
    cx.note(format!("degenerate values excluded: mu in {}", roots_text(&roots)));
    Ok(())
}

fn claim_tau(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let space = cx.space(presets::n_rules());
    claim_common(cx, &space, "x", LEMMA2_I_OP, LEMMA3_OP, EQ7_RHS, &[l(-1)], Var::Tau, TAU)
}

fn claim_tauprime(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let space = cx.space(presets::w_rules());
    claim_common(cx, &space, "xp", LEMMA2_II_OP, EQ8_LHS, EQ8_RHS, &[l(1)], Var::Taup, TAUP)
}

fn lemma6_central(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    congruence(cx, CENTRAL_LHS, CENTRAL_RHS, &[l(-1)])?;
    congruence(cx, MIRROR_LHS, MIRROR_RHS, &[l(1)])
}

fn lemma6_constant(cx: &mut Ctx, space: &StateSpace, source: &str, lhs: &str, rhs: &str, trailing: &[Generator], unknown: Var, tau: Var, closed: &str) -> Outcome {
    let rel = Relation {
        space,
        source,
        lhs,
        rhs,
        trailing,
        unknown,
    };
    let (value, _, _) = rel.solve(cx)?;
    cx.scalar(unknown.name(), &value);
    let expected = Scalar::var(tau) + sc("2/3*chat");
    cx.require(
        (value.clone() - expected).is_zero(),
        format!("{} - {} - 2/3*chat normalizes to 0", unknown.name(), tau.name()),
    );
    let closed_form = value.substitute_one(tau, &sc(closed)).map_err(err)?;
    cx.scalar(&format!("{} with {} substituted", unknown.name(), tau.name()), &closed_form);
    Ok(())
}

fn lemma6_p(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let space = cx.space(presets::n_rules());
    lemma6_constant(cx, &space, "x", CENTRAL_LHS, CENTRAL_RHS, &[l(-1)], Var::P, Var::Tau, TAU)
}

fn lemma6_q(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let space = cx.space(presets::w_rules());
    lemma6_constant(cx, &space, "xp", MIRROR_LHS, MIRROR_RHS, &[l(1)], Var::Q, Var::Taup, TAUP)
}

fn lemma6_formula(cx: &mut Ctx, n: usize, op: &str, source: &str, expected: &str) -> Outcome {
    let space = cx.space(presets::n_rules());
    let operator = el(op);
    let want = state(&space, expected);
    let src = space.vector(source).map_err(err)?;
    let got = act_element(&operator, &src, &space).map_err(err)?;
    cx.state(&format!("{op} {source}"), &got);
    cx.require(got == want, format!("{op} {source} = {}", space.render(&got)));
    if n == 6 {
        let z = space.state("z").map_err(err)?;
        cx.require(space.rule(g(1), z).is_none(), "derived by commutation; no rule is keyed on (G[1/2], z)");
    }
    if n == 8 {
        cx.note("G[3/2] z = q y is an axiom of the rule table");
        let bad = cx.space(presets::n_rules_corrupted());
        let ctrl = act_element(&operator, &bad.vector("z").map_err(err)?, &bad);
        cx.require(
            matches!(ctrl, Err(RewriteError::WeightMismatch { .. })),
            "control: the table with G[3/2] z -> q x is rejected by degree bookkeeping",
        );
    }
    Ok(())
}

const CLOSURE_SEEDS: [&str; 4] = ["x", "y", "z", "h"];

fn closure_gens() -> [Generator; 4] {
    [g(1), g(-1), g(3), g(-3)]
}

fn closure_summary(cx: &mut Ctx, space: &StateSpace, depth: usize, label: &str) -> Result<bool, String> {
    let seeds: Vec<StateWord> = CLOSURE_SEEDS
        .iter()
        .map(|n| space.state(n).cloned())
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let (report, passed) = match check_representation(space, &closure_gens(), &seeds, depth) {
        Ok(r) => (r, true),
        Err(RewriteError::InconsistentTable(r)) => (*r, false),
        Err(e) => return Err(e.to_string()),
    };
    cx.note(format!("{label}: {}", report.to_string().replace('\n', "; ")));
    for w in report.failures.iter().take(3) {
        cx.note(format!("{label}: witness {w}"));
    }
    Ok(passed)
}

fn lemma6_closure(cx: &mut Ctx, config: &CheckConfig) -> Outcome {
    let depth = config.closure_depth;
    let space = cx.space(presets::n_rules());
    let seeds: Vec<StateWord> = CLOSURE_SEEDS
        .iter()
        .map(|n| space.state(n).cloned())
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let result = check_representation(&space, &closure_gens(), &seeds, depth);
    let report = match &result {
        Ok(r) => r.clone(),
        Err(RewriteError::InconsistentTable(r)) => (**r).clone(),
        Err(e) => return Err(e.to_string()),
    };
    cx.note(report.to_string().replace('\n', "; "));
    let base = space.base_weight().clone();
    let lattice = report.states.values().flatten().all(|w| {
        let offset = space.weight(w) - base.clone();
        offset
            .as_constant()
            .is_some_and(|q| (q * rat(2, 1)).is_integer())
    });
    cx.require(lattice, "every reachable weight lies in mu - 1/2 + (1/2)Z");
    cx.require(
        report.failures.is_empty(),
        format!("bracket relations hold on all reachable states at depth {depth} ({} failures)", report.failures.len()),
    );
    for w in report.failures.iter().take(5) {
        cx.note(format!("witness: {w}"));
    }
    if !report.failures.is_empty() {
        // On y, {G[1/2], G[-1/2]} = 2 L[0] forces tau = 2 mu + 1.
        let y = space.vector("y").map_err(err)?;
        let lhs = act_element(&el("G[1/2]*G[-1/2] + G[-1/2]*G[1/2]"), &y, &space).map_err(err)?;
        let rhs = act_element(&el("2*L[0]"), &y, &space).map_err(err)?;
        cx.note(format!(
            "on y: (G[1/2] G[-1/2] + G[-1/2] G[1/2]) y = {}, 2 L[0] y = {}",
            space.render(&lhs),
            space.render(&rhs)
        ));
        let at_zero = space
            .map_scalars(|s| {
                let b = BTreeMap::from([
                    (Var::Mu, Scalar::zero()),
                    (Var::Tau, Scalar::one()),
                    (Var::P, sc("1 + 2/3*chat")),
                    (Var::Q, sc("-1 + 2/3*chat")),
                ]);
                s.substitute(&b)
            })
            .map_err(err)?;
        let ok = closure_summary(cx, &at_zero, depth.min(3), "specialized to mu = 0")?;
        cx.note(format!("specialized to mu = 0: {}", if ok { "consistent" } else { "still inconsistent" }));
    }
    Ok(())
}

// ------------------------------------------------------------------ verma

fn verma_dims(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let enumerated: Vec<u64> = (0..=8).map(|d| verma::dim(half(d)) as u64).collect();
    let series = verma::q_series_dims(8);
    cx.note(format!("enumeration: {enumerated:?}"));
    cx.note(format!("series:      {series:?}"));
    cx.require(enumerated == series, "enumeration agrees with the q-series through q^4");
    cx.require(enumerated == [1, 1, 1, 2, 3, 4, 5, 7, 10], "dims are [1, 1, 1, 2, 3, 4, 5, 7, 10]");
    Ok(())
}

fn verma_rep(cx: &mut Ctx, _: &CheckConfig) -> Outcome {
    let (h, c) = (Scalar::var(Var::H), Scalar::var(Var::Chat));
    let m = VermaModule::with_table(h.clone(), c.clone(), cx.table.clone());
    match m.rep_check(HalfInt::integer(3), half(5)) {
        Ok(r) => {
            cx.require(true, format!("{} checks on {} basis vectors, symbolic h and chat", r.checks, r.vectors));
        }
        Err(e) => {
            cx.require(false, e);
        }
    }
    let bad = NeveuSchwarz {
        odd_const: rat(1, 12),
        ..NeveuSchwarz::default()
    };
    let control = VermaModule::with_table(h, c, Arc::new(bad));
    let r = control.rep_check(HalfInt::integer(3), half(5));
    cx.require(
        matches!(r, Err(VermaError::RepresentationFailure(_))),
        "control: central term (4r^2+1)/12 is rejected",
    );
    if let Err(e) = r {
        cx.note(e.to_string());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique_and_complete() {
        let ids = check_ids();
        assert_eq!(ids.len(), 45);
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        assert!(ids.contains(&"lemma6.f24".to_string()));
        assert_eq!(run_check("nope").unwrap_err(), UnknownCheck("nope".into()));
    }

    #[test]
    fn linear_solver() {
        let f = sc("2*(mu+1)^2 - 3*(mu+1) - (mu+1)*tau + 2*tau");
        let (t, _, slope) = solve_linear(&f, Var::Tau).unwrap();
        assert_eq!(t, sc(TAU));
        assert_eq!(slope, sc("1 - mu"));
        assert!(solve_linear(&sc("tau^2"), Var::Tau).is_err());
    }

    #[test]
    fn roots() {
        let p = sc("2*mu^2 + mu - 1");
        assert_eq!(rational_roots(p.numerator(), Var::Mu), Some(vec![rat(-1, 1), rat(1, 2)]));
        assert_eq!(rational_roots(sc("mu^2 - 2").numerator(), Var::Mu), None);
    }

    #[test]
    fn sample_contains_displayed_entries() {
        let s = bracket_sample();
        assert_eq!(s.len(), 50);
        assert_eq!(s[0], (l(2), l(-2)));
    }
}
