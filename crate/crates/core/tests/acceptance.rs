//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nscas::algebra::{Generator, HalfInt};
use nscas::cli::checks::{run_check_with, CheckConfig};
use nscas::cli::parser::{parse_element, parse_scalar};
use nscas::cli::report::{CheckReport, ValueKind};
use nscas::rewrite::{act_element, presets, RewriteError};
use nscas::scalar::{rat, Field, Rational, Var};
use nscas::{bracket, Element, Scalar};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

struct Criterion {
    n: usize,
    name: &'static str,
    ok: bool,
    note: String,
}

fn report(id: &str) -> CheckReport {
    run_check_with(id, &CheckConfig::default()).expect("registered check")
}

fn all_pass(ids: &[&str]) -> (bool, String) {
    let mut bad = Vec::new();
    for id in ids {
        let r = report(id);
        if !r.passed() {
            bad.push(format!("{id}: {}", r.status));
        }
    }
    let note = if bad.is_empty() {
        format!("{} checks pass", ids.len())
    } else {
        bad.join("; ")
    };
    (bad.is_empty(), note)
}

fn machine_scalar(r: &CheckReport, label: &str) -> Option<Scalar> {
    r.machine
        .iter()
        .find(|m| m.label == label && m.kind == ValueKind::Scalar)
        .and_then(|m| parse_scalar(&m.value).ok())
}

/// `[a, b]` read off the defining relations as printed.
fn printed_bracket(a: Generator, b: Generator) -> Element {
    let (x, y) = (a.index().to_rational(), b.index().to_rational());
    let sum = a.index() + b.index();
    let chat = Element::scalar(Scalar::var(Var::Chat));
    let k = |q: Rational| Scalar::from_rational(&q);
    let e = |s: HalfInt| Element::generator(Generator::e(s));
    let delta = |q: Rational| if sum == HalfInt::ZERO { chat.scale(&k(q)) } else { Element::zero() };
    match (a.is_odd(), b.is_odd()) {
        (false, false) => e(sum).scale(&k(&y - &x)) + delta((&x * &x * &x - &x) / rat(12, 1)),
        (false, true) => e(sum).scale(&k(&y - &x / rat(2, 1))),
        (true, false) => e(sum).scale(&k(&y / rat(2, 1) - &x)),
        (true, true) => e(sum).scale(&k(rat(2, 1))) + delta((rat(4, 1) * &x * &x - rat(1, 1)) / rat(12, 1)),
    }
}

/// Distinct half-odd parts and unrestricted integer parts, counted directly.
fn count_partitions(doubled: i64) -> u64 {
    fn go(rem: i64, part: i64) -> u64 {
        if rem == 0 {
            return 1;
        }
        if part == 0 {
            return 0;
        }
        let mut total = go(rem, part - 1);
        if part % 2 == 1 {
            if part <= rem {
                total += go(rem - part, part - 1);
            }
        } else {
            let mut r = rem - part;
            while r >= 0 {
                total += go(r, part - 1);
                r -= part;
            }
        }
        total
    }
    go(doubled, doubled)
}

/// Coefficients of prod (1 + q^{n-1/2}) / (1 - q^n) in powers of q^{1/2}.
fn series(max_doubled: usize) -> Vec<u64> {
    let mut c = vec![0u64; max_doubled + 1];
    c[0] = 1;
    for part in 1..=max_doubled {
        if part % 2 == 1 {
            for i in (part..=max_doubled).rev() {
                c[i] += c[i - part];
            }
        } else {
            for i in part..=max_doubled {
                c[i] += c[i - part];
            }
        }
    }
    c
}

fn arb_element() -> impl Strategy<Value = Element> {
    let gen = (any::<bool>(), -3i64..=3)
        .prop_map(|(odd, k)| if odd { Generator::g(2 * k + 1) } else { Generator::l(k) });
    let coeff = prop_oneof![
        (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Scalar::from_rational(&rat(n, d))),
        (-3i64..=3, 1i64..=3).prop_map(|(n, d)| {
            parse_scalar(&format!("({n}*mu + chat)/({d}*tau + 1)")).unwrap()
        }),
    ];
    let term = (coeff, prop::collection::vec(gen, 0..=4));
    prop::collection::vec(term, 0..=5).prop_map(|ts| {
        ts.into_iter()
            .fold(Element::zero(), |acc, (c, w)| acc + Element::word(&w).scale(&c))
    })
}

fn criteria() -> Vec<Criterion> {
    let mut out = Vec::new();
    let mut push = |n, name, ok: bool, note: String| out.push(Criterion { n, name, ok, note });

    let start = Instant::now();
    let jac = report("jacobi.sweep");
    let took = start.elapsed();
    push(1, "jacobi.sweep", jac.passed() && took < Duration::from_secs(10), format!("{} in {took:.2?}", jac.status));

    let (l2, g3) = (Generator::l(2), Generator::g(3));
    let displayed_l = Element::from_bracket(&bracket(l2, Generator::l(-2))) == parse_element("-4*L[0] + 1/2*chat").unwrap();
    let displayed_g = Element::from_bracket(&bracket(g3, Generator::g(-3))) == parse_element("2*L[0] + 2/3*chat").unwrap();
    let agree = displayed_l && displayed_g && printed_bracket(l2, Generator::l(-2)) == parse_element("-4*L[0] + 1/2*chat").unwrap();
    let table = report("bracket.table");
    push(
        2,
        "bracket.table",
        agree && table.passed(),
        format!(
            "[L[2], L[-2]] = {}, [G[3/2], G[-3/2]] = {}, check {}",
            bracket(l2, Generator::l(-2)),
            bracket(g3, Generator::g(-3)),
            table.status
        ),
    );

    let (ok, note) = all_pass(&["lemma2.i", "lemma2.ii"]);
    push(3, "lemma2 congruences", ok, note);

    let l3 = report("lemma3.congruence");
    let quotient = l3.machine.iter().any(|m| m.value == "2*L[0]^2 - 3*L[0]");
    push(4, "lemma3.congruence", l3.passed() && quotient, format!("{}", l3.status));

    let (ok, note) = all_pass(&["claim.eq7", "claim.eq8"]);
    push(5, "claim.eq7 / claim.eq8", ok, note);

    let tau = report("claim.tau");
    let taup = report("claim.tauprime");
    let tau_ok = machine_scalar(&tau, "tau") == Some(parse_scalar("(mu+1)*(2*mu-1)/(mu-1)").unwrap());
    let taup_ok = machine_scalar(&taup, "taup") == Some(parse_scalar("(mu-1)*(2*mu+1)/(mu+1)").unwrap());
    push(
        6,
        "claim.tau / claim.tauprime",
        tau.passed() && taup.passed() && tau_ok && taup_ok,
        format!("{} / {}", tau.status, taup.status),
    );

    let (ok, note) = all_pass(&["lemma6.central", "lemma6.p", "lemma6.q"]);
    let p = machine_scalar(&report("lemma6.p"), "p");
    let q = machine_scalar(&report("lemma6.q"), "q");
    let p_ok = p.is_some_and(|p| (p - parse_scalar("tau + 2/3*chat").unwrap()).is_zero());
    let q_ok = q.is_some_and(|q| (q - parse_scalar("taup + 2/3*chat").unwrap()).is_zero());
    push(7, "lemma6.central / p / q", ok && p_ok && q_ok, note);

    let ids: Vec<String> = (1..=24).map(|i| format!("lemma6.f{i:02}")).collect();
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let (ok, note) = all_pass(&refs);
    let bad = presets::n_rules_corrupted();
    let control = act_element(&parse_element("G[3/2]").unwrap(), &bad.vector("z").unwrap(), &bad);
    let rejected = matches!(control, Err(RewriteError::WeightMismatch { .. }));
    push(8, "lemma6.f01-f24", ok && rejected, format!("{note}; corrupted rule rejected: {rejected}"));

    let closure = report("lemma6.closure");
    let summary = closure.details.first().cloned().unwrap_or_default();
    push(9, "lemma6.closure", closure.passed(), format!("{}: {}", closure.status, summary.split(';').next().unwrap_or("")));

    let want = [1u64, 1, 1, 2, 3, 4, 5, 7, 10];
    let counted: Vec<u64> = (0..=8).map(count_partitions).collect();
    let expanded = series(8);
    let dims = report("verma.dims");
    push(
        10,
        "verma.dims",
        dims.passed() && counted == want && expanded == want && nscas::verma::q_series_dims(8) == want,
        format!("{counted:?}"),
    );

    let rep = report("verma.rep");
    push(11, "verma.rep", rep.passed(), format!("{}", rep.status));

    let gs = report("genset.principal");
    push(12, "genset.principal", gs.passed(), format!("{}", gs.status));

    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let trip = runner.run(&arb_element(), |x| {
        let back = parse_element(&x.to_string()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(back, x);
        Ok(())
    });
    push(
        13,
        "parser round-trip",
        trip.is_ok(),
        match trip {
            Ok(()) => "1000 elements".to_string(),
            Err(e) => e.to_string(),
        },
    );
    out
}

fn main() -> ExitCode {
    let start = Instant::now();
    let results = criteria();
    for c in &results {
        println!(
            "criterion {:>2} {:<28} {}  ({})",
            c.n,
            c.name,
            if c.ok { "PASS" } else { "FAIL" },
            c.note
        );
    }
    let passed = results.iter().filter(|c| c.ok).count();
    println!("{passed}/{} criteria passed in {:.2?}", results.len(), start.elapsed());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
