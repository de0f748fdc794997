use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{koszul_sign, Generator, HalfInt};
use crate::scalar::CentralCharge;

use super::{Evaluator, RewriteError, StateSpace, StateVector, StateWord};

/// One violated instance of `a(b s) - (-1)^{|a||b|} b(a s) = [a, b] s`, or an
/// evaluation error met while exploring.
#[derive(Debug, Clone)]
pub enum Witness {
    Bracket {
        a: Generator,
        b: Generator,
        state: StateWord,
        lhs: String,
        rhs: String,
    },
    Evaluation(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Bracket { a, b, state, lhs, rhs } => {
                write!(f, "[{a}, {b}] on {state}: action gives {lhs}, bracket gives {rhs}")
            }
            Witness::Evaluation(e) => f.write_str(e),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RepresentationReport {
    pub depth: usize,
    /// Reachable words grouped by degree offset from the cyclic vector.
    pub states: BTreeMap<HalfInt, Vec<StateWord>>,
    pub pairs_checked: usize,
    pub failures: Vec<Witness>,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn dimensions(&self) -> BTreeMap<HalfInt, usize> {
        self.states.iter().map(|(d, ws)| (*d, ws.len())).collect()
    }

    pub fn reachable(&self) -> usize {
        self.states.values().map(Vec::len).sum()
    }
}

impl fmt::Display for RepresentationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "depth {}: {} reachable states, {} pair checks, {} failures",
            self.depth,
            self.reachable(),
            self.pairs_checked,
            self.failures.len()
        )?;
        let dims: Vec<String> = self
            .dimensions()
            .iter()
            .map(|(d, n)| format!("{d}:{n}"))
            .collect();
        write!(f, "states per degree offset: {}", dims.join(" "))
    }
}

/// Explores all words of length `<= depth` over `gens` applied to `seeds`, then
/// checks the bracket relation for every ordered pair of `gens` on every state
/// reached. Distinct words are treated as linearly independent.
pub fn check_representation<K: CentralCharge>(
    space: &StateSpace<K>,
    gens: &[Generator],
    seeds: &[StateWord],
    depth: usize,
) -> Result<RepresentationReport, RewriteError> {
    let mut report = RepresentationReport {
        depth,
        states: BTreeMap::new(),
        pairs_checked: 0,
        failures: Vec::new(),
    };
    if let Err(e) = space.validate() {
        report.failures.push(Witness::Evaluation(e.to_string()));
        return Err(RewriteError::InconsistentTable(Box::new(report)));
    }
    let mut ev = Evaluator::new(space);
    let mut seen: BTreeSet<StateWord> = seeds.iter().cloned().collect();
    let mut frontier: Vec<StateWord> = seen.iter().cloned().collect();
    for _ in 0..depth {
        let mut next = Vec::new();
        for s in &frontier {
            for &g in gens {
                match ev.act_generator(g, s) {
                    Ok(r) => {
                        for w in r.words() {
                            if seen.insert(w.clone()) {
                                next.push(w.clone());
                            }
                        }
                    }
                    Err(e) => report.failures.push(Witness::Evaluation(e.to_string())),
                }
            }
        }
        frontier = next;
    }
    for s in &seen {
        report.states.entry(s.degree()).or_default().push(s.clone());
    }
    for s in &seen {
        let sv = StateVector::word(s.clone());
        for &a in gens {
            for &b in gens {
                report.pairs_checked += 1;
                match pair_defect(&mut ev, a, b, &sv) {
                    Ok(None) => {}
                    Ok(Some((lhs, rhs))) => report.failures.push(Witness::Bracket {
                        a,
                        b,
                        state: s.clone(),
                        lhs: space.render(&lhs),
                        rhs: space.render(&rhs),
                    }),
                    Err(e) => report.failures.push(Witness::Evaluation(e.to_string())),
                }
            }
        }
    }
    if report.passed() {
        Ok(report)
    } else {
        Err(RewriteError::InconsistentTable(Box::new(report)))
    }
}

type Defect<K> = Option<(StateVector<K>, StateVector<K>)>;

fn pair_defect<K: CentralCharge>(
    ev: &mut Evaluator<'_, K>,
    a: Generator,
    b: Generator,
    s: &StateVector<K>,
) -> Result<Defect<K>, RewriteError> {
    let sign = K::from_rational(&koszul_sign(a, b));
    let ab = {
        let t = ev.act_vector(b, s)?;
        ev.act_vector(a, &t)?
    };
    let ba = {
        let t = ev.act_vector(a, s)?;
        ev.act_vector(b, &t)?
    };
    let lhs = ab - ba.scale(&sign);
    let br = ev.space().table().bracket(a, b);
    let mut rhs = StateVector::zero();
    if let Some((c, g)) = &br.term {
        let t = ev.act_vector(*g, s)?;
        rhs.add_scaled(&t, &K::from_rational(c));
    }
    if !num_traits::Zero::is_zero(&br.central) {
        let k = K::from_rational(&br.central) * ev.space().central().clone();
        rhs.add_scaled(s, &k);
    }
    if (lhs.clone() - rhs.clone()).is_zero() {
        Ok(None)
    } else {
        Ok(Some((lhs, rhs)))
    }
}
