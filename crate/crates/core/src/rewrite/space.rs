use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{BracketTable, Generator, NeveuSchwarz};
use crate::enveloping::OrderSpec;
use crate::scalar::{CentralCharge, Field};

use super::{RewriteError, StateVector, StateWord};

/// `head · (target · v) = replacement`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule<K> {
    pub head: Generator,
    pub target: StateWord,
    pub replacement: StateVector<K>,
}

impl<K: Field> Rule<K> {
    /// Degree-consistency: every replacement word has the degree of
    /// `head · target`.
    pub fn weight_consistent(&self) -> bool {
        let d = self.target.degree() + self.head.weight_degree();
        self.replacement.words().all(|w| w.degree() == d)
    }
}

/// A cyclic vector `v` with its `L_0` eigenvalue, the value of `c`, the word
/// order used to decide when a mode may simply be prepended, and a table of
/// oriented rules keyed by `(head, target)`.
#[derive(Clone)]
pub struct StateSpace<K> {
    base_weight: K,
    central: K,
    order: OrderSpec,
    table: Arc<dyn BracketTable>,
    rules: Vec<Rule<K>>,
    index: HashMap<(Generator, StateWord), usize>,
    names: BTreeMap<String, StateWord>,
}

impl<K: CentralCharge> StateSpace<K> {
    /// A space with no rules, the ascending word order, the default bracket
    /// table, and `v` named `"v"`.
    pub fn new(base_weight: K, central: K) -> Self {
        let mut names = BTreeMap::new();
        names.insert("v".to_string(), StateWord::empty());
        StateSpace {
            base_weight,
            central,
            order: OrderSpec::ascending(),
            table: Arc::new(NeveuSchwarz::default()),
            rules: Vec::new(),
            index: HashMap::new(),
            names,
        }
    }

    pub fn with_order(mut self, order: OrderSpec) -> Self {
        self.order = order;
        self
    }

    pub fn with_table(mut self, table: Arc<dyn BracketTable>) -> Self {
        self.table = table;
        self
    }

    pub fn set_base_weight(&mut self, w: K) {
        self.base_weight = w;
    }

    pub fn set_central(&mut self, c: K) {
        self.central = c;
    }

    pub fn set_order(&mut self, order: OrderSpec) {
        self.order = order;
    }

    pub fn base_weight(&self) -> &K {
        &self.base_weight
    }

    pub fn central(&self) -> &K {
        &self.central
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn table(&self) -> &dyn BracketTable {
        self.table.as_ref()
    }

    pub fn rules(&self) -> &[Rule<K>] {
        &self.rules
    }

    pub fn rule(&self, head: Generator, target: &StateWord) -> Option<&StateVector<K>> {
        self.index
            .get(&(head, target.clone()))
            .map(|&i| &self.rules[i].replacement)
    }

    /// Adds a rule. Replacement words must be strictly shorter than
    /// `head · target`.
    pub fn add_rule(
        &mut self,
        head: Generator,
        target: StateWord,
        replacement: StateVector<K>,
    ) -> Result<&mut Self, RewriteError> {
        let key = (head, target.clone());
        if self.index.contains_key(&key) {
            return Err(RewriteError::DuplicateRule { head, target });
        }
        if let Some(w) = replacement.words().find(|w| w.len() > target.len()) {
            return Err(RewriteError::RuleNotDecreasing {
                head,
                target,
                word: w.clone(),
            });
        }
        self.index.insert(key, self.rules.len());
        self.rules.push(Rule {
            head,
            target,
            replacement,
        });
        Ok(self)
    }

    /// Adds a rule with a named target, e.g. `rule(G[1/2], "y", tau * x)`.
    pub fn add_named_rule(
        &mut self,
        head: Generator,
        target: &str,
        replacement: StateVector<K>,
    ) -> Result<&mut Self, RewriteError> {
        let t = self.state(target)?.clone();
        self.add_rule(head, t, replacement)
    }

    pub fn define_state(&mut self, name: &str, word: StateWord) -> Result<&mut Self, RewriteError> {
        if self.names.contains_key(name) {
            return Err(RewriteError::DuplicateState(name.to_string()));
        }
        self.names.insert(name.to_string(), word);
        Ok(self)
    }

    /// Defines `name = word · base` for an existing state `base`.
    pub fn define_state_from(
        &mut self,
        name: &str,
        word: &[Generator],
        base: &str,
    ) -> Result<&mut Self, RewriteError> {
        let w = self.state(base)?.prepend_word(word);
        self.define_state(name, w)
    }

    pub fn state(&self, name: &str) -> Result<&StateWord, RewriteError> {
        self.names
            .get(name)
            .ok_or_else(|| RewriteError::UnknownState(name.to_string()))
    }

    /// The vector `1 · name`.
    pub fn vector(&self, name: &str) -> Result<StateVector<K>, RewriteError> {
        Ok(StateVector::word(self.state(name)?.clone()))
    }

    pub fn names(&self) -> impl Iterator<Item = (&str, &StateWord)> {
        self.names.iter().map(|(k, w)| (k.as_str(), w))
    }

    pub fn name_of(&self, word: &StateWord) -> Option<&str> {
        self.names
            .iter()
            .find(|(_, w)| *w == word)
            .map(|(k, _)| k.as_str())
    }

    /// `L_0` eigenvalue of a word.
    pub fn weight(&self, word: &StateWord) -> K {
        self.base_weight.clone() + K::from_rational(&word.degree().to_rational())
    }

    /// Checks that every rule preserves degree.
    pub fn validate(&self) -> Result<(), RewriteError> {
        for r in &self.rules {
            if !r.weight_consistent() {
                let bad = r
                    .replacement
                    .words()
                    .find(|w| w.degree() != r.target.degree() + r.head.weight_degree())
                    .cloned()
                    .unwrap_or_default();
                return Err(RewriteError::WeightMismatch {
                    head: r.head,
                    state: r.target.clone(),
                    produced: bad,
                });
            }
        }
        Ok(())
    }

    /// Applies `f` to the weight, the central value and every rule coefficient.
    pub fn map_scalars<E>(&self, f: impl Fn(&K) -> Result<K, E>) -> Result<Self, E> {
        let mut out = self.clone();
        out.base_weight = f(&self.base_weight)?;
        out.central = f(&self.central)?;
        for r in &mut out.rules {
            r.replacement = r.replacement.map_coefficients(&f)?;
        }
        Ok(out)
    }

    /// Renders a vector using state names where a word has one.
    pub fn render(&self, vec: &StateVector<K>) -> String {
        struct Named<'a>(&'a str);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.0)
            }
        }
        struct R<'a, K>(&'a StateSpace<K>, &'a StateVector<K>);
        impl<K: CentralCharge> fmt::Display for R<'_, K> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let labels: Vec<(String, &K)> = self
                    .1
                    .terms()
                    .rev()
                    .map(|(w, c)| {
                        let label = match self.0.name_of(w) {
                            Some(n) => n.to_string(),
                            None => w.to_string(),
                        };
                        (label, c)
                    })
                    .collect();
                crate::enveloping::write_terms(
                    f,
                    labels.iter().map(|(l, c)| (Named(l), *c, false)),
                )
            }
        }
        R(self, vec).to_string()
    }
}

impl<K: fmt::Debug> fmt::Debug for StateSpace<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateSpace")
            .field("base_weight", &self.base_weight)
            .field("central", &self.central)
            .field("order", &self.order)
            .field("table", &self.table)
            .field("rules", &self.rules)
            .field("names", &self.names)
            .finish()
    }
}
