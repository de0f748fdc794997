//! Rule files: one declaration per line, `#` starts a comment.
//!
//! ```text
//! weight mu - 1/2
//! central chat
//! order ascending trailing L[1], G[1/2]
//! let tau = (mu+1)*(2*mu-1)/(mu-1)
//! state x = G[3/2] v
//! rule G[1/2] v -> 0
//! rule G[1/2] y -> tau * x
//! ```
//!
//! `weight` and `central` default to `lam` and `chat`; `order` defaults to
//! ascending. Rule right-hand sides are linear in state names.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::Generator;
use crate::enveloping::OrderSpec;
use crate::rewrite::StateWord;
use crate::scalar::Var;
use crate::{Element, Scalar, StateSpace, StateVector};

use super::parser::{as_scalar, elaborate_with, parse_expr, ParseError};

#[derive(Debug, Clone, Error)]
#[error("line {line}: {message}")]
pub struct RuleFileError {
    pub line: usize,
    pub message: String,
}

struct Loader {
    lets: BTreeMap<String, Scalar>,
    space: StateSpace,
    line: usize,
}

impl Loader {
    fn err(&self, message: impl ToString) -> RuleFileError {
        RuleFileError {
            line: self.line,
            message: message.to_string(),
        }
    }

    fn scalar(&self, text: &str) -> Result<Scalar, RuleFileError> {
        let ast = parse_expr(text).map_err(|e| self.err(e))?;
        let e = elaborate_with(&ast, &|n| self.lets.get(n).map(|s| Element::scalar(s.clone())))
            .map_err(|e| self.err(e))?;
        as_scalar(&e).ok_or_else(|| self.err(ParseError::NotScalar(e.to_string())))
    }

    /// An expression in which state names stand for the words producing them.
    fn vector(&self, text: &str) -> Result<StateVector, RuleFileError> {
        let ast = parse_expr(text).map_err(|e| self.err(e))?;
        let e = elaborate_with(&ast, &|n| {
            if let Some(s) = self.lets.get(n) {
                return Some(Element::scalar(s.clone()));
            }
            self.space.state(n).ok().map(|w| Element::word(w.letters()))
        })
        .map_err(|e| self.err(e))?;
        Ok(StateVector::from_element(&e))
    }

    /// `<word> <state>`, e.g. `G[-1/2] G[3/2] v` or `G[1/2] y`.
    fn word_on_state(&self, text: &str) -> Result<StateWord, RuleFileError> {
        let text = text.trim();
        let split = text
            .rfind(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '\''))
            .map_or(0, |i| i + 1);
        let (prefix, name) = text.split_at(split);
        if name.is_empty() {
            return Err(self.err("expected a state name at the end"));
        }
        let base = self.space.state(name).map_err(|e| self.err(e))?.clone();
        let prefix = prefix.trim();
        if prefix.is_empty() {
            return Ok(base);
        }
        let ast = parse_expr(&prefix.split_whitespace().collect::<Vec<_>>().join("*"))
            .map_err(|e| self.err(e))?;
        let e = elaborate_with(&ast, &|_| None).map_err(|e| self.err(e))?;
        let word = match e.terms().collect::<Vec<_>>().as_slice() {
            [(m, c)] if num_traits::One::is_one(*c) => m.letters().collect::<Vec<Generator>>(),
            _ => return Err(self.err(format!("`{prefix}` is not a single word"))),
        };
        Ok(base.prepend_word(&word))
    }

    fn order(&self, text: &str) -> Result<OrderSpec, RuleFileError> {
        let text = text.trim();
        let (dir, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let descending = match dir {
            "ascending" => false,
            "descending" => true,
            _ => return Err(self.err(format!("unknown order `{dir}`"))),
        };
        let rest = rest.trim();
        let mut list = Vec::new();
        if !rest.is_empty() {
            let gens = rest
                .strip_prefix("trailing")
                .ok_or_else(|| self.err("expected `trailing`"))?;
            for g in gens.split(',') {
                list.push(g.trim().parse::<Generator>().map_err(|e| self.err(e))?);
            }
        }
        OrderSpec::new(descending, list).map_err(|e| self.err(e))
    }

    fn line(&mut self, raw: &str) -> Result<(), RuleFileError> {
        let text = raw.split('#').next().unwrap().trim();
        if text.is_empty() {
            return Ok(());
        }
        let (kw, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        match kw {
            "weight" => {
                let w = self.scalar(rest)?;
                self.space.set_base_weight(w);
            }
            "central" => {
                let c = self.scalar(rest)?;
                self.space.set_central(c);
            }
            "order" => {
                let o = self.order(rest)?;
                self.space.set_order(o);
            }
            "let" => {
                let (name, value) = rest.split_once('=').ok_or_else(|| self.err("expected `=`"))?;
                let value = self.scalar(value)?;
                self.lets.insert(name.trim().to_string(), value);
            }
            "state" => {
                let (name, value) = rest.split_once('=').ok_or_else(|| self.err("expected `=`"))?;
                let w = self.word_on_state(value)?;
                let line = self.line;
                self.space
                    .define_state(name.trim(), w)
                    .map_err(|e| RuleFileError { line, message: e.to_string() })?;
            }
            "rule" => {
                let (lhs, rhs) = rest.split_once("->").ok_or_else(|| self.err("expected `->`"))?;
                let target = self.word_on_state(lhs)?;
                let Some(head) = target.first() else {
                    return Err(self.err("a rule needs a head mode"));
                };
                let rhs = self.vector(rhs)?;
                let line = self.line;
                self.space
                    .add_rule(head, target.rest(), rhs)
                    .map_err(|e| RuleFileError { line, message: e.to_string() })?;
            }
            _ => return Err(self.err(format!("unknown declaration `{kw}`"))),
        }
        Ok(())
    }
}

pub fn load_rules(text: &str) -> Result<StateSpace, RuleFileError> {
    let mut loader = Loader {
        lets: BTreeMap::new(),
        space: StateSpace::new(Scalar::var(Var::Lam), Scalar::var(Var::Chat)),
        line: 0,
    };
    for (i, raw) in text.lines().enumerate() {
        loader.line = i + 1;
        loader.line(raw)?;
    }
    Ok(loader.space)
}

/// Parses a linear combination of named states in `space`, such as
/// `-tau*h` or `p*x + y`. State names shadow indeterminates.
pub fn parse_state_vector(space: &StateSpace, text: &str) -> Result<StateVector, ParseError> {
    let ast = parse_expr(text)?;
    let e = elaborate_with(&ast, &|n| space.state(n).ok().map(|w| Element::word(w.letters())))?;
    Ok(StateVector::from_element(&e))
}

/// The shipped rule files.
pub const N_RULES: &str = include_str!("../../rules/n.rules");
pub const W_RULES: &str = include_str!("../../rules/w.rules");

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::presets;

    fn same(a: &StateSpace, b: &StateSpace) {
        assert_eq!(a.base_weight(), b.base_weight());
        assert_eq!(a.central(), b.central());
        assert_eq!(a.order(), b.order());
        assert_eq!(a.rules(), b.rules());
        assert_eq!(a.names().collect::<Vec<_>>(), b.names().collect::<Vec<_>>());
    }

    #[test]
    fn shipped_files_match_presets() {
        same(&load_rules(N_RULES).unwrap(), &presets::n_rules());
        same(&load_rules(W_RULES).unwrap(), &presets::w_rules());
    }

    #[test]
    fn let_bindings_and_errors() {
        let s = load_rules(
            "let tau = (mu+1)*(2*mu-1)/(mu-1)\nstate x = G[3/2] v\nstate y = G[-1/2] x\nrule G[1/2] y -> tau * x\n",
        )
        .unwrap();
        let tau = crate::cli::parser::parse_scalar("(mu+1)*(2*mu-1)/(mu-1)").unwrap();
        let y = s.state("y").unwrap().clone();
        assert_eq!(s.rule(Generator::g(1), &y).unwrap(), &s.vector("x").unwrap().scale(&tau));
        let e = load_rules("state x = G[3/2] v\nrule G[1/2] q -> 0").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(load_rules("frobnicate").is_err());
    }
}
