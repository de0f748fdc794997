//! Modules presented by a cyclic vector and oriented rewrite rules.
//!
//! A [`StateSpace`] fixes the `L_0` eigenvalue of a cyclic vector `v`, the
//! value of the central element, and rules of the form
//! `head · (word · v) = replacement`. The [`Evaluator`] commutes modes inward
//! until a rule or the cyclic vector is reached.

mod check;
mod eval;
pub mod presets;
mod space;
mod state;

pub use check::{check_representation, RepresentationReport, Witness};
pub use eval::{act_element, act_generator, derive, Evaluator};
pub use space::{Rule, StateSpace};
pub use state::{StateVector, StateWord};

use thiserror::Error;

use crate::algebra::Generator;

#[derive(Debug, Clone, Error)]
pub enum RewriteError {
    #[error("a rule for {head} on {target} already exists")]
    DuplicateRule { head: Generator, target: StateWord },
    #[error("rule for {head} on {target} produces {word}, which is not shorter")]
    RuleNotDecreasing {
        head: Generator,
        target: StateWord,
        word: StateWord,
    },
    #[error("state `{0}` is already defined")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("degree mismatch: {head} on {state} produced {produced}")]
    WeightMismatch {
        head: Generator,
        state: StateWord,
        produced: StateWord,
    },
    #[error("recursion deeper than {0} levels")]
    DepthExceeded(usize),
    #[error("rule table does not define a module action: {}", .0.failures.first().map(|w| w.to_string()).unwrap_or_default())]
    InconsistentTable(Box<RepresentationReport>),
}
