//! The universal enveloping algebra `U(NS)`.
//!
//! Elements are finite sums of words in the modes. Multiplication is plain
//! concatenation (with `G_r G_r = L_{2r}` applied at the seam); reordering
//! into a PBW basis happens only in [`normal_form`].

mod element;
mod monomial;
mod order;
mod straighten;

pub use element::Element;
pub(crate) use element::write_terms;
pub use monomial::Monomial;
pub use order::OrderSpec;
pub use straighten::{
    congruent_mod, congruent_mod_with, normal_form, normal_form_with, reduce_trailing,
    reduce_trailing_with, Straightener,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopingError {
    #[error("reduce_trailing needs an order with a trailing set")]
    NotTrailing,
    #[error("trailing list contains {0} twice")]
    DuplicateTrailing(crate::algebra::Generator),
}
