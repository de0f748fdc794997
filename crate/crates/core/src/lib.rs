//! Exact computation in the Neveu-Schwarz superalgebra and its enveloping
//! algebra: PBW straightening, congruences modulo left ideals, modules given
//! by rewrite rules on words, and Verma modules.
//!
//! The core is generic over the coefficient [`scalar::Field`]; the aliases
//! below fix it to rational functions over ℚ, which every check uses.

pub mod algebra;
pub mod cli;
pub mod enveloping;
pub mod rewrite;
pub mod scalar;
pub mod verma;

pub use algebra::{bracket, Bracket, BracketTable, Generator, HalfInt, NeveuSchwarz};
pub use scalar::{rat, Rational, Var};

/// Rational functions in the fixed indeterminates, over ℚ.
pub type Scalar = scalar::RationalFunction<Rational>;
/// Polynomials in the fixed indeterminates, over ℚ.
pub type Poly = scalar::Polynomial<Rational>;
/// Elements of the enveloping algebra with [`Scalar`] coefficients.
pub type Element = enveloping::Element<Scalar>;
/// A constraint module over [`Scalar`].
pub type StateSpace = rewrite::StateSpace<Scalar>;
/// A vector in a [`StateSpace`].
pub type StateVector = rewrite::StateVector<Scalar>;
/// A Verma module over [`Scalar`].
pub type VermaModule = verma::VermaModule<Scalar>;
/// A vector in a Verma module over [`Scalar`].
pub type VermaVector = verma::VermaVector<Scalar>;
