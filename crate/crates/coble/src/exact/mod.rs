//! Exact arithmetic substrate: big rationals, univariate polynomials,
//! étale-algebra arithmetic with traces, dense rational linear algebra and
//! integer-lattice reduction.
//!
//! Every value in this module is immutable after construction and every
//! operation is a pure function; there is no global state and no floating
//! point anywhere on a result path. The one deliberate exception is the
//! optional Gram matrix fed to [`lll_reduce`], which may be a fixed-precision
//! rational approximation of a real quadratic form: it influences which basis
//! the reduction prefers, never whether the output is a correct basis of the
//! input lattice.

mod etale;
mod lattice;
mod matrix;
pub mod modular;
mod poly;
mod rational;

pub use etale::{etale_trace, EtaleAlgebra, EtaleElement};
pub use lattice::{lll_reduce, IntLattice};
pub use matrix::{primitive_integer_vector, QMatrix};
pub use poly::{poly_gcd, UniPoly};
pub use rational::{parse_rational, rational_to_string, Rational};

use thiserror::Error;

/// Errors raised by the exact-arithmetic substrate.
#[derive(Debug, Error)]
pub enum ExactError {
    /// The modulus of an étale algebra has a repeated factor.
    #[error("étale modulus is not squarefree: {0}")]
    DegenerateAlgebra(String),
    /// The vectors handed to the lattice reduction are linearly dependent.
    #[error("input vectors do not form a lattice basis")]
    NotABasis,
    /// A rational string (or polynomial file) failed to parse.
    #[error("cannot parse rational data: {0}")]
    Parse(String),
    /// Mixed-modulus étale arithmetic or malformed dimensions.
    #[error("incompatible operands: {0}")]
    Incompatible(String),
}
