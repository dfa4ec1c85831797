//! Polynomials: sparse multivariate polynomials, dense univariate helpers,
//! binary forms with squarefree decomposition, and discriminants.

mod binary;
mod disc;
mod multi;
mod text;
pub mod uni;

use thiserror::Error;

pub use binary::{is_square_form, squarefree_decomposition, BinaryForm, SquarefreeDecomposition};
pub use disc::{
    disc_sqrt_char2, discriminant, reduce_integer_poly, resultant, universal_discriminant,
    universal_discriminant_mod2, MAX_DISC_DEGREE, MIN_DISC_DEGREE,
};
pub use multi::{mp_arith, proportional, Monomial, MultiPoly, PolyOp};
pub use text::parse_poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("polynomials over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("zero input")]
    ZeroInput,
    #[error("degenerate line: the two points coincide")]
    DegenerateLine,
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("discriminant degree {0} outside the supported range 2..=6")]
    UnsupportedDegree(usize),
    #[error("odd exponent {0} in a polynomial expected to be a square")]
    OddExponent(String),
    #[error("parse error: {0}")]
    Parse(String),
}
