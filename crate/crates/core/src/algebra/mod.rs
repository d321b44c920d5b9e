//! Exact arithmetic: fields, univariate and multivariate polynomials.

mod ext;
mod field;
mod funcfield;
pub mod linalg;
mod poly;
mod quad;
pub mod resultant;
mod series;
pub mod spec;
pub mod upoly;

pub use ext::{is_irreducible, ExtElem, ExtField};
pub use field::{
    finite_sqrt, first_nonsquare, is_prime, is_square_finite, parse_rational, Field, FiniteField,
    PrimeField, Rationals,
};
pub use funcfield::{FunctionField, RatFunc};
pub use poly::{ArithOp, Monomial, Poly};
pub use quad::{QuadElem, QuadExt};
pub use resultant::{resultant_ternary_123, sylvester_resultant, sylvester_resultant_dense};
pub use series::{implicit_series_solve, Series, SeriesOrder};
pub use spec::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("denominator of {value} vanishes in characteristic {characteristic}")]
    DenominatorVanishes { value: String, characteristic: u64 },
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("function fields over function fields are not supported")]
    NestedFunctionField,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected a polynomial in two variables, found {0}")]
    NotBinary(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("implicit series solve failed: {0}")]
    ImplicitSolve(String),
    #[error("division is not exact")]
    NonExactDivision,
}
