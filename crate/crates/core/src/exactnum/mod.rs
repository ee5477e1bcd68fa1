//! Exact coefficient arithmetic: integer polynomials in the parameters
//! alpha, a, q, t, p and their fraction fields.

mod field;
mod gcd;
mod param;
mod parampoly;
pub mod text;

pub use field::{field_arith, lcm_denoms, ArithOp, FieldElement};
pub use gcd::gcd as poly_gcd;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use param::{Param, ParamSet, NPARAMS};
pub use parampoly::{grlex_cmp, Exps, ParamPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter lists differ: {left} vs {right}")]
    ParamMismatch { left: ParamSet, right: ParamSet },
    #[error("pole: denominator vanishes at {binding}")]
    Pole { binding: String },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for a rational constant.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
