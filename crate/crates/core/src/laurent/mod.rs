//! Exact arithmetic substrate: sparse Laurent polynomials over `Z`, reduced
//! rational functions, multivariate gcd and the `X^d + 1` decision.

mod field;
pub mod gcd;
mod poly;
mod rational;

pub use field::{xd_plus_one_reducible, xd_plus_one_witness, FieldTag, ReducibilityWitness};
pub use gcd::poly_gcd;
pub use poly::{ExponentVector, FractionDisplay, LaurentPoly};
pub use rational::{is_reduced, lp_substitute, RationalFn};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("polynomials live in different rings ({left} vs {right} variables)")]
    DimensionMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("no exact quotient exists")]
    NotDivisible,
    #[error("x{} is mapped to zero but occurs with a negative exponent", var + 1)]
    ZeroImageInverted { var: usize },
    #[error("x{} occurs with a negative exponent and its image is not a monomial", var + 1)]
    NonMonomialInverse { var: usize },
}
