//! Explicit families of seeds and the certificates that their cluster
//! algebras are polynomial rings: the type A chain, acyclic seeds built from
//! generalized Cartan matrices, and a rank-two Kac-Moody example.

mod acyclic;
mod certificate;
mod expr;
mod lie;
mod subduction;
mod type_a;

use alloc::vec::Vec;
use core::fmt;

pub use acyclic::{acyclic_seed_from_cartan, acyclic_staircase, bfz_basis_change, BfzEntry, BfzTable, CartanMatrix, Staircase};
pub use certificate::{
    jacobian_rank, verify_polynomial_generators, CertificateFailure, GeneratorCertificate, GeneratorSource, IndependenceEvidence,
    JacobianEvidence, Target,
};
pub use expr::{Expr, ExprParseError};
pub use lie::{lie_preset, lie_seed, LiePreset, LIE_MATRIX, LIE_SCHEDULE};
pub use subduction::{subduction, SubductionError};
pub use type_a::{type_a_chain, type_a_seed, TypeAChain};

use crate::laurent::KernelError;
use crate::seed::SeedError;

/// The identities checked while building the families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `mu(x_k[i]) = (x_{k-1}[i] + x_{k+1}[i]) / x_k[i]`, also after shifting `(i, k)` to `(i-j, k+j)`.
    ShiftedExchange,
    /// `x_{i+2} = x_1[i+1] x_{i+1} - x_i`.
    InitialRecurrence,
    /// `x_{i+1}[1] = x_1[i+1] x_i[1] - x_{i-1}[1]`.
    FirstStepRecurrence,
    /// Generator `j` involves its pivot variable and no later one.
    TriangularSupport,
    /// `B_i` has the predicted block form.
    StaircaseMatrix,
    /// `x_k[1] = x_k^{-1} (x_{n+k} + prod_{i<k} x_i[1]^{b_ik} prod_{i>k} x_i^{-b_ik})`.
    StaircaseExchange,
    /// `x_{n+k} = x_k[1] x_k - prod_{i<k} x_i[1]^{b_ik} prod_{i>k} x_i^{-b_ik}`.
    CoefficientRecovery,
    /// `x_k'` agrees with the mutation of the initial seed in direction `k`.
    SingleStepExchange,
    /// `x_k x_k'` equals the single-step exchange with the coefficients rewritten in the generators.
    SubstitutedExchange,
    /// A basis-change table entry evaluates to the monomial it expands.
    BasisExpansion,
    /// The principal part is skew-symmetric.
    SkewSymmetry,
    /// The staged schedule equals the concatenated word.
    StageComposition,
    /// The two clusters share no cluster variable.
    DisjointClusters,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::ShiftedExchange => "mu(x_k[i]) = (x_{k-1}[i] + x_{k+1}[i])/x_k[i] = (x_{k-1+j}[i-j] + x_{k+1+j}[i-j])/x_{k+j}[i-j]",
            Identity::InitialRecurrence => "x_{i+2} = x_1[i+1] x_{i+1} - x_i",
            Identity::FirstStepRecurrence => "x_{i+1}[1] = x_1[i+1] x_i[1] - x_{i-1}[1]",
            Identity::TriangularSupport => "triangular support",
            Identity::StaircaseMatrix => "block form of B_i",
            Identity::StaircaseExchange => "x_k[1] x_k = x_{n+k} + prod_{i<k} x_i[1]^b_ik prod_{i>k} x_i^-b_ik",
            Identity::CoefficientRecovery => "x_{n+k} = x_k[1] x_k - prod_{i<k} x_i[1]^b_ik prod_{i>k} x_i^-b_ik",
            Identity::SingleStepExchange => "x_k' = mu_k(x)_k",
            Identity::SubstitutedExchange => "x_k x_k' with coefficients rewritten in the generators",
            Identity::BasisExpansion => "basis-change expansion",
            Identity::SkewSymmetry => "skew-symmetric principal part",
            Identity::StageComposition => "stage composition",
            Identity::DisjointClusters => "disjoint clusters",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("{what} needs size at least {min}, got {got}")]
    TooSmall { what: &'static str, min: usize, got: usize },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(alloc::string::String),
    #[error("identity failed: {identity} at {at:?}")]
    IdentityFailure { identity: Identity, at: Vec<usize> },
    #[error("substituted exchange polynomial for k = {k} is not divisible by x_k")]
    NotDivisible { k: usize },
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Kernel(KernelError),
    #[error(transparent)]
    Subduction(#[from] SubductionError),
}
