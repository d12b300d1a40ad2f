//! Ring-theoretic checks: units and associates, disjoint clusters, the two
//! non-factoriality criteria, and membership in Laurent rings of other seeds.

mod factoriality;
mod membership;
mod units;

pub use factoriality::{column_criterion, gcd_criterion, FactorialityVerdict, FactorialityWitness};
pub use membership::{laurent_membership, seed_in_coordinates, upper_bound_member, Membership};
pub use units::{are_associate, classify_unit, clusters_disjoint, staircase_disjoint, UnitForm};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("zero is not a unit and has no associates")]
    ZeroInput,
    #[error("column {k} of the exchange matrix is zero")]
    DegenerateColumn { k: usize },
    #[error(transparent)]
    Seed(#[from] crate::seed::SeedError),
    #[error(transparent)]
    Kernel(#[from] crate::laurent::KernelError),
}
