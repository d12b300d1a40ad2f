//! Seeds, exchange matrices and the two mutation rules.
//!
//! Mutation directions, words and witnesses use the one-based indices of the
//! usual notation (`mu_1 .. mu_n`); raw matrix accessors are zero-based.

mod matrix;
mod quiver;

use alloc::string::String;
use alloc::vec::Vec;

pub use matrix::{bareiss_rank, ExchangeMatrix, SeedProfile, Violation};
pub use quiver::Quiver;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::laurent::{KernelError, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SeedError {
    #[error("malformed exchange matrix: {0}")]
    Shape(String),
    #[error("mutation index {k} outside 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("invalid seed: exchange at {k} has equal monomials (x x' = 2 M)")]
    DegenerateExchange { k: usize },
    #[error("invalid seed: exchange polynomial at {k} is not divisible by the cluster variable")]
    NotDivisible { k: usize },
    #[error("principal part is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("cluster has {got} entries for {m} variables")]
    ClusterSize { got: usize, m: usize },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// A seed: exchange matrix plus a cluster of `m` Laurent polynomials in the
/// initial variables, with the word of mutations that produced it.
///
/// Equality compares matrix and cluster only; the word is provenance.
#[derive(Clone, Debug)]
pub struct Seed {
    matrix: ExchangeMatrix,
    cluster: Vec<LaurentPoly>,
    word: Vec<usize>,
}

impl PartialEq for Seed {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.cluster == other.cluster
    }
}

impl Eq for Seed {}

impl Seed {
    /// The initial seed: cluster entry `i` is the coordinate variable `x_i`.
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let m = matrix.m();
        let cluster = (0..m).map(|i| LaurentPoly::var(m, i)).collect();
        Seed { matrix, cluster, word: Vec::new() }
    }

    /// A seed with an explicit cluster, e.g. formal variables of another ring.
    pub fn with_cluster(matrix: ExchangeMatrix, cluster: Vec<LaurentPoly>) -> Result<Self, SeedError> {
        if cluster.len() != matrix.m() {
            return Err(SeedError::ClusterSize { got: cluster.len(), m: matrix.m() });
        }
        Ok(Seed { matrix, cluster, word: Vec::new() })
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    /// Entry `k` of the cluster (one-based).
    pub fn entry(&self, k: usize) -> &LaurentPoly {
        &self.cluster[k - 1]
    }

    /// The `n` cluster variables (the mutable part of the cluster).
    pub fn mutable_entries(&self) -> &[LaurentPoly] {
        &self.cluster[..self.matrix.n()]
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// The two monomials of the exchange relation in direction `k` (one-based):
    /// products over positive and over negative entries of column `k`.
    pub fn exchange_monomials(&self, k: usize) -> (LaurentPoly, LaurentPoly) {
        let nv = self.cluster.first().map_or(0, LaurentPoly::nvars);
        let mut m1 = LaurentPoly::one(nv);
        let mut m2 = LaurentPoly::one(nv);
        for (i, x) in self.cluster.iter().enumerate() {
            let b: &BigInt = self.matrix.get(i, k - 1);
            if b.is_zero() {
                continue;
            }
            let e = u32::try_from(b.abs()).expect("exchange matrix entry too large for an exponent");
            if b.is_positive() {
                m1 = &m1 * &x.pow(e);
            } else {
                m2 = &m2 * &x.pow(e);
            }
        }
        (m1, m2)
    }

    /// Seed mutation in direction `k` (one-based).
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        let matrix = self.matrix.mutate(k)?;
        let (m1, m2) = self.exchange_monomials(k);
        if m1 == m2 {
            return Err(SeedError::DegenerateExchange { k });
        }
        let fresh = (&m1 + &m2).exact_div(&self.cluster[k - 1]).map_err(|e| match e {
            KernelError::NotDivisible => SeedError::NotDivisible { k },
            other => SeedError::Kernel(other),
        })?;
        let mut cluster = self.cluster.clone();
        cluster[k - 1] = fresh;
        let mut word = self.word.clone();
        word.push(k);
        Ok(Seed { matrix, cluster, word })
    }

    /// Applies `word` left to right: `mu_{i_t} ... mu_{i_1}`.
    pub fn apply_word(&self, word: &[usize]) -> Result<Self, SeedError> {
        let mut s = self.clone();
        for &k in word {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Forgets the provenance word, making this the base of later words.
    pub fn rebased(mut self) -> Self {
        self.word.clear();
        self
    }

    pub fn sigma_quiver(&self) -> Quiver {
        Quiver::sigma(&self.matrix)
    }
}
