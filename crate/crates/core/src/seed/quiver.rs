use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{Signed, Zero};

use super::{ExchangeMatrix, SeedError};

/// A finite quiver on vertices `1..=vertices`, arrows stored with multiplicity.
///
/// Arrow keys are zero-based `(tail, head)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: usize,
    arrows: BTreeMap<(usize, usize), BigUint>,
}

impl Quiver {
    pub fn new(vertices: usize) -> Self {
        Quiver { vertices, arrows: BTreeMap::new() }
    }

    pub fn add_arrows(&mut self, tail: usize, head: usize, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.arrows.entry((tail, head)).or_default() += count;
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.arrows.iter().map(|(&(t, h), c)| (t, h, c))
    }

    pub fn multiplicity(&self, tail: usize, head: usize) -> BigUint {
        self.arrows.get(&(tail, head)).cloned().unwrap_or_default()
    }

    /// The sign-pattern quiver on the mutable vertices: `i -> j` iff `b_ij > 0`.
    pub fn sigma(b: &ExchangeMatrix) -> Self {
        let n = b.n();
        let mut q = Quiver::new(n);
        for i in 0..n {
            for j in 0..n {
                if b.get(i, j).is_positive() {
                    q.add_arrows(i, j, BigUint::from(1u8));
                }
            }
        }
        q
    }

    /// The quiver on `1..=m` with `b_ij` arrows `i -> j` for `b_ij > 0` and
    /// `-b_ij` arrows `j -> i` for `b_ij < 0`. Each principal pair is read
    /// once, from its positive entry.
    pub fn gamma(b: &ExchangeMatrix) -> Result<Self, SeedError> {
        let (m, n) = (b.m(), b.n());
        for i in 0..n {
            for j in 0..n {
                if *b.get(i, j) != -b.get(j, i) {
                    return Err(SeedError::NotSkewSymmetric);
                }
            }
        }
        let mut q = Quiver::new(m);
        for i in 0..m {
            for j in 0..n {
                let v = b.get(i, j);
                if v.is_positive() {
                    q.add_arrows(i, j, v.magnitude().clone());
                } else if v.is_negative() && i >= n {
                    q.add_arrows(j, i, v.magnitude().clone());
                }
            }
        }
        Ok(q)
    }

    /// True when the quiver has no oriented cycle (Kahn's algorithm).
    pub fn is_acyclic(&self) -> bool {
        let mut indegree = alloc::vec![0usize; self.vertices];
        for &(t, h) in self.arrows.keys() {
            if t == h {
                return false;
            }
            indegree[h] += 1;
        }
        let mut ready: Vec<usize> = (0..self.vertices).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for (&(t, h), _) in self.arrows.range((v, 0)..=(v, usize::MAX)) {
                debug_assert_eq!(t, v);
                indegree[h] -= 1;
                if indegree[h] == 0 {
                    ready.push(h);
                }
            }
        }
        seen == self.vertices
    }
}

impl ExchangeMatrix {
    /// Acyclicity of the sign-pattern quiver.
    pub fn is_acyclic(&self) -> bool {
        Quiver::sigma(self).is_acyclic()
    }
}
