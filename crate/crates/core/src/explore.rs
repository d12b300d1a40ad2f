//! Breadth-first exploration of the exchange graph.
//!
//! The search is level-synchronous: every seed of the current frontier is
//! expanded in all `n` directions, then the children are merged into the
//! found set in frontier order and direction order. Expansion is delegated to
//! a caller-supplied closure, so a threaded caller gets exactly the report a
//! sequential one does.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::laurent::LaurentPoly;
use crate::seed::{ExchangeMatrix, Seed, SeedError, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dedup {
    /// Seeds are identified only when matrix and cluster agree exactly.
    Exact,
    /// Seeds are also identified up to a simultaneous permutation of the
    /// mutable indices.
    UpToPermutation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExplorationLimits {
    pub max_depth: usize,
    pub max_seeds: usize,
    pub dedup: Dedup,
}

impl Default for ExplorationLimits {
    fn default() -> Self {
        ExplorationLimits { max_depth: 6, max_seeds: 10_000, dedup: Dedup::Exact }
    }
}

impl ExplorationLimits {
    pub fn depth(max_depth: usize) -> Self {
        ExplorationLimits { max_depth, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// Children beyond the depth limit were new.
    Depth,
    /// The seed budget ran out.
    Budget,
    /// No seed has an unseen neighbour: the exchange graph is complete.
    Closure,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::Depth => "depth",
            StopReason::Budget => "budget",
            StopReason::Closure => "closure",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExploreError {
    #[error("initial seed is invalid: {}", list(.0))]
    InvalidInitial(Vec<Violation>),
    #[error("seed reached by word {word:?} is invalid: {}", list(.violations))]
    InvalidAfterMutation { word: Vec<usize>, violations: Vec<Violation> },
    #[error(transparent)]
    Mutation(#[from] SeedError),
}

fn list(v: &[Violation]) -> alloc::string::String {
    use alloc::string::ToString;
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Outcome of an exploration.
///
/// `variables` holds the distinct mutable cluster entries in order of first
/// appearance; `clusters` holds the distinct unordered clusters as sorted
/// index lists into `variables`, themselves sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationReport {
    pub seeds: Vec<Seed>,
    /// BFS depth of each entry of `seeds`.
    pub depths: Vec<usize>,
    pub variables: Vec<LaurentPoly>,
    pub clusters: Vec<Vec<usize>>,
    pub finite: bool,
    pub reason: StopReason,
}

impl ExplorationReport {
    pub fn seeds_found(&self) -> usize {
        self.seeds.len()
    }

    /// Index into `variables` of each mutable entry of seed `s`.
    pub fn cluster_of(&self, s: &Seed) -> Option<Vec<usize>> {
        s.mutable_entries().iter().map(|v| self.variables.iter().position(|w| w == v)).collect()
    }
}

type Key = (ExchangeMatrix, Vec<LaurentPoly>);

fn key_of(seed: &Seed, dedup: Dedup) -> Key {
    let exact = (seed.matrix().clone(), seed.cluster().to_vec());
    match dedup {
        Dedup::Exact => exact,
        Dedup::UpToPermutation => {
            let n = seed.matrix().n();
            let mut best = exact;
            for_each_permutation(n, |perm| {
                let matrix = seed.matrix().permute_mutable(perm);
                let mut cluster = seed.cluster().to_vec();
                for (i, &to) in perm.iter().enumerate() {
                    cluster[to] = seed.cluster()[i].clone();
                }
                let cand = (matrix, cluster);
                if cand < best {
                    best = cand;
                }
            });
            best
        }
    }
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = alloc::vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Children of `seed` in directions `1..=n`.
pub fn expand_seed(seed: &Seed) -> Vec<Result<Seed, SeedError>> {
    (1..=seed.matrix().n()).map(|k| seed.mutate(k)).collect()
}

/// Sequential exploration.
pub fn explore(seed: &Seed, limits: ExplorationLimits) -> Result<ExplorationReport, ExploreError> {
    explore_with(seed, limits, |frontier| frontier.iter().map(expand_seed).collect())
}

/// Exploration with a custom frontier expander.
///
/// `expand` receives the current frontier and must return, for each seed in
/// order, the results of [`expand_seed`] (possibly computed concurrently).
pub fn explore_with<F>(seed: &Seed, limits: ExplorationLimits, mut expand: F) -> Result<ExplorationReport, ExploreError>
where
    F: FnMut(&[Seed]) -> Vec<Vec<Result<Seed, SeedError>>>,
{
    let violations = seed.matrix().validate();
    if !violations.is_empty() {
        return Err(ExploreError::InvalidInitial(violations));
    }
    let root = seed.clone().rebased();
    let mut found: BTreeSet<Key> = BTreeSet::new();
    found.insert(key_of(&root, limits.dedup));
    let mut seeds = alloc::vec![root.clone()];
    let mut depths = alloc::vec![0];
    let mut frontier = alloc::vec![root];
    let mut depth = 0;
    let reason = 'search: loop {
        let children = expand(&frontier);
        debug_assert_eq!(children.len(), frontier.len());
        let mut next = Vec::new();
        for child in children.into_iter().flatten() {
            let child = child?;
            let key = key_of(&child, limits.dedup);
            if found.contains(&key) {
                continue;
            }
            if depth == limits.max_depth {
                break 'search StopReason::Depth;
            }
            if seeds.len() >= limits.max_seeds {
                break 'search StopReason::Budget;
            }
            let violations = child.matrix().validate();
            if !violations.is_empty() {
                return Err(ExploreError::InvalidAfterMutation { word: child.word().to_vec(), violations });
            }
            found.insert(key);
            seeds.push(child.clone());
            depths.push(depth + 1);
            next.push(child);
        }
        if next.is_empty() {
            break StopReason::Closure;
        }
        frontier = next;
        depth += 1;
    };

    let mut variables: Vec<LaurentPoly> = Vec::new();
    let mut index: BTreeMap<LaurentPoly, usize> = BTreeMap::new();
    let mut clusters: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in &seeds {
        let mut cluster: Vec<usize> = s
            .mutable_entries()
            .iter()
            .map(|v| {
                *index.entry(v.clone()).or_insert_with(|| {
                    variables.push(v.clone());
                    variables.len() - 1
                })
            })
            .collect();
        cluster.sort_unstable();
        clusters.insert(cluster);
    }
    Ok(ExplorationReport {
        seeds,
        depths,
        variables,
        clusters: clusters.into_iter().collect(),
        finite: reason == StopReason::Closure,
        reason,
    })
}

/// The distinct cluster variables of a report in canonical text form.
pub fn collect_variables(report: &ExplorationReport) -> Vec<alloc::string::String> {
    use alloc::string::ToString;
    report.variables.iter().map(ToString::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Seed {
        Seed::initial(ExchangeMatrix::from_i64(3, 3, 3, &[&[0, -1, 0], &[1, 0, -1], &[0, 1, 0]]).unwrap())
    }

    fn rank2(b: i64, c: i64) -> Seed {
        Seed::initial(ExchangeMatrix::from_i64(2, 2, 2, &[&[0, -b], &[c, 0]]).unwrap())
    }

    #[test]
    fn a3_closes_with_catalan_clusters() {
        let r = explore(&a3(), ExplorationLimits::depth(20)).unwrap();
        assert!(r.finite);
        assert_eq!(r.reason, StopReason::Closure);
        assert_eq!(r.variables.len(), 9);
        assert_eq!(r.clusters.len(), 14);
    }

    #[test]
    fn depth_zero_is_the_initial_seed() {
        let r = explore(&a3(), ExplorationLimits::depth(0)).unwrap();
        assert_eq!(r.seeds_found(), 1);
        assert_eq!(collect_variables(&r), ["x1", "x2", "x3"]);
        assert_eq!(r.reason, StopReason::Depth);
        assert!(!r.finite);
    }

    #[test]
    fn a3_variables_include_the_exchanged_ones() {
        let r = explore(&a3(), ExplorationLimits::depth(20)).unwrap();
        let names = collect_variables(&r);
        for v in ["x1^-1 + x1^-1*x2", "x3^-1 + x2*x3^-1"] {
            assert!(names.iter().any(|s| s == v), "{v} missing");
        }
    }

    #[test]
    fn affine_rank_two_does_not_close() {
        let r = explore(&rank2(2, 2), ExplorationLimits::depth(8)).unwrap();
        assert!(!r.finite);
        assert_eq!(r.reason, StopReason::Depth);
    }

    #[test]
    fn budget_stops_the_search() {
        let limits = ExplorationLimits { max_seeds: 4, ..ExplorationLimits::depth(20) };
        let r = explore(&a3(), limits).unwrap();
        assert_eq!(r.seeds_found(), 4);
        assert_eq!(r.reason, StopReason::Budget);
    }

    #[test]
    fn permutation_quotient_shrinks_the_graph() {
        let exact = explore(&rank2(1, 1), ExplorationLimits::depth(20)).unwrap();
        let limits = ExplorationLimits { dedup: Dedup::UpToPermutation, ..ExplorationLimits::depth(20) };
        let quotient = explore(&rank2(1, 1), limits).unwrap();
        assert!(exact.finite && quotient.finite);
        assert_eq!(exact.seeds_found(), 10);
        assert!(quotient.seeds_found() < exact.seeds_found());
        assert_eq!(quotient.variables.len(), 5);
    }

    #[test]
    fn invalid_initial_seed_is_rejected() {
        let s = Seed::initial(ExchangeMatrix::from_i64(2, 4, 4, &[&[0, 0], &[0, 0], &[1, 0], &[0, 1]]).unwrap());
        assert!(matches!(explore(&s, ExplorationLimits::default()), Err(ExploreError::InvalidInitial(_))));
    }

    #[test]
    fn permutations_are_enumerated_once() {
        let mut seen = BTreeSet::new();
        for_each_permutation(4, |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
        assert_eq!(seen.iter().next().unwrap(), &[0, 1, 2, 3]);
    }
}
