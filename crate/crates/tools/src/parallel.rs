//! Frontier expansion on a rayon pool.
//!
//! Only the expansion step runs concurrently; merging stays in the core
//! explorer, so the report is identical to the sequential one for any
//! thread count.

use cluster_core::explore::{expand_seed, explore, explore_with, ExplorationLimits, ExplorationReport, ExploreError};
use cluster_core::Seed;
use rayon::prelude::*;

/// Explores with `threads` workers; `threads <= 1` runs sequentially.
pub fn explore_parallel(seed: &Seed, limits: ExplorationLimits, threads: usize) -> Result<ExplorationReport, ExploreError> {
    if threads <= 1 {
        return explore(seed, limits);
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    pool.install(|| explore_with(seed, limits, |frontier| frontier.par_iter().map(expand_seed).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cluster_core::ExchangeMatrix;

    #[test]
    fn thread_count_does_not_change_the_report() {
        let s = Seed::initial(ExchangeMatrix::from_i64(2, 2, 2, &[&[0, -1], &[3, 0]]).unwrap());
        let limits = ExplorationLimits::depth(10);
        let one = explore_parallel(&s, limits, 1).unwrap();
        for t in [2, 4] {
            assert_eq!(explore_parallel(&s, limits, t).unwrap(), one);
        }
    }
}
