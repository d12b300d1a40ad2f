use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::certificate::jacobian_evidence;
use super::expr::polynomial_expr;
use super::subduction::subduction;
use super::{ConstructionError, GeneratorCertificate, GeneratorSource, Identity, IndependenceEvidence, Target};
use crate::analysis::clusters_disjoint;
use crate::seed::{ExchangeMatrix, Seed};

/// Exchange matrix of the rank-two Kac-Moody example with `C = [[2, -2], [-2, 2]]`
/// and reduced word `(2, 1, 2, 1, 2, 1, 2, 1)`: `n = p = 6`, `m = 8`.
pub const LIE_MATRIX: [[i64; 6]; 8] = [
    [0, 2, -1, 0, 0, 0],
    [-2, 0, 2, -1, 0, 0],
    [1, -2, 0, 2, -1, 0],
    [0, 1, -2, 0, 2, -1],
    [0, 0, 1, -2, 0, 2],
    [0, 0, 0, 1, -2, 0],
    [0, 0, 0, 0, 1, -2],
    [0, 0, 0, 0, 0, 1],
];

/// The six stages; stage `t` turns `x[t-1]` into `x[t]`, applying its
/// directions left to right.
pub const LIE_SCHEDULE: [&[usize]; 6] = [&[1, 3, 5], &[2, 4, 6], &[1, 3], &[2, 4], &[1], &[2]];

/// Stages whose clusters contribute the generators `x_1[t], x_2[t]`.
const GENERATOR_STAGES: [usize; 4] = [0, 2, 4, 6];

#[derive(Clone, Debug)]
pub struct LiePreset {
    /// `stages[t]` is `(x[t], B[t])`.
    pub stages: Vec<Seed>,
    /// Largest number of terms among all cluster entries met.
    pub max_terms: usize,
    pub certificate: GeneratorCertificate,
}

impl LiePreset {
    pub fn word(&self) -> Vec<usize> {
        LIE_SCHEDULE.iter().flat_map(|s| s.iter().copied()).collect()
    }
}

pub fn lie_seed() -> Seed {
    let rows: Vec<&[i64]> = LIE_MATRIX.iter().map(|r| r.as_slice()).collect();
    Seed::initial(ExchangeMatrix::from_i64(6, 6, 8, &rows).expect("preset matrix has the right shape"))
}

/// Runs the six-stage schedule, checks it against the concatenated word,
/// checks that `x[0]` and `x[6]` are disjoint, and expresses both clusters
/// as polynomials in `x_1[t], x_2[t]` for `t = 0, 2, 4, 6`.
pub fn lie_preset() -> Result<LiePreset, ConstructionError> {
    let seed = lie_seed();
    let b = seed.matrix();
    for i in 0..6 {
        for j in 0..6 {
            if *b.get(i, j) != -b.get(j, i) {
                return Err(ConstructionError::IdentityFailure { identity: Identity::SkewSymmetry, at: alloc::vec![i + 1, j + 1] });
            }
        }
    }
    let mut stages = alloc::vec![seed.clone()];
    let mut max_terms = 1;
    for stage in LIE_SCHEDULE {
        let mut s = stages.last().unwrap().clone();
        for &k in stage {
            s = s.mutate(k)?;
            max_terms = max_terms.max(s.entry(k).num_terms());
        }
        stages.push(s);
    }
    let word: Vec<usize> = LIE_SCHEDULE.iter().flat_map(|s| s.iter().copied()).collect();
    if seed.apply_word(&word)? != stages[6] {
        return Err(ConstructionError::IdentityFailure { identity: Identity::StageComposition, at: Vec::new() });
    }
    if !clusters_disjoint(&stages[0], &stages[6]) {
        return Err(ConstructionError::IdentityFailure { identity: Identity::DisjointClusters, at: alloc::vec![0, 6] });
    }

    let mut names: Vec<String> = Vec::new();
    let mut generators = Vec::new();
    let mut sources = Vec::new();
    for t in GENERATOR_STAGES {
        for k in 1..=2 {
            names.push(format!("x{k}[{t}]"));
            generators.push(stages[t].entry(k).clone());
            sources.push(GeneratorSource { word: stages[t].word().to_vec(), index: k });
        }
    }
    let independence = IndependenceEvidence { triangular: None, jacobian: jacobian_evidence(&generators) };
    let mut targets = Vec::new();
    for t in [0, 6] {
        for k in 1..=8 {
            let value = stages[t].entry(k).clone();
            let terms = subduction(&value, &generators, 10_000)?;
            targets.push(Target { name: format!("x{k}[{t}]"), value, expr: polynomial_expr(terms) });
        }
    }
    let certificate = GeneratorCertificate {
        matrix: seed.matrix().clone(),
        generator_names: names,
        generators,
        sources,
        independence,
        targets,
    };
    Ok(LiePreset { stages, max_terms, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::verify_polynomial_generators;

    #[test]
    fn preset_runs_and_certifies() {
        let p = lie_preset().unwrap();
        assert_eq!(p.word(), [1, 3, 5, 2, 4, 6, 1, 3, 2, 4, 1, 2]);
        assert_eq!(p.stages.len(), 7);
        assert!(p.certificate.independence.jacobian.is_some());
        verify_polynomial_generators(&p.certificate, &p.stages[0], &p.stages[6]).unwrap();
    }
}
