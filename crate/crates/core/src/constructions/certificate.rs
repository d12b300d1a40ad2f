use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::Expr;
use crate::analysis::clusters_disjoint;
use crate::laurent::LaurentPoly;
use crate::seed::{bareiss_rank, ExchangeMatrix, Seed};

/// Where a generator comes from: entry `index` (one-based) of the seed
/// reached from the initial seed by `word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSource {
    pub word: Vec<usize>,
    pub index: usize,
}

/// Jacobian of the generators with respect to `x_1..x_m`, evaluated at `point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianEvidence {
    pub point: Vec<BigInt>,
    pub rank: usize,
}

/// Evidence that the generators are algebraically independent.
///
/// `triangular` lists pivot variables `v_1, v_2, ...` (one-based), one per
/// generator: generator `j` involves `x_{v_j}` and no variable outside
/// `{x_{v_1}, ..., x_{v_j}}`. Then each generator is transcendental over the
/// field generated by the earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndependenceEvidence {
    pub triangular: Option<Vec<usize>>,
    pub jacobian: Option<JacobianEvidence>,
}

/// A target element together with its expression in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub name: String,
    pub value: LaurentPoly,
    pub expr: Expr,
}

/// Certificate that a set of cluster variables generates the cluster
/// algebra as a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCertificate {
    pub matrix: ExchangeMatrix,
    pub generator_names: Vec<String>,
    pub generators: Vec<LaurentPoly>,
    pub sources: Vec<GeneratorSource>,
    pub independence: IndependenceEvidence,
    pub targets: Vec<Target>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertificateFailure {
    #[error("certificate is malformed: {0}")]
    Malformed(String),
    #[error("generator {name} does not match its source seed")]
    GeneratorMismatch { name: String },
    #[error("no independence evidence")]
    NoEvidence,
    #[error("triangular support fails at generator {name}")]
    TriangularSupport { name: String },
    #[error("Jacobian has rank {got} at the recorded point, expected {expected}")]
    JacobianRank { got: usize, expected: usize },
    #[error("expression for {name} does not evaluate to its target")]
    TargetMismatch { name: String },
    #[error("{what} is not expressed by any target")]
    Uncovered { what: String },
    #[error("the clusters are not disjoint")]
    ClustersNotDisjoint,
    #[error("seed with word {word:?} does not come from the certificate's matrix")]
    ForeignSeed { word: Vec<usize> },
}

impl GeneratorCertificate {
    pub fn nvars(&self) -> usize {
        self.matrix.m()
    }
}

/// Builds triangular-support evidence when the given pivots work.
pub(crate) fn triangular_evidence(generators: &[LaurentPoly], pivots: Vec<usize>) -> Option<Vec<usize>> {
    check_triangular(generators, &pivots).is_none().then_some(pivots)
}

/// Index of the first generator violating the triangular condition.
fn check_triangular(generators: &[LaurentPoly], pivots: &[usize]) -> Option<usize> {
    if pivots.len() != generators.len() {
        return Some(0);
    }
    let mut allowed: Vec<usize> = Vec::new();
    for (j, (g, &v)) in generators.iter().zip(pivots).enumerate() {
        if v == 0 || v > g.nvars() || allowed.contains(&(v - 1)) {
            return Some(j);
        }
        allowed.push(v - 1);
        if !g.involves(v - 1) || g.support().iter().any(|s| !allowed.contains(s)) {
            return Some(j);
        }
    }
    None
}

/// Rank over `Q` of the Jacobian matrix `(d g_i / d x_j)` at `point`.
pub fn jacobian_rank(generators: &[LaurentPoly], point: &[BigInt]) -> Option<usize> {
    let q: Vec<BigRational> = point.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let mut rows = Vec::with_capacity(generators.len());
    for g in generators {
        let mut row = Vec::with_capacity(point.len());
        for j in 0..point.len() {
            row.push(g.derivative(j).evaluate(&q).ok()?);
        }
        let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        rows.push(row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect());
    }
    Some(bareiss_rank(rows))
}

/// Searches a few deterministic integer points for a full-rank Jacobian.
pub(crate) fn jacobian_evidence(generators: &[LaurentPoly]) -> Option<JacobianEvidence> {
    let m = generators.first()?.nvars();
    for shift in 0..16i64 {
        let point: Vec<BigInt> = (0..m as i64).map(|j| BigInt::from(2 + j + shift * (j + 1))).collect();
        if jacobian_rank(generators, &point) == Some(generators.len()) {
            return Some(JacobianEvidence { point, rank: generators.len() });
        }
    }
    None
}

/// Re-checks a certificate against two seeds with disjoint clusters.
///
/// On success the generators are algebraically independent cluster
/// variables, so they generate a polynomial (hence factorial) subalgebra, and
/// that subalgebra contains both clusters and all coefficients. Those are the
/// hypotheses under which the subalgebra is the whole cluster algebra and
/// equals the upper bound of the two clusters.
pub fn verify_polynomial_generators(cert: &GeneratorCertificate, y: &Seed, z: &Seed) -> Result<(), CertificateFailure> {
    let m = cert.nvars();
    let r = cert.generators.len();
    if cert.generator_names.len() != r || cert.sources.len() != r {
        return Err(CertificateFailure::Malformed(String::from("generator, name and source counts differ")));
    }
    if cert.generators.iter().any(|g| g.nvars() != m) || cert.targets.iter().any(|t| t.value.nvars() != m) {
        return Err(CertificateFailure::Malformed(String::from("elements live in different rings")));
    }
    let initial = Seed::initial(cert.matrix.clone());

    for ((g, src), name) in cert.generators.iter().zip(&cert.sources).zip(&cert.generator_names) {
        let mismatch = || CertificateFailure::GeneratorMismatch { name: name.clone() };
        if src.index == 0 || src.index > m {
            return Err(mismatch());
        }
        let s = initial.apply_word(&src.word).map_err(|_| mismatch())?;
        if s.entry(src.index) != g {
            return Err(mismatch());
        }
    }

    let ev = &cert.independence;
    if ev.triangular.is_none() && ev.jacobian.is_none() {
        return Err(CertificateFailure::NoEvidence);
    }
    if let Some(pivots) = &ev.triangular {
        if let Some(j) = check_triangular(&cert.generators, pivots) {
            let name = cert.generator_names.get(j).cloned().unwrap_or_default();
            return Err(CertificateFailure::TriangularSupport { name });
        }
    }
    if let Some(jac) = &ev.jacobian {
        if jac.point.len() != m {
            return Err(CertificateFailure::Malformed(String::from("Jacobian point has the wrong length")));
        }
        let got = jacobian_rank(&cert.generators, &jac.point).unwrap_or(0);
        if got != r || jac.rank != r {
            return Err(CertificateFailure::JacobianRank { got, expected: r });
        }
    }

    for t in &cert.targets {
        if t.expr.max_generator().is_some_and(|i| i >= r) || t.expr.evaluate(&cert.generators, m) != t.value {
            return Err(CertificateFailure::TargetMismatch { name: t.name.clone() });
        }
    }

    for s in [y, z] {
        if s.matrix().profile() != cert.matrix.profile() || initial.apply_word(s.word()).ok().as_ref() != Some(s) {
            return Err(CertificateFailure::ForeignSeed { word: s.word().to_vec() });
        }
    }
    if !clusters_disjoint(y, z) {
        return Err(CertificateFailure::ClustersNotDisjoint);
    }
    let covered = |v: &LaurentPoly| cert.generators.contains(v) || cert.targets.iter().any(|t| &t.value == v);
    let profile = cert.matrix.profile();
    let mut required: Vec<(String, LaurentPoly)> = Vec::new();
    for (label, s) in [("y", y), ("z", z)] {
        for (i, v) in s.mutable_entries().iter().enumerate() {
            required.push((alloc::format!("{label}_{}", i + 1), v.clone()));
        }
    }
    for i in profile.n..m {
        let x = LaurentPoly::var(m, i);
        if i < profile.p {
            let mut e = alloc::vec![0; m];
            e[i] = -1;
            required.push((alloc::format!("x{}^-1", i + 1), LaurentPoly::monomial(m, e, 1)));
        }
        required.push((alloc::format!("x{}", i + 1), x));
    }
    for (what, v) in required {
        if !covered(&v) {
            return Err(CertificateFailure::Uncovered { what });
        }
    }
    Ok(())
}
