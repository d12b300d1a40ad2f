//! Named worked examples and their verification bundles.

use cluster_core::analysis::{are_associate, column_criterion, gcd_criterion, FactorialityVerdict, FactorialityWitness};
use cluster_core::constructions::{
    acyclic_seed_from_cartan, acyclic_staircase, lie_preset, type_a_chain, type_a_seed, verify_polynomial_generators,
    CartanMatrix, GeneratorCertificate,
};
use cluster_core::explore::{explore, ExplorationLimits};
use cluster_core::laurent::{FieldTag, FractionDisplay, LaurentPoly};
use cluster_core::seed::{ExchangeMatrix, Seed};
use num_bigint::BigInt;
use serde::Serialize;

use crate::parse::parse_poly;

pub const PRESET_NAMES: [&str; 11] = [
    "a3",
    "lampe",
    "type-a-m2",
    "type-a-m3",
    "type-a-m4",
    "type-a-m5",
    "type-a-m6",
    "type-a-m7",
    "type-a-m8",
    "acyclic-n3",
    "lie-rank2",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    A3,
    Lampe,
    TypeA(usize),
    AcyclicN3,
    LieRank2,
}

/// One named check of a verification bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// Outcome of a verification bundle. A construction error is recorded as a
/// failed check rather than aborting the bundle.
#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub preset: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Preset {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "a3" => Some(Preset::A3),
            "lampe" => Some(Preset::Lampe),
            "acyclic-n3" => Some(Preset::AcyclicN3),
            "lie-rank2" => Some(Preset::LieRank2),
            _ => {
                let m: usize = name.strip_prefix("type-a-m")?.parse().ok()?;
                (2..=8).contains(&m).then_some(Preset::TypeA(m))
            }
        }
    }

    pub fn name(self) -> String {
        match self {
            Preset::A3 => "a3".into(),
            Preset::Lampe => "lampe".into(),
            Preset::TypeA(m) => format!("type-a-m{m}"),
            Preset::AcyclicN3 => "acyclic-n3".into(),
            Preset::LieRank2 => "lie-rank2".into(),
        }
    }

    pub fn description(self) -> String {
        match self {
            Preset::A3 => "Dynkin type A3, linearly oriented; mu_3 mu_1 gives x1 z1 = x3 z3".into(),
            Preset::Lampe => "rank 2 with B = [[0,-2],[2,0]]; not factorial over C".into(),
            Preset::TypeA(m) => format!("type A chain with m = {m}: x_1[0..{}] generate a polynomial ring", m - 1),
            Preset::AcyclicN3 => "acyclic seed from a 3x3 Cartan matrix; the staircase word 1,2,3".into(),
            Preset::LieRank2 => "rank 2 Kac-Moody preset with a six-stage mutation schedule".into(),
        }
    }

    pub fn seed(self) -> Seed {
        match self {
            Preset::A3 => Seed::initial(a3_matrix()),
            Preset::Lampe => Seed::initial(lampe_matrix()),
            Preset::TypeA(m) => type_a_seed(m).expect("m is at least 2"),
            Preset::AcyclicN3 => acyclic_seed_from_cartan(&acyclic_n3_cartan()).expect("valid Cartan matrix"),
            Preset::LieRank2 => cluster_core::constructions::lie_seed(),
        }
    }

    /// The generator certificate with its two seeds, when the preset has one.
    pub fn certificate(self) -> Result<Option<(GeneratorCertificate, Seed, Seed)>, String> {
        match self {
            Preset::A3 | Preset::Lampe => Ok(None),
            Preset::TypeA(m) => {
                let c = type_a_chain(m).map_err(|e| e.to_string())?;
                Ok(Some((c.certificate, c.seeds[0].clone(), c.seeds[1].clone())))
            }
            Preset::AcyclicN3 => {
                let st = acyclic_staircase(&acyclic_n3_cartan()).map_err(|e| e.to_string())?;
                let (y, z) = (st.initial().clone(), st.last().clone());
                Ok(Some((st.certificate, y, z)))
            }
            Preset::LieRank2 => {
                let p = lie_preset().map_err(|e| e.to_string())?;
                Ok(Some((p.certificate, p.stages[0].clone(), p.stages[6].clone())))
            }
        }
    }

    pub fn verify(self) -> Verification {
        let checks = match self {
            Preset::A3 => verify_a3(),
            Preset::Lampe => verify_lampe(),
            Preset::TypeA(m) => verify_type_a(m),
            Preset::AcyclicN3 => verify_acyclic_n3(),
            Preset::LieRank2 => verify_lie(),
        };
        let passed = checks.iter().all(|c| c.passed);
        Verification { preset: self.name(), passed, checks }
    }
}

pub fn a3_matrix() -> ExchangeMatrix {
    ExchangeMatrix::from_i64(3, 3, 3, &[&[0, -1, 0], &[1, 0, -1], &[0, 1, 0]]).unwrap()
}

pub fn lampe_matrix() -> ExchangeMatrix {
    ExchangeMatrix::from_i64(2, 2, 2, &[&[0, -2], &[2, 0]]).unwrap()
}

pub fn acyclic_n3_cartan() -> CartanMatrix {
    CartanMatrix::new(vec![vec![2, -2, 0], vec![-2, 2, -1], vec![0, -1, 2]]).unwrap()
}

fn poly(text: &str, m: usize) -> LaurentPoly {
    parse_poly(text, Some(m)).expect("built-in formula parses")
}

fn certificate_check(cert: &GeneratorCertificate, y: &Seed, z: &Seed) -> Check {
    match verify_polynomial_generators(cert, y, z) {
        Ok(()) => Check::new(
            "polynomial generators",
            true,
            format!("{} generators, {} targets expressed", cert.generators.len(), cert.targets.len()),
        ),
        Err(e) => Check::new("polynomial generators", false, e.to_string()),
    }
}

fn failed(name: &str, e: impl ToString) -> Vec<Check> {
    vec![Check::new(name, false, e.to_string())]
}

fn verify_a3() -> Vec<Check> {
    let x = Seed::initial(a3_matrix());
    let z = match x.apply_word(&[1, 3]) {
        Ok(z) => z,
        Err(e) => return failed("mutation", e),
    };
    let mut checks = Vec::new();
    let z1_expected = poly("(1 + x2)/x1", 3);
    let z3_expected = poly("(1 + x2)/x3", 3);
    checks.push(Check::new("z1 = (1 + x2)/x1", z.entry(1) == &z1_expected, FractionDisplay(z.entry(1)).to_string()));
    checks.push(Check::new("z3 = (1 + x2)/x3", z.entry(3) == &z3_expected, FractionDisplay(z.entry(3)).to_string()));
    let lhs = x.entry(1) * z.entry(1);
    let rhs = x.entry(3) * z.entry(3);
    checks.push(Check::new("x1 z1 = x3 z3", lhs == rhs, lhs.to_string()));

    let four = [x.entry(1), x.entry(3), z.entry(1), z.entry(3)];
    let profile = x.matrix().profile();
    let mut pairwise = true;
    for i in 0..4 {
        for j in i + 1..4 {
            pairwise &= !are_associate(four[i], four[j], profile).unwrap_or(true);
        }
    }
    checks.push(Check::new("x1, x3, z1, z3 pairwise non-associate", pairwise, ""));

    let b = a3_matrix();
    let v = column_criterion(&b);
    let ok = matches!(v.witness(), Some(FactorialityWitness::Columns { k: 1, s: 3, .. })) && v.witness().is_some_and(|w| w.verify(&b));
    checks.push(Check::new("column criterion witness (1,3)", ok, v.justification()));

    match explore(&x, ExplorationLimits::depth(20)) {
        Ok(r) => checks.push(Check::new(
            "exchange graph closes with 9 variables and 14 clusters",
            r.finite && r.variables.len() == 9 && r.clusters.len() == 14,
            format!("{} variables, {} clusters, {} seeds", r.variables.len(), r.clusters.len(), r.seeds_found()),
        )),
        Err(e) => checks.push(Check::new("exchange graph closes", false, e.to_string())),
    }
    checks
}

fn verify_lampe() -> Vec<Check> {
    let b = lampe_matrix();
    let mut checks = Vec::new();
    match gcd_criterion(&b, FieldTag::Complexes) {
        Ok(v) => {
            let ok = matches!(v.witness(), Some(FactorialityWitness::Gcd { k: 1, d: 2, .. })) && v.witness().is_some_and(|w| w.verify(&b));
            checks.push(Check::new("gcd criterion over C: k = 1, d = 2", ok, v.justification()));
        }
        Err(e) => checks.push(Check::new("gcd criterion over C", false, e.to_string())),
    }
    match gcd_criterion(&b, FieldTag::Rationals) {
        Ok(v) => checks.push(Check::new("gcd criterion over Q is inconclusive", v == FactorialityVerdict::Inconclusive, v.justification())),
        Err(e) => checks.push(Check::new("gcd criterion over Q", false, e.to_string())),
    }
    checks.push(Check::new("column criterion is inconclusive", column_criterion(&b) == FactorialityVerdict::Inconclusive, ""));
    checks.push(Check::new("matrix has full rank 2", b.rank() == 2, format!("rank {}", b.rank())));
    checks
}

fn verify_type_a(m: usize) -> Vec<Check> {
    let c = match type_a_chain(m) {
        Ok(c) => c,
        Err(e) => return failed("chain identities", e),
    };
    vec![
        Check::new("chain identities", true, format!("{} instances", c.identities_checked)),
        certificate_check(&c.certificate, &c.seeds[0], &c.seeds[1]),
    ]
}

/// The matrices `B_1, B_2, B_3` in the block form printed for `n = 3`,
/// instantiated at the principal part `b` of `B_0`.
fn staircase_shapes(b: &ExchangeMatrix) -> [Vec<Vec<BigInt>>; 3] {
    let e = |i: usize, j: usize| b.get(i - 1, j - 1).clone();
    let z = BigInt::from(0);
    let one = BigInt::from(1);
    let b1 = vec![
        vec![z.clone(), -e(1, 2), -e(1, 3)],
        vec![-e(2, 1), z.clone(), e(2, 3)],
        vec![-e(3, 1), e(3, 2), z.clone()],
        vec![-one.clone(), z.clone(), z.clone()],
        vec![z.clone(), one.clone(), -e(2, 3)],
        vec![z.clone(), z.clone(), one.clone()],
    ];
    let b2 = vec![
        vec![z.clone(), e(1, 2), -e(1, 3)],
        vec![e(2, 1), z.clone(), -e(2, 3)],
        vec![-e(3, 1), -e(3, 2), z.clone()],
        vec![-one.clone(), z.clone(), z.clone()],
        vec![-e(2, 1), -one.clone(), z.clone()],
        vec![z.clone(), z.clone(), one.clone()],
    ];
    let b3 = vec![
        vec![z.clone(), e(1, 2), e(1, 3)],
        vec![e(2, 1), z.clone(), e(2, 3)],
        vec![e(3, 1), e(3, 2), z.clone()],
        vec![-one.clone(), z.clone(), z.clone()],
        vec![-e(2, 1), -one.clone(), z.clone()],
        vec![-e(3, 1), -e(3, 2), -one],
    ];
    [b1, b2, b3]
}

fn verify_acyclic_n3() -> Vec<Check> {
    let st = match acyclic_staircase(&acyclic_n3_cartan()) {
        Ok(st) => st,
        Err(e) => return failed("staircase identities", e),
    };
    let mut checks = vec![Check::new("staircase identities", true, format!("{} instances", st.identities_checked))];
    let b0 = st.initial().matrix();
    let printed = ExchangeMatrix::from_i64(3, 3, 6, &[&[0, 2, 0], &[-2, 0, 1], &[0, -1, 0], &[1, -2, 0], &[0, 1, -1], &[0, 0, 1]]).unwrap();
    checks.push(Check::new("B_0 is the printed matrix", *b0 == printed, b0.to_string().replace('\n', "; ")));
    checks.push(Check::new("B_0 is acyclic", b0.is_acyclic(), ""));
    for (i, shape) in staircase_shapes(b0).into_iter().enumerate() {
        let got = st.seeds[i + 1].matrix();
        checks.push(Check::new(format!("B_{} has the printed block form", i + 1), got.rows() == shape, got.to_string().replace('\n', "; ")));
    }
    let formulas = [
        ("x_1[1]", "(x2^2 + x4)/x1"),
        ("x_2[1]", "(x2^4*x3 + 2*x2^2*x3*x4 + x3*x4^2 + x1^2*x5)/(x1^2*x2)"),
        ("x_3[1]", "(x2^4*x3 + 2*x2^2*x3*x4 + x3*x4^2 + x1^2*x5 + x1^2*x2*x6)/(x1^2*x2*x3)"),
    ];
    for (k, (name, text)) in formulas.iter().enumerate() {
        let got = st.last().entry(k + 1);
        checks.push(Check::new(format!("{name} = {text}"), *got == poly(text, 6), FractionDisplay(got).to_string()));
    }
    checks.push(certificate_check(&st.certificate, st.initial(), st.last()));
    checks
}

fn verify_lie() -> Vec<Check> {
    let p = match lie_preset() {
        Ok(p) => p,
        Err(e) => return failed("six-stage schedule", e),
    };
    let entries = p.stages.iter().flat_map(|s| s.cluster()).count();
    vec![
        Check::new("six-stage schedule", p.stages.len() == 7, format!("{entries} entries, at most {} terms", p.max_terms)),
        Check::new("stage composition equals the concatenated word", p.stages[0].apply_word(&p.word()).ok().as_ref() == Some(&p.stages[6]), ""),
        Check::new("x[0] and x[6] are disjoint", cluster_core::analysis::clusters_disjoint(&p.stages[0], &p.stages[6]), ""),
        certificate_check(&p.certificate, &p.stages[0], &p.stages[6]),
    ]
}
