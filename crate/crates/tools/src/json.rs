//! JSON data transfer objects. Field names are the stable wire schema
//! documented in `docs/json-schema.md`.

use cluster_core::analysis::{FactorialityVerdict, FactorialityWitness};
use cluster_core::constructions::{
    BfzTable, Expr, GeneratorCertificate, GeneratorSource, IndependenceEvidence, JacobianEvidence, Target,
};
use cluster_core::explore::ExplorationReport;
use cluster_core::laurent::{FieldTag, LaurentPoly, ReducibilityWitness};
use cluster_core::seed::{ExchangeMatrix, Seed, SeedProfile};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::parse::parse_poly;

/// An integer that serializes as a JSON number when it fits in `i64` and as
/// a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Int(v.into())),
            Raw::Text(t) => t.trim().parse().map(Int).map_err(|_| serde::de::Error::custom(format!("not an integer: {t}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub p: usize,
    pub m: usize,
    pub rows: Vec<Vec<Int>>,
}

impl MatrixJson {
    pub fn from_matrix(b: &ExchangeMatrix) -> Self {
        let SeedProfile { n, p, m, .. } = *b.profile();
        let rows = b.rows().into_iter().map(|r| r.into_iter().map(Int).collect()).collect();
        MatrixJson { n, p, m, rows }
    }

    pub fn to_matrix(&self) -> Result<ExchangeMatrix, String> {
        if !(self.m >= self.p && self.p >= self.n && self.n >= 1) {
            return Err(format!("dimensions must satisfy m >= p >= n >= 1, got n={} p={} m={}", self.n, self.p, self.m));
        }
        let rows = self.rows.iter().map(|r| r.iter().map(|v| v.0.clone()).collect()).collect();
        ExchangeMatrix::new(SeedProfile::new(self.n, self.p, self.m), rows).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub word: Vec<usize>,
    pub matrix: MatrixJson,
    pub cluster: Vec<String>,
}

impl SeedJson {
    pub fn from_seed(s: &Seed) -> Self {
        SeedJson {
            word: s.word().to_vec(),
            matrix: MatrixJson::from_matrix(s.matrix()),
            cluster: s.cluster().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationJson {
    pub seeds_found: usize,
    pub max_depth_reached: usize,
    pub variable_count: usize,
    pub cluster_count: usize,
    pub finite: bool,
    pub reason: String,
    pub variables: Vec<String>,
    pub clusters: Vec<Vec<usize>>,
}

impl ExplorationJson {
    pub fn from_report(r: &ExplorationReport) -> Self {
        ExplorationJson {
            seeds_found: r.seeds_found(),
            max_depth_reached: r.depths.iter().copied().max().unwrap_or(0),
            variable_count: r.variables.len(),
            cluster_count: r.clusters.len(),
            finite: r.finite,
            reason: r.reason.to_string(),
            variables: r.variables.iter().map(ToString::to_string).collect(),
            clusters: r.clusters.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub same_sign: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    /// Degree `e` of the proper factor `X^e + 1` when the field is `Q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_degree: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    /// `"NotFactorial"` or `"Inconclusive"`.
    pub status: String,
    /// `"columns"` or `"gcd"`; absent when inconclusive.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<String>,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    pub justification: String,
    pub matrix_rank: usize,
}

impl VerdictJson {
    pub fn new(v: &FactorialityVerdict, field: FieldTag, rank: usize) -> Self {
        let (status, criterion, witness) = match v.witness() {
            None => ("Inconclusive", None, None),
            Some(&FactorialityWitness::Columns { k, s, same_sign }) => (
                "NotFactorial",
                Some("columns"),
                Some(WitnessJson { k, s: Some(s), same_sign: Some(same_sign), d: None, factor_degree: None }),
            ),
            Some(&FactorialityWitness::Gcd { k, d, reducibility, .. }) => {
                let factor_degree = match reducibility {
                    ReducibilityWitness::RationalFactor { factor_degree } => Some(factor_degree),
                    ReducibilityWitness::SplitsOverComplexes => None,
                };
                ("NotFactorial", Some("gcd"), Some(WitnessJson { k, s: None, same_sign: None, d: Some(d), factor_degree }))
            }
        };
        VerdictJson {
            status: status.into(),
            criterion: criterion.map(Into::into),
            field: field.to_string(),
            witness,
            justification: v.justification(),
            matrix_rank: rank,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub value: String,
    pub word: Vec<usize>,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianJson {
    pub point: Vec<Int>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetJson {
    pub name: String,
    pub value: String,
    pub expr: String,
}

/// A generator certificate together with the words of the two disjoint
/// seeds it is checked against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub matrix: MatrixJson,
    pub y_word: Vec<usize>,
    pub z_word: Vec<usize>,
    pub generators: Vec<GeneratorJson>,
    pub triangular: Option<Vec<usize>>,
    pub jacobian: Option<JacobianJson>,
    pub targets: Vec<TargetJson>,
}

impl CertificateJson {
    pub fn new(c: &GeneratorCertificate, y: &Seed, z: &Seed) -> Self {
        let generators = c
            .generator_names
            .iter()
            .zip(&c.generators)
            .zip(&c.sources)
            .map(|((name, g), src)| GeneratorJson { name: name.clone(), value: g.to_string(), word: src.word.clone(), index: src.index })
            .collect();
        let targets = c
            .targets
            .iter()
            .map(|t| TargetJson { name: t.name.clone(), value: t.value.to_string(), expr: t.expr.to_prefix(&c.generator_names) })
            .collect();
        CertificateJson {
            matrix: MatrixJson::from_matrix(&c.matrix),
            y_word: y.word().to_vec(),
            z_word: z.word().to_vec(),
            generators,
            triangular: c.independence.triangular.clone(),
            jacobian: c.independence.jacobian.as_ref().map(|j| JacobianJson { point: j.point.iter().cloned().map(Int).collect(), rank: j.rank }),
            targets,
        }
    }

    /// Rebuilds the certificate; polynomial texts and expressions are parsed,
    /// nothing is checked beyond well-formedness.
    pub fn to_certificate(&self) -> Result<GeneratorCertificate, String> {
        let matrix = self.matrix.to_matrix()?;
        let m = matrix.m();
        let poly = |what: &str, t: &str| parse_poly(t, Some(m)).map_err(|e| format!("{what}: {e}"));
        let generator_names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let generators = self.generators.iter().map(|g| poly(&g.name, &g.value)).collect::<Result<Vec<LaurentPoly>, _>>()?;
        let sources = self.generators.iter().map(|g| GeneratorSource { word: g.word.clone(), index: g.index }).collect();
        let mut targets = Vec::with_capacity(self.targets.len());
        for t in &self.targets {
            let expr = Expr::parse_prefix(&t.expr, &generator_names).map_err(|e| format!("{}: {e}", t.name))?;
            targets.push(Target { name: t.name.clone(), value: poly(&t.name, &t.value)?, expr });
        }
        let independence = IndependenceEvidence {
            triangular: self.triangular.clone(),
            jacobian: self.jacobian.as_ref().map(|j| JacobianEvidence { point: j.point.iter().map(|v| v.0.clone()).collect(), rank: j.rank }),
        };
        Ok(GeneratorCertificate { matrix, generator_names, generators, sources, independence, targets })
    }

    /// The seeds `y` and `z`, replayed from the certificate's matrix.
    pub fn seeds(&self) -> Result<(Seed, Seed), String> {
        let initial = Seed::initial(self.matrix.to_matrix()?);
        let y = initial.apply_word(&self.y_word).map_err(|e| e.to_string())?;
        let z = initial.apply_word(&self.z_word).map_err(|e| e.to_string())?;
        Ok((y, z))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfzEntryJson {
    pub exponents: Vec<u32>,
    pub expansion: String,
}

/// Basis-change table. Expansions are written in `x1..x{2n}` standing for
/// the generators `x_1..x_n, x_1[1]..x_n[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfzJson {
    pub n: usize,
    pub degree_bound: u32,
    pub primes: Vec<String>,
    pub coefficients_in_generators: Vec<String>,
    pub primes_in_generators: Vec<String>,
    pub entries: Vec<BfzEntryJson>,
}

impl BfzJson {
    pub fn from_table(t: &BfzTable) -> Self {
        let text = |v: &[LaurentPoly]| v.iter().map(ToString::to_string).collect();
        BfzJson {
            n: t.n,
            degree_bound: t.degree_bound,
            primes: text(&t.primes),
            coefficients_in_generators: text(&t.coefficients_in_generators),
            primes_in_generators: text(&t.primes_in_generators),
            entries: t.entries.iter().map(|e| BfzEntryJson { exponents: e.exponents.clone(), expansion: e.expansion.to_string() }).collect(),
        }
    }
}
