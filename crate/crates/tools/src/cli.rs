//! The `cluster` command line.
//!
//! Exit codes: 0 on success (a `NotFactorial` verdict is a success), 1 when
//! a verification or identity fails, 2 on usage and input errors.

use std::fs;

use clap::{Args, Parser, Subcommand};
use cluster_core::analysis::{column_criterion, gcd_criterion, laurent_membership, upper_bound_member, FactorialityVerdict, Membership};
use cluster_core::constructions::{acyclic_staircase, bfz_basis_change, verify_polynomial_generators, CartanMatrix, ConstructionError};
use cluster_core::explore::{collect_variables, Dedup, ExplorationLimits, ExploreError};
use cluster_core::laurent::{FieldTag, FractionDisplay};
use cluster_core::{RationalFn, Seed, SeedError};
use serde::Serialize;
use serde_json::json;

use crate::json::{BfzJson, CertificateJson, ExplorationJson, SeedJson, VerdictJson};
use crate::parallel::explore_parallel;
use crate::parse::{parse_cartan, parse_matrix, parse_rational, parse_word, render_with_names};
use crate::presets::{Preset, PRESET_NAMES};

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "cluster", version, about = "Exact computations with cluster algebra seeds")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SeedSource {
    /// File holding an exchange matrix (text or JSON format).
    #[arg(long)]
    matrix: Option<String>,
    /// Exchange matrix given inline, e.g. "2 2 2; 0 -2; 2 0".
    #[arg(long)]
    matrix_text: Option<String>,
    /// Initial seed of a named preset.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a mutation word to the initial seed.
    Mutate {
        #[command(flatten)]
        source: SeedSource,
        /// Comma-separated directions, applied left to right.
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Breadth-first exploration of the exchange graph.
    Explore {
        #[command(flatten)]
        source: SeedSource,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 10_000)]
        max_seeds: usize,
        /// Identify seeds up to simultaneous permutation of mutable indices.
        #[arg(long)]
        up_to_permutation: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Decide whether an expression lies in the Laurent ring of a seed.
    CheckLaurent {
        #[command(flatten)]
        source: SeedSource,
        /// Word from the initial seed to the target seed.
        #[arg(long, default_value = "")]
        word: String,
        /// Rational expression in the initial variables.
        #[arg(long)]
        expr: String,
    },
    /// Run the non-factoriality criteria.
    Factoriality {
        #[command(flatten)]
        source: SeedSource,
        /// Field for the gcd criterion: Q or C.
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: FieldTag,
    },
    /// Membership in the intersection of the Laurent rings of two seeds.
    UpperBound {
        #[command(flatten)]
        source: SeedSource,
        #[arg(long, default_value = "")]
        y_word: String,
        #[arg(long)]
        z_word: String,
        #[arg(long)]
        expr: String,
    },
    /// Staircase construction for the acyclic seed of a Cartan matrix.
    Staircase {
        /// Generalized Cartan matrix, rows separated by ';'.
        #[arg(long)]
        cartan: String,
        /// Also expand standard monomials up to this total degree.
        #[arg(long)]
        bfz_degree: Option<u32>,
    },
    /// Show a named preset.
    Preset {
        #[arg(long)]
        name: String,
        /// Run the preset's verification bundle.
        #[arg(long)]
        verify: bool,
        /// Print the preset's generator certificate as JSON.
        #[arg(long)]
        certificate: bool,
    },
    /// Run a verification bundle or re-check a certificate file.
    Verify {
        #[arg(long, conflicts_with = "certificate", required_unless_present = "certificate")]
        preset: Option<String>,
        #[arg(long)]
        certificate: Option<String>,
    },
}

fn parse_field(s: &str) -> Result<FieldTag, String> {
    match s {
        "Q" | "q" => Ok(FieldTag::Rationals),
        "C" | "c" => Ok(FieldTag::Complexes),
        _ => Err(format!("unknown field '{s}', expected Q or C")),
    }
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<SeedError> for Failure {
    fn from(e: SeedError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn input(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

type Run = Result<String, Failure>;

/// Runs the command line `args` (without the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("cluster")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return match code {
                0 => Outcome { code, stdout: text, stderr: String::new() },
                _ => Outcome { code, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Input(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Math(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("failed: {msg}\n") },
    }
}

fn dispatch(cli: &Cli) -> Run {
    let json = cli.json;
    match &cli.command {
        Command::Mutate { source, word } => mutate(&load_seed(source)?, word, json),
        Command::Explore { source, depth, max_seeds, up_to_permutation, threads } => {
            let dedup = if *up_to_permutation { Dedup::UpToPermutation } else { Dedup::Exact };
            let limits = ExplorationLimits { max_depth: *depth, max_seeds: *max_seeds, dedup };
            explore_cmd(&load_seed(source)?, limits, *threads, json)
        }
        Command::CheckLaurent { source, word, expr } => check_laurent(&load_seed(source)?, word, expr, json),
        Command::Factoriality { source, field } => factoriality(&load_seed(source)?, *field, json),
        Command::UpperBound { source, y_word, z_word, expr } => upper_bound(&load_seed(source)?, y_word, z_word, expr, json),
        Command::Staircase { cartan, bfz_degree } => staircase(cartan, *bfz_degree, json),
        Command::Preset { name, verify, certificate } => preset(name, *verify, *certificate, json),
        Command::Verify { preset: Some(name), .. } => verify_preset(&preset_by_name(name)?, json),
        Command::Verify { certificate: Some(path), .. } => verify_certificate(path, json),
        Command::Verify { .. } => Err(input("verify needs --preset or --certificate")),
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn preset_by_name(name: &str) -> Result<Preset, Failure> {
    Preset::from_name(name).ok_or_else(|| input(format!("unknown preset '{name}'; available: {}", PRESET_NAMES.join(", "))))
}

fn load_seed(src: &SeedSource) -> Result<Seed, Failure> {
    let text = match (&src.matrix, &src.matrix_text, &src.preset) {
        (Some(path), _, _) => fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))?,
        (_, Some(text), _) => text.clone(),
        (_, _, Some(name)) => return Ok(preset_by_name(name)?.seed()),
        _ => return Err(input("no seed given")),
    };
    let b = parse_matrix(&text).map_err(|e| input(format!("matrix {e}")))?;
    let violations = b.validate();
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(input(format!("invalid exchange matrix: {}", list.join("; "))));
    }
    Ok(Seed::initial(b))
}

fn word(text: &str) -> Result<Vec<usize>, Failure> {
    parse_word(text).map_err(|e| input(format!("word {e}")))
}

fn expression(text: &str, nvars: usize) -> Result<RationalFn, Failure> {
    parse_rational(text, Some(nvars)).map_err(|e| input(format!("expression {e}")))
}

fn word_text(w: &[usize]) -> String {
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn mutate(seed: &Seed, w: &str, json: bool) -> Run {
    let w = word(w)?;
    let s = seed.apply_word(&w)?;
    if json {
        return Ok(pretty(&SeedJson::from_seed(&s)));
    }
    let mut out = format!("word: {}\nmatrix:\n{}\n", word_text(&w), s.matrix());
    for (i, v) in s.cluster().iter().enumerate() {
        out += &format!("z{} = {}\n", i + 1, FractionDisplay(v));
    }
    Ok(out)
}

fn explore_cmd(seed: &Seed, limits: ExplorationLimits, threads: usize, json: bool) -> Run {
    let r = explore_parallel(seed, limits, threads).map_err(|e| match e {
        ExploreError::InvalidAfterMutation { .. } => Failure::Math(e.to_string()),
        _ => input(e),
    })?;
    if json {
        return Ok(pretty(&ExplorationJson::from_report(&r)));
    }
    let mut out = format!(
        "seeds: {}\nvariables: {}\nclusters: {}\nfinite: {} ({})\n",
        r.seeds_found(),
        r.variables.len(),
        r.clusters.len(),
        r.finite,
        r.reason
    );
    for v in collect_variables(&r) {
        out += &format!("  {v}\n");
    }
    Ok(out)
}

fn membership_json(m: &Membership, w: &[usize]) -> serde_json::Value {
    match m {
        Membership::InLz(p) => json!({ "word": w, "member": true, "value": p.to_string() }),
        Membership::NotInLz(r) => json!({ "word": w, "member": false, "value": r.to_string() }),
    }
}

fn check_laurent(seed: &Seed, w: &str, expr: &str, json: bool) -> Run {
    let w = word(w)?;
    let target = seed.apply_word(&w)?;
    let e = expression(expr, seed.matrix().m())?;
    let m = laurent_membership(&e, &target).map_err(input)?;
    if json {
        return Ok(pretty(&membership_json(&m, &w)));
    }
    Ok(match &m {
        Membership::InLz(p) => format!("Laurent in the seed at word [{}]: yes\n{} in its cluster (y_i printed as x_i)\n", word_text(&w), FractionDisplay(p)),
        Membership::NotInLz(r) => format!("Laurent in the seed at word [{}]: no\n{r} in its cluster (y_i printed as x_i)\n", word_text(&w)),
    })
}

fn factoriality(seed: &Seed, field: FieldTag, json: bool) -> Run {
    let b = seed.matrix();
    let mut verdict = column_criterion(b);
    if verdict == FactorialityVerdict::Inconclusive {
        verdict = gcd_criterion(b, field).map_err(input)?;
    }
    if let Some(w) = verdict.witness() {
        if !w.verify(b) {
            return Err(Failure::Math(format!("witness {w:?} does not verify")));
        }
    }
    let dto = VerdictJson::new(&verdict, field, b.rank());
    if json {
        return Ok(pretty(&dto));
    }
    let criterion = dto.criterion.as_deref().map(|c| format!(" ({c} criterion)")).unwrap_or_default();
    Ok(format!("{}{criterion} over {field}\n{}\nrank {}\n", dto.status, dto.justification, dto.matrix_rank))
}

fn upper_bound(seed: &Seed, y: &str, z: &str, expr: &str, json: bool) -> Run {
    let (yw, zw) = (word(y)?, word(z)?);
    let ys = seed.apply_word(&yw)?;
    let zs = seed.apply_word(&zw)?;
    let e = expression(expr, seed.matrix().m())?;
    let member = upper_bound_member(&e, &ys, &zs).map_err(input)?;
    if json {
        return Ok(pretty(&json!({ "y_word": yw, "z_word": zw, "member": member })));
    }
    let answer = if member { "yes" } else { "no" };
    Ok(format!("in the upper bound of [{}] and [{}]: {answer}\n", word_text(&yw), word_text(&zw)))
}

fn construction_failure(e: ConstructionError) -> Failure {
    match e {
        ConstructionError::InvalidCartan(_) | ConstructionError::TooSmall { .. } => input(e),
        _ => Failure::Math(e.to_string()),
    }
}

fn staircase(cartan: &str, bfz: Option<u32>, json: bool) -> Run {
    let rows = parse_cartan(cartan).map_err(|e| input(format!("Cartan matrix {e}")))?;
    let c = CartanMatrix::new(rows).map_err(construction_failure)?;
    let st = acyclic_staircase(&c).map_err(construction_failure)?;
    verify_polynomial_generators(&st.certificate, st.initial(), st.last()).map_err(|e| Failure::Math(e.to_string()))?;
    let table = bfz.map(|d| bfz_basis_change(&c, d)).transpose().map_err(construction_failure)?;
    let n = c.n();
    if json {
        let mut v = json!({
            "n": n,
            "identities_checked": st.identities_checked,
            "matrices": st.seeds.iter().map(|s| crate::json::MatrixJson::from_matrix(s.matrix())).collect::<Vec<_>>(),
            "x1": st.last().cluster()[..n].iter().map(ToString::to_string).collect::<Vec<_>>(),
            "certificate": CertificateJson::new(&st.certificate, st.initial(), st.last()),
        });
        if let Some(t) = &table {
            v["bfz"] = serde_json::to_value(BfzJson::from_table(t)).expect("serializable");
        }
        return Ok(pretty(&v));
    }
    let mut out = format!("staircase word {}\n", word_text(st.last().word()));
    for (i, s) in st.seeds.iter().enumerate() {
        out += &format!("B_{i}:\n{}\n", s.matrix());
    }
    for (k, v) in st.last().cluster()[..n].iter().enumerate() {
        out += &format!("x_{}[1] = {}\n", k + 1, FractionDisplay(v));
    }
    out += &format!("{} identity instances hold; generators certified\n", st.identities_checked);
    if let Some(t) = &table {
        out += &format!("basis change up to degree {}: {} monomials\n", t.degree_bound, t.entries.len());
        let names: Vec<String> = (1..=n).map(|k| format!("x{k}")).chain((1..=n).map(|k| format!("x{k}[1]"))).collect();
        for (k, p) in t.primes_in_generators.iter().enumerate() {
            out += &format!("x_{}' = {}\n", k + 1, render_with_names(p, &names));
        }
    }
    Ok(out)
}

fn preset(name: &str, verify: bool, certificate: bool, json: bool) -> Run {
    let p = preset_by_name(name)?;
    if certificate {
        let (cert, y, z) = p.certificate().map_err(Failure::Math)?.ok_or_else(|| input(format!("preset '{name}' has no certificate")))?;
        return Ok(pretty(&CertificateJson::new(&cert, &y, &z)));
    }
    let seed = p.seed();
    let bundle = verify.then(|| p.verify());
    let out = if json {
        let mut v = json!({ "name": p.name(), "description": p.description(), "seed": SeedJson::from_seed(&seed) });
        if let Some(b) = &bundle {
            v["verification"] = serde_json::to_value(b).expect("serializable");
        }
        pretty(&v)
    } else {
        let mut out = format!("{}: {}\n{}\n", p.name(), p.description(), seed.matrix());
        if let Some(b) = &bundle {
            out += &render_checks(b);
        }
        out
    };
    match bundle {
        Some(b) if !b.passed => Err(Failure::Math(format!("{}{}", out, first_failure(&b)))),
        _ => Ok(out),
    }
}

fn render_checks(v: &crate::presets::Verification) -> String {
    let mut out = String::new();
    for c in &v.checks {
        let tag = if c.passed { "ok" } else { "FAILED" };
        match c.detail.is_empty() {
            true => out += &format!("[{tag}] {}\n", c.name),
            false => out += &format!("[{tag}] {}: {}\n", c.name, c.detail),
        }
    }
    out
}

fn first_failure(v: &crate::presets::Verification) -> String {
    v.checks.iter().find(|c| !c.passed).map(|c| format!("check '{}' failed", c.name)).unwrap_or_default()
}

fn verify_preset(p: &Preset, json: bool) -> Run {
    let v = p.verify();
    let out = if json { pretty(&v) } else { format!("{}\n{}", p.name(), render_checks(&v)) };
    match v.passed {
        true => Ok(out),
        false => Err(Failure::Math(format!("{out}{}", first_failure(&v)))),
    }
}

fn verify_certificate(path: &str, json: bool) -> Run {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))?;
    let dto: CertificateJson = serde_json::from_str(&text).map_err(|e| input(format!("{path}: {e}")))?;
    let cert = dto.to_certificate().map_err(|e| input(format!("{path}: {e}")))?;
    let (y, z) = dto.seeds().map_err(|e| input(format!("{path}: {e}")))?;
    let result = verify_polynomial_generators(&cert, &y, &z);
    if json {
        let v = json!({
            "valid": result.is_ok(),
            "generators": cert.generators.len(),
            "targets": cert.targets.len(),
            "error": result.as_ref().err().map(ToString::to_string),
        });
        return match result {
            Ok(()) => Ok(pretty(&v)),
            Err(_) => Err(Failure::Math(pretty(&v))),
        };
    }
    match result {
        Ok(()) => Ok(format!("certificate valid: {} generators, {} targets\n", cert.generators.len(), cert.targets.len())),
        Err(e) => Err(Failure::Math(format!("certificate invalid: {e}"))),
    }
}
