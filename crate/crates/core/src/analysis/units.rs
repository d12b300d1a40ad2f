use alloc::vec::Vec;

use num_traits::{One, Signed};

use super::AnalysisError;
use crate::laurent::LaurentPoly;
use crate::seed::{Seed, SeedProfile};

/// A unit `sign * x_{n+1}^{a_{n+1}} ... x_p^{a_p}` of the cluster algebra.
///
/// Over a field `K` the scalar may be any element of `K^x`; with integer
/// coefficients only `+1` and `-1` occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitForm {
    pub sign: i8,
    /// Exponents of `x_{n+1} .. x_p`.
    pub exponents: Vec<i32>,
}

/// Returns the unit form of `e`, or `None` when `e` is not a unit.
pub fn classify_unit(e: &LaurentPoly, profile: &SeedProfile) -> Result<Option<UnitForm>, AnalysisError> {
    if e.is_zero() {
        return Err(AnalysisError::ZeroInput);
    }
    if !e.is_monomial() {
        return Ok(None);
    }
    let (exps, c) = e.leading_term().unwrap();
    if !c.abs().is_one() {
        return Ok(None);
    }
    let exps = exps.as_slice();
    let outside = |i: usize| i < profile.n || i >= profile.p;
    if exps.iter().enumerate().any(|(i, &a)| a != 0 && outside(i)) {
        return Ok(None);
    }
    let sign = if c.is_negative() { -1 } else { 1 };
    Ok(Some(UnitForm { sign, exponents: exps[profile.n..profile.p].to_vec() }))
}

/// True when `a = u * b` for a unit `u`.
pub fn are_associate(a: &LaurentPoly, b: &LaurentPoly, profile: &SeedProfile) -> Result<bool, AnalysisError> {
    if a.is_zero() || b.is_zero() {
        return Err(AnalysisError::ZeroInput);
    }
    if a.num_terms() != b.num_terms() {
        return Ok(false);
    }
    match a.exact_div(b) {
        Ok(q) => Ok(classify_unit(&q, profile)?.is_some()),
        Err(_) => Ok(false),
    }
}

/// True when the two clusters share no cluster variable.
///
/// Distinct cluster variables are never associate, so this is also the test
/// for non-associate clusters; debug builds check that equivalence directly.
pub fn clusters_disjoint(y: &Seed, z: &Seed) -> bool {
    let disjoint = y.mutable_entries().iter().all(|a| !z.mutable_entries().contains(a));
    debug_assert_eq!(
        disjoint,
        y.mutable_entries().iter().all(|a| {
            z.mutable_entries().iter().all(|b| !are_associate(a, b, y.matrix().profile()).unwrap_or(false))
        }),
        "structural and associate disjointness disagree"
    );
    disjoint
}

/// Applies `mu_n ... mu_2 mu_1` and reports whether the resulting cluster is
/// disjoint from the input one.
pub fn staircase_disjoint(s: &Seed) -> Result<(Seed, bool), AnalysisError> {
    let word: Vec<usize> = (1..=s.matrix().n()).collect();
    let z = s.apply_word(&word)?;
    let disjoint = clusters_disjoint(s, &z);
    Ok((z, disjoint))
}
