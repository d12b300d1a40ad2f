//! Rewriting a Laurent polynomial as a polynomial in given generators by
//! repeatedly cancelling leading terms.
//!
//! Terms are compared lexicographically with the *last* variable most
//! significant. Each step writes the leading exponent `e` of the remainder as
//! `L a` with `L` the matrix of leading exponents of the generators, subtracts
//! the matching multiple of `prod g_i^{a_i}`, and continues until the
//! remainder vanishes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::laurent::{ExponentVector, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SubductionError {
    #[error("the generators' leading exponents do not form an invertible square matrix")]
    SingularLeadingExponents,
    #[error("leading exponent {0:?} is not a nonnegative integer combination of the generators' leading exponents")]
    NotRepresentable(Vec<i32>),
    #[error("leading coefficient is not an integer multiple of the generator product's")]
    NonIntegral,
    #[error("no result within {0} reduction steps")]
    StepLimit(usize),
}

fn last_major(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.as_slice().iter().rev().cmp(b.as_slice().iter().rev())
}

fn leading(p: &LaurentPoly) -> Option<(ExponentVector, BigInt)> {
    p.terms().max_by(|a, b| last_major(a.0, b.0)).map(|(e, c)| (e.clone(), c.clone()))
}

/// Inverse of a square integer matrix over `Q`, by Gauss-Jordan elimination.
fn invert(cols: &[Vec<i32>]) -> Option<Vec<Vec<BigRational>>> {
    let n = cols.len();
    if cols.iter().any(|c| c.len() != n) {
        return None;
    }
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    // Row i of L is (cols[0][i], ..., cols[n-1][i]); augment with the identity.
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..2 * n).map(|j| if j < n { q(cols[j][i] as i64) } else { q((j - n == i) as i64) }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, w) in a[r].iter_mut().zip(pivot_row) {
                    *v = &*v - &(&f * w);
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Expresses `target` as `sum c * prod g_i^{a_i}` and returns the terms as
/// `(c, a)` pairs, sorted by `a`.
pub fn subduction(target: &LaurentPoly, generators: &[LaurentPoly], max_steps: usize) -> Result<Vec<(BigInt, Vec<u32>)>, SubductionError> {
    let leads: Vec<(ExponentVector, BigInt)> = generators.iter().map(|g| leading(g).ok_or(SubductionError::SingularLeadingExponents)).collect::<Result<_, _>>()?;
    let cols: Vec<Vec<i32>> = leads.iter().map(|(e, _)| e.as_slice().to_vec()).collect();
    let inv = invert(&cols).ok_or(SubductionError::SingularLeadingExponents)?;
    let nv = target.nvars();
    let mut powers: Vec<Vec<LaurentPoly>> = generators.iter().map(|_| alloc::vec![LaurentPoly::one(nv)]).collect();
    let mut rest = target.clone();
    let mut out: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for _ in 0..max_steps {
        let Some((e, c)) = leading(&rest) else {
            return Ok(out.into_iter().map(|(a, c)| (c, a)).collect());
        };
        let mut a = Vec::with_capacity(generators.len());
        for row in &inv {
            let v: BigRational = row.iter().zip(e.as_slice()).map(|(r, &x)| r * BigInt::from(x)).sum();
            match (v.is_integer(), v.to_integer().to_u32()) {
                (true, Some(k)) => a.push(k),
                _ => return Err(SubductionError::NotRepresentable(e.as_slice().to_vec())),
            }
        }
        let mut lc = BigInt::one();
        for ((_, g_lc), &k) in leads.iter().zip(&a) {
            lc *= g_lc.pow(k);
        }
        let (coef, r) = c.div_rem(&lc);
        if !r.is_zero() {
            return Err(SubductionError::NonIntegral);
        }
        let mut product = LaurentPoly::one(nv);
        for (i, &k) in a.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                let next = powers[i].last().unwrap() * &generators[i];
                powers[i].push(next);
            }
            product = &product * &powers[i][k as usize];
        }
        rest = &rest - &product.scale(&coef);
        let slot = out.entry(a).or_insert_with(BigInt::zero);
        *slot += coef;
        if slot.is_zero() {
            out.retain(|_, v| !v.is_zero());
        }
    }
    Err(SubductionError::StepLimit(max_steps))
}
