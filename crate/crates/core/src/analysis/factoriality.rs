use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::AnalysisError;
use crate::laurent::{xd_plus_one_witness, FieldTag, LaurentPoly, ReducibilityWitness};
use crate::seed::{ExchangeMatrix, Seed};

/// Why a cluster algebra is not factorial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorialityWitness {
    /// Columns `k` and `s` agree up to sign and `b_ks = 0`, so
    /// `x_k z_k = x_s z_s` with four pairwise non-associate irreducibles.
    Columns { k: usize, s: usize, same_sign: bool },
    /// Column `k` has gcd `d` and `X^d + 1` is reducible over `field`, which
    /// splits the exchange binomial `M^d + N^d` into at least two factors.
    Gcd { k: usize, d: u64, field: FieldTag, reducibility: ReducibilityWitness },
}

/// The criteria prove non-factoriality or say nothing; they never certify
/// factoriality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorialityVerdict {
    NotFactorial(FactorialityWitness),
    Inconclusive,
}

impl FactorialityVerdict {
    pub fn is_not_factorial(&self) -> bool {
        matches!(self, FactorialityVerdict::NotFactorial(_))
    }

    pub fn witness(&self) -> Option<&FactorialityWitness> {
        match self {
            FactorialityVerdict::NotFactorial(w) => Some(w),
            FactorialityVerdict::Inconclusive => None,
        }
    }

    /// One-line justification naming the criterion and its trigger.
    pub fn justification(&self) -> String {
        match self {
            FactorialityVerdict::Inconclusive => String::from("neither criterion applies"),
            FactorialityVerdict::NotFactorial(FactorialityWitness::Columns { k, s, same_sign }) => {
                let rel = if *same_sign { "=" } else { "= -" };
                format!("c_{k}(B) {rel}c_{s}(B) and b_{k}{s} = 0, so x_{k} x_{k}' = x_{s} x_{s}'")
            }
            FactorialityVerdict::NotFactorial(FactorialityWitness::Gcd { k, d, field, .. }) => {
                format!("column {k} has gcd d = {d} and X^{d} + Y^{d} is reducible over {field}")
            }
        }
    }
}

impl FactorialityWitness {
    /// Recomputes the defining condition of the witness on `b`.
    pub fn verify(&self, b: &ExchangeMatrix) -> bool {
        let n = b.n();
        match *self {
            FactorialityWitness::Columns { k, s, same_sign } => {
                if k == s || k == 0 || s == 0 || k > n || s > n || !b.get(k - 1, s - 1).is_zero() {
                    return false;
                }
                let (ck, cs) = (b.column(k - 1), b.column(s - 1));
                if same_sign {
                    ck == cs
                } else {
                    ck.iter().zip(&cs).all(|(a, c)| *a == -c)
                }
            }
            FactorialityWitness::Gcd { k, d, field, reducibility } => {
                if k == 0 || k > n || column_gcd(b, k - 1).and_then(|g| g.to_u64()) != Some(d) {
                    return false;
                }
                if xd_plus_one_witness(d, field) != Some(reducibility) {
                    return false;
                }
                match reducibility {
                    ReducibilityWitness::RationalFactor { factor_degree } => binomial_factor_divides(b, k, d, factor_degree),
                    ReducibilityWitness::SplitsOverComplexes => d >= 2,
                }
            }
        }
    }
}

/// Checks that `M^e + N^e` divides the exchange binomial `M^d + N^d` of
/// direction `k`, with `M`, `N` the `d`-th roots of its two monomials.
fn binomial_factor_divides(b: &ExchangeMatrix, k: usize, d: u64, e: u64) -> bool {
    let m = b.m();
    let root = |positive: bool| {
        let exps: Vec<i32> = b
            .column(k - 1)
            .iter()
            .map(|v| {
                let keep = if positive { v > &BigInt::zero() } else { v < &BigInt::zero() };
                if keep {
                    (v.magnitude() / d).to_i32().unwrap_or(i32::MAX)
                } else {
                    0
                }
            })
            .collect();
        LaurentPoly::monomial(m, exps, 1)
    };
    let (mr, nr) = (root(true), root(false));
    let (Ok(e32), Ok(d32)) = (u32::try_from(e), u32::try_from(d)) else {
        return false;
    };
    let factor = &mr.pow(e32) + &nr.pow(e32);
    let (m1, m2) = Seed::initial(b.clone()).exchange_monomials(k);
    let binomial = &m1 + &m2;
    binomial == &mr.pow(d32) + &nr.pow(d32) && binomial.exact_div(&factor).is_ok() && e < d
}

/// Column criterion: columns `k != s` equal up to sign with `b_ks = 0`.
pub fn column_criterion(b: &ExchangeMatrix) -> FactorialityVerdict {
    let n = b.n();
    let columns: Vec<Vec<BigInt>> = (0..n).map(|j| b.column(j)).collect();
    for k in 0..n {
        for s in k + 1..n {
            if !b.get(k, s).is_zero() {
                continue;
            }
            let same = columns[k] == columns[s];
            let opposite = columns[k].iter().zip(&columns[s]).all(|(a, c)| *a == -c);
            if same || opposite {
                return FactorialityVerdict::NotFactorial(FactorialityWitness::Columns { k: k + 1, s: s + 1, same_sign: same });
            }
        }
    }
    FactorialityVerdict::Inconclusive
}

fn column_gcd(b: &ExchangeMatrix, j: usize) -> Option<BigInt> {
    b.column(j).iter().filter(|v| !v.is_zero()).fold(None, |acc, v| match acc {
        None => Some(v.magnitude().clone().into()),
        Some(g) => Some(g.gcd(v)),
    })
}

/// Gcd criterion: some column gcd `d` makes `X^d + 1` reducible over `field`.
pub fn gcd_criterion(b: &ExchangeMatrix, field: FieldTag) -> Result<FactorialityVerdict, AnalysisError> {
    for j in 0..b.n() {
        let d = column_gcd(b, j).ok_or(AnalysisError::DegenerateColumn { k: j + 1 })?;
        let Some(d) = d.to_u64() else {
            continue;
        };
        if let Some(reducibility) = xd_plus_one_witness(d, field) {
            return Ok(FactorialityVerdict::NotFactorial(FactorialityWitness::Gcd { k: j + 1, d, field, reducibility }));
        }
    }
    Ok(FactorialityVerdict::Inconclusive)
}
