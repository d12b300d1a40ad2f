use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::SeedError;

/// The integers `n <= p <= m` of a seed plus display names for `x1..xm`.
///
/// Indices `1..=n` are mutable, `n+1..=p` are invertible coefficients and
/// `p+1..=m` are non-invertible coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeedProfile {
    pub n: usize,
    pub p: usize,
    pub m: usize,
    pub names: Vec<String>,
}

impl SeedProfile {
    pub fn new(n: usize, p: usize, m: usize) -> Self {
        let names = (1..=m).map(|i| format!("x{i}")).collect();
        SeedProfile { n, p, m, names }
    }

    pub fn bounds_hold(&self) -> bool {
        self.m >= self.p && self.p >= self.n && self.n >= 1 && self.m > 1
    }
}

/// A violated seed condition, as reported by [`ExchangeMatrix::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `m >= p >= n >= 1` fails.
    ProfileBounds { n: usize, p: usize, m: usize },
    /// `m = 1` gives the trivial algebra with the degenerate exchange `x x' = 2`.
    SingleVariable,
    /// The graph on `1..=m` linking `i` and `j` when `b_ij` or `b_ji` is nonzero
    /// has more than one component.
    Disconnected { components: usize },
    /// No positive diagonal `D` makes `D B°` skew-symmetric.
    NotSkewSymmetrizable,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ProfileBounds { n, p, m } => write!(f, "profile (n, p, m) = ({n}, {p}, {m}) violates m >= p >= n >= 1"),
            Violation::SingleVariable => f.write_str("m = 1 gives the trivial cluster algebra"),
            Violation::Disconnected { components } => write!(f, "exchange matrix is not connected ({components} components)"),
            Violation::NotSkewSymmetrizable => f.write_str("principal part is not skew-symmetrizable"),
        }
    }
}

/// An `m x n` integer exchange matrix together with its profile.
///
/// Construction checks only the shape; the seed conditions are checked by
/// [`ExchangeMatrix::validate`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExchangeMatrix {
    profile: SeedProfile,
    entries: Vec<BigInt>,
}

impl ExchangeMatrix {
    pub fn new(profile: SeedProfile, rows: Vec<Vec<BigInt>>) -> Result<Self, SeedError> {
        if profile.names.len() != profile.m {
            return Err(SeedError::Shape(format!("{} names for {} variables", profile.names.len(), profile.m)));
        }
        if rows.len() != profile.m {
            return Err(SeedError::Shape(format!("expected {} rows, got {}", profile.m, rows.len())));
        }
        let mut entries = Vec::with_capacity(profile.m * profile.n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != profile.n {
                return Err(SeedError::Shape(format!("row {} has {} entries, expected {}", i + 1, row.len(), profile.n)));
            }
            entries.extend(row);
        }
        Ok(ExchangeMatrix { profile, entries })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(n: usize, p: usize, m: usize, rows: &[&[i64]]) -> Result<Self, SeedError> {
        let rows = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        Self::new(SeedProfile::new(n, p, m), rows)
    }

    pub fn profile(&self) -> &SeedProfile {
        &self.profile
    }

    pub fn n(&self) -> usize {
        self.profile.n
    }

    pub fn m(&self) -> usize {
        self.profile.m
    }

    /// Entry `b_{i+1, j+1}` (zero-based indices).
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.profile.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.profile.n).map(<[BigInt]>::to_vec).collect()
    }

    /// Column `j` (zero-based) as a vector of length `m`.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.profile.m).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    fn check_index(&self, k: usize) -> Result<(), SeedError> {
        if k == 0 || k > self.profile.n {
            Err(SeedError::IndexOutOfRange { k, n: self.profile.n })
        } else {
            Ok(())
        }
    }

    /// Reports every violated seed condition; an empty list means the matrix is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let SeedProfile { n, p, m, .. } = self.profile;
        let mut out = Vec::new();
        if !(m >= p && p >= n && n >= 1) {
            out.push(Violation::ProfileBounds { n, p, m });
        }
        if m <= 1 {
            out.push(Violation::SingleVariable);
        }
        let components = self.connected_components();
        if components > 1 {
            out.push(Violation::Disconnected { components });
        }
        if n <= m && self.skew_symmetrizer().is_none() {
            out.push(Violation::NotSkewSymmetrizable);
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn connected_components(&self) -> usize {
        let m = self.profile.m;
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..m {
            for j in 0..self.profile.n {
                if !self.get(i, j).is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        (0..m).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// Minimal positive integers `d_1..d_n` with `d_i b_ij = -d_j b_ji` on the
    /// principal part, or `None` if none exist.
    ///
    /// Ratios are propagated along the graph of the principal part; each
    /// connected component is scaled to coprime integers independently.
    pub fn skew_symmetrizer(&self) -> Option<Vec<BigInt>> {
        let n = self.profile.n;
        if n > self.profile.m {
            return None;
        }
        let mut d: Vec<Option<BigRational>> = vec![None; n];
        let mut component = vec![usize::MAX; n];
        for i in 0..n {
            if !self.get(i, i).is_zero() {
                return None;
            }
        }
        for root in 0..n {
            if d[root].is_some() {
                continue;
            }
            d[root] = Some(BigRational::one());
            component[root] = root;
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                let di = d[i].clone().unwrap();
                for j in 0..n {
                    let (bij, bji) = (self.get(i, j), self.get(j, i));
                    if bij.is_zero() && bji.is_zero() {
                        continue;
                    }
                    // d_i b_ij = -d_j b_ji needs opposite nonzero signs.
                    if bij.is_zero() || bji.is_zero() || bij.signum() == bji.signum() {
                        return None;
                    }
                    let dj = &di * BigRational::new(bij.clone(), -bji.clone());
                    match &d[j] {
                        Some(existing) if *existing != dj => return None,
                        Some(_) => {}
                        None => {
                            d[j] = Some(dj);
                            component[j] = root;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        let mut scale: BTreeMap<usize, (BigInt, BigInt)> = BTreeMap::new();
        for (i, v) in d.iter().enumerate() {
            let v = v.as_ref().unwrap();
            let entry = scale.entry(component[i]).or_insert((BigInt::one(), BigInt::zero()));
            entry.0 = entry.0.lcm(v.denom());
        }
        for (i, v) in d.iter().enumerate() {
            let v = v.as_ref().unwrap();
            let entry = scale.get_mut(&component[i]).unwrap();
            let scaled = v.numer() * (&entry.0 / v.denom());
            entry.1 = entry.1.gcd(&scaled);
        }
        Some(
            d.iter()
                .enumerate()
                .map(|(i, v)| {
                    let v = v.as_ref().unwrap();
                    let (l, g) = &scale[&component[i]];
                    v.numer() * (l / v.denom()) / g
                })
                .collect(),
        )
    }

    /// Matrix mutation in direction `k` (one-based).
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        self.check_index(k)?;
        let k = k - 1;
        let (m, n) = (self.profile.m, self.profile.n);
        let mut entries = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                let b = self.get(i, j);
                let v = if i == k || j == k {
                    -b
                } else {
                    let (bik, bkj) = (self.get(i, k), self.get(k, j));
                    b + (bik.abs() * bkj + bik * bkj.abs()) / 2
                };
                entries.push(v);
            }
        }
        Ok(ExchangeMatrix { profile: self.profile.clone(), entries })
    }

    /// Rank over `Q`, by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let rows = self.rows();
        bareiss_rank(rows)
    }

    /// The top `n x n` block.
    pub fn principal_part(&self) -> Vec<Vec<BigInt>> {
        self.rows().into_iter().take(self.profile.n).collect()
    }

    /// Applies a simultaneous permutation to the mutable indices: entry `i`
    /// of `perm` is the new position of index `i` (zero-based).
    pub fn permute_mutable(&self, perm: &[usize]) -> Self {
        let (m, n) = (self.profile.m, self.profile.n);
        let mut entries = vec![BigInt::zero(); m * n];
        for i in 0..m {
            let ni = if i < n { perm[i] } else { i };
            for j in 0..n {
                entries[ni * n + perm[j]] = self.get(i, j).clone();
            }
        }
        ExchangeMatrix { profile: self.profile.clone(), entries }
    }
}

/// Rank of an integer matrix by Bareiss elimination with row pivoting.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let SeedProfile { n, p, m, .. } = &self.profile;
        writeln!(f, "{n} {p} {m}")?;
        for (i, row) in self.entries.chunks(*n).enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}
