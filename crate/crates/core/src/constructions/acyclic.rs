use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::certificate::{jacobian_evidence, triangular_evidence};
use super::{ConstructionError, Expr, GeneratorCertificate, GeneratorSource, Identity, IndependenceEvidence, Target};
use crate::analysis::clusters_disjoint;
use crate::laurent::{KernelError, LaurentPoly};
use crate::seed::{ExchangeMatrix, Seed, SeedProfile};

/// A generalized Cartan matrix: `c_ii = 2`, `c_ij <= 0` off the diagonal,
/// `c_ij = 0` exactly when `c_ji = 0`, and `DC` symmetric for a positive
/// diagonal `D`. It must also be indecomposable, so that the seed built from
/// it is connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    rows: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, ConstructionError> {
        let n = rows.len();
        let bad = |msg: String| Err(ConstructionError::InvalidCartan(msg));
        if n == 0 {
            return bad(String::from("empty matrix"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {} has {} entries, expected {n}", i + 1, row.len()));
            }
            if row[i] != 2 {
                return bad(format!("c_{0}{0} = {1}, expected 2", i + 1, row[i]));
            }
            for (j, &c) in row.iter().enumerate() {
                if i != j && c > 0 {
                    return bad(format!("c_{}{} = {c} is positive", i + 1, j + 1));
                }
                if i != j && (c == 0) != (rows[j][i] == 0) {
                    return bad(format!("c_{0}{1} and c_{1}{0} must vanish together", i + 1, j + 1));
                }
            }
        }
        let c = CartanMatrix { rows };
        let principal = ExchangeMatrix::from_i64(n, n, n, &c.principal_rows().iter().map(Vec::as_slice).collect::<Vec<_>>())?;
        if principal.skew_symmetrizer().is_none() {
            return bad(String::from("not symmetrizable"));
        }
        if n > 1 && !principal.is_valid() {
            return bad(String::from("decomposable"));
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `b_ij = -c_ij` above the diagonal, `c_ij` below it.
    fn principal_rows(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        core::cmp::Ordering::Less => -self.rows[i][j],
                        core::cmp::Ordering::Equal => 0,
                        core::cmp::Ordering::Greater => self.rows[i][j],
                    })
                    .collect()
            })
            .collect()
    }
}

/// The acyclic seed of a Cartan matrix: `m = 2n`, `p = n`, principal part
/// from the off-diagonal Cartan entries, and frozen row `n + j` equal to
/// `(0, ..., 0, 1, c_{j,j+1}, ..., c_{j,n})`.
pub fn acyclic_seed_from_cartan(c: &CartanMatrix) -> Result<Seed, ConstructionError> {
    let n = c.n();
    let mut rows = c.principal_rows();
    for j in 0..n {
        let row = (0..n)
            .map(|k| match k.cmp(&j) {
                core::cmp::Ordering::Less => 0,
                core::cmp::Ordering::Equal => 1,
                core::cmp::Ordering::Greater => c.get(j, k),
            })
            .collect();
        rows.push(row);
    }
    let rows = rows.into_iter().map(|r: Vec<i64>| r.into_iter().map(BigInt::from).collect()).collect();
    Ok(Seed::initial(ExchangeMatrix::new(SeedProfile::new(n, n, 2 * n), rows)?))
}

/// Result of the staircase word `mu_n ... mu_1` on an acyclic seed.
#[derive(Clone, Debug)]
pub struct Staircase {
    /// `seeds[i]` is `mu_i ... mu_1 (x, B)`, so its matrix is `B_i`.
    pub seeds: Vec<Seed>,
    pub identities_checked: usize,
    pub certificate: GeneratorCertificate,
}

impl Staircase {
    pub fn initial(&self) -> &Seed {
        &self.seeds[0]
    }

    /// The seed `(x[1], B[1])`.
    pub fn last(&self) -> &Seed {
        self.seeds.last().unwrap()
    }
}

fn entry_u32(v: &BigInt) -> u32 {
    v.abs().to_u32().expect("exchange matrix entry too large for an exponent")
}

/// `B_i` predicted from `B_{i-1}`: flip the sign of row and column `i` of the
/// principal part and replace row `n + i` by `(-b_i1, ..., -b_{i,i-1}, -1, 0, ..., 0)`.
fn predicted_step(prev: &ExchangeMatrix, b: &ExchangeMatrix, i: usize) -> Vec<Vec<BigInt>> {
    let n = b.n();
    let mut rows = prev.rows();
    for j in 0..n {
        if j != i {
            rows[i][j] = -&rows[i][j];
            rows[j][i] = -&rows[j][i];
        }
    }
    rows[n + i] = (0..n)
        .map(|j| match j.cmp(&i) {
            core::cmp::Ordering::Less => -b.get(i, j),
            core::cmp::Ordering::Equal => BigInt::from(-1),
            core::cmp::Ordering::Greater => BigInt::zero(),
        })
        .collect();
    rows
}

/// `prod_{i<k} vals_i^{b_ik}` with `k` zero-based.
fn lower_product(b: &ExchangeMatrix, k: usize, vals: &[LaurentPoly], nv: usize) -> LaurentPoly {
    (0..k).fold(LaurentPoly::one(nv), |acc, i| match entry_u32(b.get(i, k)) {
        0 => acc,
        e => &acc * &vals[i].pow(e),
    })
}

/// `prod_{i>k} vals_i^{-b_ik}` with `k` zero-based.
fn upper_product(b: &ExchangeMatrix, k: usize, vals: &[LaurentPoly], nv: usize) -> LaurentPoly {
    (k + 1..b.n()).fold(LaurentPoly::one(nv), |acc, i| match entry_u32(b.get(i, k)) {
        0 => acc,
        e => &acc * &vals[i].pow(e),
    })
}

/// `prod_{i<k} before_i^{b_ik} * prod_{i>k} after_i^{-b_ik}`.
fn staircase_monomial(b: &ExchangeMatrix, k: usize, before: &[LaurentPoly], after: &[LaurentPoly], nv: usize) -> LaurentPoly {
    &lower_product(b, k, before, nv) * &upper_product(b, k, after, nv)
}

/// Applies `mu_n ... mu_1`, checks every intermediate matrix against its
/// predicted shape and the staircase identities, and certifies
/// `x_1, ..., x_n, x_1[1], ..., x_n[1]` as polynomial generators.
pub fn acyclic_staircase(c: &CartanMatrix) -> Result<Staircase, ConstructionError> {
    let seed = acyclic_seed_from_cartan(c)?;
    let b = seed.matrix().clone();
    let n = b.n();
    let nv = 2 * n;
    let mut seeds = alloc::vec![seed];
    for i in 1..=n {
        let next = seeds[i - 1].mutate(i)?;
        if next.matrix().rows() != predicted_step(seeds[i - 1].matrix(), &b, i - 1) {
            return Err(ConstructionError::IdentityFailure { identity: Identity::StaircaseMatrix, at: alloc::vec![i] });
        }
        seeds.push(next);
    }
    let mut checked = n;
    let last = seeds.last().unwrap();
    if last.matrix().principal_part() != b.principal_part() {
        return Err(ConstructionError::IdentityFailure { identity: Identity::StaircaseMatrix, at: Vec::new() });
    }

    let x: Vec<LaurentPoly> = (0..nv).map(|i| LaurentPoly::var(nv, i)).collect();
    let x1: Vec<LaurentPoly> = last.cluster().to_vec();
    for k in 0..n {
        let mono = staircase_monomial(&b, k, &x1, &x, nv);
        // x_k[1] = x_k^{-1} (x_{n+k} + mono)
        if x1[k] != (&x[n + k] + &mono).exact_div(&x[k])? {
            return Err(ConstructionError::IdentityFailure { identity: Identity::StaircaseExchange, at: alloc::vec![k + 1] });
        }
        // x_{n+k} = x_k[1] x_k - mono
        if x[n + k] != &(&x1[k] * &x[k]) - &mono {
            return Err(ConstructionError::IdentityFailure { identity: Identity::CoefficientRecovery, at: alloc::vec![k + 1] });
        }
        // x_k[1] lies in K(x_1, ..., x_{n+k}) and involves x_{n+k}.
        if !x1[k].involves(n + k) || (n + k + 1..nv).any(|v| x1[k].involves(v)) {
            return Err(ConstructionError::IdentityFailure { identity: Identity::TriangularSupport, at: alloc::vec![k + 1] });
        }
        checked += 3;
    }
    if !clusters_disjoint(&seeds[0], last) {
        return Err(ConstructionError::IdentityFailure { identity: Identity::DisjointClusters, at: Vec::new() });
    }

    let generators: Vec<LaurentPoly> = x[..n].iter().chain(&x1[..n]).cloned().collect();
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("x{i}[1]"))).collect();
    let sources = (0..nv)
        .map(|g| match g < n {
            true => GeneratorSource { word: Vec::new(), index: g + 1 },
            false => GeneratorSource { word: last.word().to_vec(), index: g - n + 1 },
        })
        .collect();
    let independence = IndependenceEvidence {
        triangular: triangular_evidence(&generators, (1..=nv).collect()),
        jacobian: jacobian_evidence(&generators),
    };
    let gen_u: Vec<Expr> = (0..n).map(Expr::Gen).collect();
    let gen_v: Vec<Expr> = (n..nv).map(Expr::Gen).collect();
    let mut targets = Vec::new();
    for k in 0..n {
        // x_{n+k} = g_{n+k} g_k - prod_{i<k} g_{n+i}^{b_ik} prod_{i>k} g_i^{-b_ik}
        let mut factors = Vec::new();
        for i in 0..n {
            let e = entry_u32(b.get(i, k));
            if i < k && e > 0 {
                factors.push(Expr::pow(gen_v[i].clone(), e));
            } else if i > k && e > 0 {
                factors.push(Expr::pow(gen_u[i].clone(), e));
            }
        }
        let expr = Expr::sub(Expr::mul(gen_v[k].clone(), gen_u[k].clone()), Expr::product(factors));
        targets.push(Target { name: format!("x{}", n + k + 1), value: x[n + k].clone(), expr });
    }
    for (g, name) in names.iter().enumerate() {
        targets.push(Target { name: name.clone(), value: generators[g].clone(), expr: Expr::Gen(g) });
    }
    let certificate = GeneratorCertificate {
        matrix: b,
        generator_names: names,
        generators,
        sources,
        independence,
        targets,
    };
    Ok(Staircase { seeds, identities_checked: checked, certificate })
}

/// One row of the basis-change table: a standard monomial of the
/// single-step basis expanded in the staircase generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfzEntry {
    /// `(a_1, ..., a_{3n})`: exponents of `x_1..x_{2n}` then `x_1'..x_n'`.
    pub exponents: Vec<u32>,
    /// Polynomial in `u_1..u_n, v_1..v_n` standing for `x_1..x_n, x_1[1]..x_n[1]`.
    pub expansion: LaurentPoly,
}

#[derive(Clone, Debug)]
pub struct BfzTable {
    pub n: usize,
    pub degree_bound: u32,
    /// `x_k' = mu_k(x)_k` in the initial variables.
    pub primes: Vec<LaurentPoly>,
    /// `x_{n+k}` as a polynomial in the generators.
    pub coefficients_in_generators: Vec<LaurentPoly>,
    /// `x_k'` as a polynomial in the generators.
    pub primes_in_generators: Vec<LaurentPoly>,
    pub entries: Vec<BfzEntry>,
}

/// Computes the single-step cluster variables `x_k'`, checks the
/// substituted exchange identity and its divisibility by `x_k`, and expands
/// every standard monomial of total degree at most `degree_bound` in the
/// staircase generators.
pub fn bfz_basis_change(c: &CartanMatrix, degree_bound: u32) -> Result<BfzTable, ConstructionError> {
    let st = acyclic_staircase(c)?;
    let seed = st.initial();
    let b = seed.matrix();
    let n = b.n();
    let nv = 2 * n;
    let x: Vec<LaurentPoly> = (0..nv).map(|i| LaurentPoly::var(nv, i)).collect();
    let x1 = st.last().cluster();
    let images: Vec<LaurentPoly> = x[..n].iter().chain(&x1[..n]).cloned().collect();
    let u: Vec<LaurentPoly> = (0..n).map(|i| LaurentPoly::var(nv, i)).collect();
    let v: Vec<LaurentPoly> = (0..n).map(|i| LaurentPoly::var(nv, n + i)).collect();

    let mut f = Vec::with_capacity(n);
    for k in 0..n {
        let mono = staircase_monomial(b, k, &v, &u, nv);
        f.push(&(&v[k] * &u[k]) - &mono);
    }

    let mut primes = Vec::with_capacity(n);
    let mut p = Vec::with_capacity(n);
    for k in 0..n {
        // x_k' = x_k^{-1} (x_{n+k} prod_{i<k} x_i^{b_ik} + prod_{i>k} x_i^{-b_ik} prod_{i<k} x_{n+i}^{b_ik})
        let second = &upper_product(b, k, &x, nv) * &lower_product(b, k, &x[n..], nv);
        let prime = (&(&x[n + k] * &lower_product(b, k, &x, nv)) + &second).exact_div(&x[k])?;
        if prime != *seed.mutate(k + 1)?.entry(k + 1) {
            return Err(ConstructionError::IdentityFailure { identity: Identity::SingleStepExchange, at: alloc::vec![k + 1] });
        }
        // The same right-hand side with x_{n+i} replaced by its staircase expression.
        let second = &upper_product(b, k, &u, nv) * &lower_product(b, k, &f, nv);
        let rhs = &(&f[k] * &lower_product(b, k, &u, nv)) + &second;
        let q = rhs.exact_div(&u[k]).map_err(|_| ConstructionError::NotDivisible { k: k + 1 })?;
        if !q.is_polynomial() {
            return Err(ConstructionError::NotDivisible { k: k + 1 });
        }
        let rhs_x = rhs.compose(&images)?;
        if rhs_x != &x[k] * &prime {
            return Err(ConstructionError::IdentityFailure { identity: Identity::SubstitutedExchange, at: alloc::vec![k + 1] });
        }
        if rhs_x.exact_div(&x[k]).is_err() || q.compose(&images)? != prime {
            return Err(ConstructionError::NotDivisible { k: k + 1 });
        }
        primes.push(prime);
        p.push(q);
    }

    let mut entries = Vec::new();
    for a in bfz_exponents(n, degree_bound) {
        let mut expansion = LaurentPoly::one(nv);
        let mut direct = LaurentPoly::one(nv);
        for (i, &e) in a.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let (formal, value) = if i < n {
                (&u[i], &x[i])
            } else if i < nv {
                (&f[i - n], &x[i])
            } else {
                (&p[i - nv], &primes[i - nv])
            };
            expansion = &expansion * &formal.pow(e);
            direct = &direct * &value.pow(e);
        }
        if expansion.compose(&images)? != direct {
            return Err(ConstructionError::IdentityFailure { identity: Identity::BasisExpansion, at: a.iter().map(|&e| e as usize).collect() });
        }
        entries.push(BfzEntry { exponents: a, expansion });
    }

    Ok(BfzTable {
        n,
        degree_bound,
        primes,
        coefficients_in_generators: f,
        primes_in_generators: p,
        entries,
    })
}

/// All `a` in `N^{3n}` with `|a| <= bound` and `a_k a_{2n+k} = 0`, in
/// graded lexicographic order.
fn bfz_exponents(n: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, len: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(prefix, len, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=bound {
        let mut all = Vec::new();
        rec(&mut Vec::new(), 3 * n, total, &mut all);
        all.retain(|a| a.iter().sum::<u32>() == total && (0..n).all(|k| a[k] == 0 || a[2 * n + k] == 0));
        out.extend(all);
    }
    out
}

impl From<KernelError> for ConstructionError {
    fn from(e: KernelError) -> Self {
        ConstructionError::Kernel(e)
    }
}
