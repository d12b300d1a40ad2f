use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::certificate::{jacobian_evidence, triangular_evidence};
use super::{ConstructionError, Expr, GeneratorCertificate, GeneratorSource, Identity, IndependenceEvidence, Target};
use crate::laurent::LaurentPoly;
use crate::seed::{ExchangeMatrix, Seed, SeedProfile};

/// The linearly oriented seed with one non-invertible coefficient:
/// `n = p = m - 1`, `b_{i,i+1} = -1`, `b_{i+1,i} = 1`, and `b_{m,m-1} = 1`.
pub fn type_a_seed(m: usize) -> Result<Seed, ConstructionError> {
    if m < 2 {
        return Err(ConstructionError::TooSmall { what: "type A seed", min: 2, got: m });
    }
    let n = m - 1;
    let mut rows = alloc::vec![alloc::vec![BigInt::from(0); n]; m];
    for i in 0..n {
        if i + 1 < n {
            rows[i][i + 1] = BigInt::from(-1);
        }
        rows[i + 1][i] = BigInt::from(1);
    }
    Ok(Seed::initial(ExchangeMatrix::new(SeedProfile::new(n, n, m), rows)?))
}

/// The type A chain `x[0], ..., x[m-1]` with its verified identities.
#[derive(Clone, Debug)]
pub struct TypeAChain {
    pub m: usize,
    /// `seeds[i]` is `(x[i], B[i])`.
    pub seeds: Vec<Seed>,
    /// `chain[i]` is `x_1[i]`.
    pub chain: Vec<LaurentPoly>,
    /// Number of identity instances checked.
    pub identities_checked: usize,
    pub certificate: GeneratorCertificate,
}

/// Runs the nested schedule `x[i] = mu_{m-i} ... mu_1 (x[i-1])`, checks the
/// chain identities exactly and certifies `x_1[0], ..., x_1[m-1]` as
/// polynomial generators.
pub fn type_a_chain(m: usize) -> Result<TypeAChain, ConstructionError> {
    let seed0 = type_a_seed(m)?;
    let nv = m;
    let mut seeds = alloc::vec![seed0.clone()];
    for i in 1..m {
        let word: Vec<usize> = (1..=m - i).collect();
        seeds.push(seeds[i - 1].apply_word(&word)?);
    }
    // x_k[i] with x_0[i] = 1 and x_{-1}[i] = 0.
    let x = |i: usize, k: isize| -> LaurentPoly {
        match k {
            -1 => LaurentPoly::zero(nv),
            0 => LaurentPoly::one(nv),
            _ => seeds[i].entry(k as usize).clone(),
        }
    };
    let mut checked = 0;

    for i in 0..=m - 2 {
        for k in 1..=(m - 1 - i) {
            let mutated = seeds[i].mutate(k)?.entry(k).clone();
            let ki = k as isize;
            let direct = (&x(i, ki - 1) + &x(i, ki + 1)).exact_div(&x(i, ki))?;
            if mutated != direct {
                return Err(ConstructionError::IdentityFailure { identity: Identity::ShiftedExchange, at: alloc::vec![i, k, 0] });
            }
            for j in 1..=i {
                let (ij, kj) = (i - j, ki + j as isize);
                let shifted = (&x(ij, kj - 1) + &x(ij, kj + 1)).exact_div(&x(ij, kj))?;
                if shifted != mutated {
                    return Err(ConstructionError::IdentityFailure { identity: Identity::ShiftedExchange, at: alloc::vec![i, k, j] });
                }
                checked += 1;
            }
            checked += 1;
        }
    }

    let chain: Vec<LaurentPoly> = (0..m).map(|i| x(i, 1)).collect();
    for i in 0..=m - 2 {
        let ii = i as isize;
        // x_{i+2} = x_1[i+1] x_{i+1} - x_i
        if x(0, ii + 2) != &(&chain[i + 1] * &x(0, ii + 1)) - &x(0, ii) {
            return Err(ConstructionError::IdentityFailure { identity: Identity::InitialRecurrence, at: alloc::vec![i] });
        }
        // x_{i+1}[1] = x_1[i+1] x_i[1] - x_{i-1}[1]
        if x(1, ii + 1) != &(&chain[i + 1] * &x(1, ii)) - &x(1, ii - 1) {
            return Err(ConstructionError::IdentityFailure { identity: Identity::FirstStepRecurrence, at: alloc::vec![i] });
        }
        checked += 2;
    }

    let certificate = chain_certificate(m, &seeds, &chain)?;
    Ok(TypeAChain { m, seeds, chain, identities_checked: checked, certificate })
}

fn chain_certificate(m: usize, seeds: &[Seed], chain: &[LaurentPoly]) -> Result<GeneratorCertificate, ConstructionError> {
    let names = (0..m).map(|i| format!("x1[{i}]")).collect();
    let sources = seeds
        .iter()
        .map(|s| GeneratorSource { word: s.word().to_vec(), index: 1 })
        .collect();
    let independence = IndependenceEvidence {
        triangular: triangular_evidence(chain, (1..=m).collect()),
        jacobian: jacobian_evidence(chain),
    };
    if independence.triangular.is_none() {
        return Err(ConstructionError::IdentityFailure { identity: Identity::TriangularSupport, at: Vec::new() });
    }

    let minus = |a: Expr, b: &Expr| if *b == Expr::int(0) { a } else { Expr::sub(a, b.clone()) };
    let times = |g: usize, e: &Expr| if *e == Expr::int(1) { Expr::Gen(g) } else { Expr::mul(Expr::Gen(g), e.clone()) };
    let mut targets = Vec::new();

    // x_0 = 1, x_1 = g_0, x_{i+2} = g_{i+1} x_{i+1} - x_i.
    let mut xs = alloc::vec![Expr::int(1), Expr::Gen(0)];
    for i in 0..=m - 2 {
        let next = minus(times(i + 1, &xs[i + 1]), &xs[i]);
        xs.push(next);
    }
    for k in 1..=m {
        targets.push(Target { name: format!("x{k}"), value: seeds[0].entry(k).clone(), expr: xs[k].clone() });
    }
    // x_{-1}[1] = 0, x_0[1] = 1, x_{i+1}[1] = g_{i+1} x_i[1] - x_{i-1}[1].
    let mut ys = alloc::vec![Expr::int(0), Expr::int(1)];
    for i in 0..m - 1 {
        let next = minus(times(i + 1, &ys[i + 1]), &ys[i]);
        ys.push(next);
    }
    for k in 1..m {
        targets.push(Target { name: format!("x{k}[1]"), value: seeds[1].entry(k).clone(), expr: ys[k + 1].clone() });
    }

    Ok(GeneratorCertificate {
        matrix: seeds[0].matrix().clone(),
        generator_names: names,
        generators: chain.to_vec(),
        sources,
        independence,
        targets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::verify_polynomial_generators;
    use alloc::string::ToString;

    #[test]
    fn smallest_seed() {
        let s = type_a_seed(2).unwrap();
        assert_eq!(s.matrix().rows(), [[BigInt::from(0)], [BigInt::from(1)]]);
        assert!(type_a_seed(1).is_err());
    }

    #[test]
    fn gamma_is_a_path() {
        let s = type_a_seed(4).unwrap();
        let g = crate::seed::Quiver::gamma(s.matrix()).unwrap();
        let arrows: Vec<(usize, usize)> = g.arrows().map(|(t, h, _)| (t + 1, h + 1)).collect();
        assert_eq!(arrows, [(2, 1), (3, 2), (4, 3)]);
        for m in 2..=10 {
            assert!(type_a_seed(m).unwrap().matrix().is_valid());
        }
    }

    #[test]
    fn first_chain_entries() {
        let c = type_a_chain(3).unwrap();
        assert_eq!(crate::laurent::FractionDisplay(&c.chain[1]).to_string(), "(1 + x2)/x1");
        let x = |i: usize| LaurentPoly::var(3, i - 1);
        assert_eq!(x(3), &(&c.chain[2] * &x(2)) - &x(1));
    }

    #[test]
    fn certificates_verify() {
        for m in 2..=6 {
            let c = type_a_chain(m).unwrap();
            verify_polynomial_generators(&c.certificate, &c.seeds[0], &c.seeds[1]).unwrap();
        }
    }

    #[test]
    fn corrupted_tree_is_named() {
        let c = type_a_chain(4).unwrap();
        let mut cert = c.certificate.clone();
        cert.targets[2].expr = Expr::Gen(0);
        let err = verify_polynomial_generators(&cert, &c.seeds[0], &c.seeds[1]).unwrap_err();
        assert_eq!(err, crate::constructions::CertificateFailure::TargetMismatch { name: "x3".to_string() });
    }
}
