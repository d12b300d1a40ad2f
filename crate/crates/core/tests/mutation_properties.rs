#![allow(clippy::needless_range_loop)]

use cluster_core::laurent::LaurentPoly;
use cluster_core::seed::{ExchangeMatrix, Seed, SeedProfile};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

/// Raw material for a seed: symmetrizer weights, off-diagonal multipliers
/// for the principal part and free entries for the frozen rows.
#[derive(Clone, Debug)]
struct Blueprint {
    n: usize,
    p: usize,
    m: usize,
    d: Vec<i64>,
    t: Vec<i64>,
    frozen: Vec<i64>,
}

/// `d_i b_ij = t lcm(d_i, d_j) = -d_j b_ji`, so `diag(d) B°` is skew-symmetric
/// by construction, with every entry in `[-3, 3]`.
fn build(bp: &Blueprint) -> ExchangeMatrix {
    let n = bp.n;
    let mut rows = vec![vec![BigInt::from(0); n]; bp.m];
    let mut t = bp.t.iter();
    for i in 0..n {
        for j in i + 1..n {
            let l = bp.d[i].lcm(&bp.d[j]);
            let (a, b) = (l / bp.d[i], l / bp.d[j]);
            let bound = 3 / a.max(b);
            let s = (*t.next().unwrap()).clamp(-bound, bound);
            rows[i][j] = BigInt::from(s * a);
            rows[j][i] = BigInt::from(-s * b);
        }
    }
    let mut f = bp.frozen.iter();
    for row in rows.iter_mut().skip(n) {
        for e in row.iter_mut() {
            *e = BigInt::from(*f.next().unwrap());
        }
    }
    ExchangeMatrix::new(SeedProfile::new(n, bp.p, bp.m), rows).unwrap()
}

fn blueprint() -> impl Strategy<Value = Blueprint> {
    (1usize..=4, 0usize..=2, 0usize..=2)
        .prop_filter("m <= 6", |(n, a, b)| n + a + b <= 6 && n + a + b >= 2)
        .prop_flat_map(|(n, a, b)| {
            let m = n + a + b;
            (
                Just((n, n + a, m)),
                prop::collection::vec(1i64..=3, n),
                prop::collection::vec(-3i64..=3, n * n),
                prop::collection::vec(-3i64..=3, (m - n) * n),
            )
        })
        .prop_map(|((n, p, m), d, t, frozen)| Blueprint { n, p, m, d, t, frozen })
}

fn valid_seed() -> impl Strategy<Value = Seed> {
    blueprint().prop_map(|bp| build(&bp)).prop_filter("valid seed", ExchangeMatrix::is_valid).prop_map(Seed::initial)
}

/// Independent check that `diag(d) B°` is skew-symmetric.
fn symmetrizes(b: &ExchangeMatrix, d: &[BigInt]) -> bool {
    let n = b.n();
    (0..n).all(|i| (0..n).all(|j| &d[i] * b.get(i, j) == -(&d[j] * b.get(j, i))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mutation_is_an_involution(s in valid_seed()) {
        for k in 1..=s.matrix().n() {
            let back = s.mutate(k).unwrap().mutate(k).unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(back.matrix(), s.matrix());
        }
    }

    #[test]
    fn mutation_preserves_validity_and_symmetrizer(s in valid_seed()) {
        let d = s.matrix().skew_symmetrizer().unwrap();
        for k in 1..=s.matrix().n() {
            let t = s.mutate(k).unwrap();
            prop_assert!(t.matrix().is_valid());
            prop_assert!(symmetrizes(t.matrix(), &d));
            prop_assert_eq!(t.matrix().skew_symmetrizer().unwrap(), d.clone());
        }
    }

    #[test]
    fn mutation_changes_one_entry(s in valid_seed()) {
        let m = s.matrix().m();
        for k in 1..=s.matrix().n() {
            let t = s.mutate(k).unwrap();
            for i in 1..=m {
                if i != k {
                    prop_assert_eq!(t.entry(i), s.entry(i));
                }
            }
            prop_assert!(t.entry(k) != s.entry(k));
        }
    }

    #[test]
    fn exchange_relation_holds(s in valid_seed()) {
        for k in 1..=s.matrix().n() {
            let (m1, m2) = s.exchange_monomials(k);
            let t = s.mutate(k).unwrap();
            prop_assert_eq!(&(s.entry(k) * t.entry(k)), &(&m1 + &m2));
        }
    }

    #[test]
    fn matrix_mutation_follows_the_entrywise_rule(s in valid_seed()) {
        let b = s.matrix();
        let (m, n) = (b.m(), b.n());
        for k in 0..n {
            let c = b.mutate(k + 1).unwrap();
            for i in 0..m {
                for j in 0..n {
                    let want = if i == k || j == k {
                        -b.get(i, j)
                    } else {
                        let (bik, bkj) = (b.get(i, k), b.get(k, j));
                        let z = BigInt::from(0);
                        b.get(i, j) + (bik.max(&z) * bkj.max(&z) - (-bik).max(z.clone()) * (-bkj).max(z.clone()))
                    };
                    prop_assert_eq!(c.get(i, j), &want);
                }
            }
        }
    }

    #[test]
    fn rank_is_invariant(s in valid_seed()) {
        let r = s.matrix().rank();
        for k in 1..=s.matrix().n() {
            prop_assert_eq!(s.matrix().mutate(k).unwrap().rank(), r);
        }
    }

    #[test]
    fn entries_stay_laurent_along_words(s in valid_seed(), word in prop::collection::vec(1usize..=4, 0..4)) {
        let n = s.matrix().n();
        let word: Vec<usize> = word.into_iter().map(|k| (k - 1) % n + 1).collect();
        let t = s.apply_word(&word).unwrap();
        prop_assert_eq!(t.word(), word.as_slice());
        for v in t.cluster() {
            prop_assert!(!v.is_zero());
            prop_assert_eq!(v.nvars(), s.matrix().m());
        }
    }
}

#[test]
fn blueprint_covers_non_symmetric_cases() {
    let bp = Blueprint { n: 2, p: 2, m: 3, d: vec![1, 3], t: vec![1], frozen: vec![1, 0] };
    let b = build(&bp);
    assert_eq!(b.rows(), vec![vec![BigInt::from(0), BigInt::from(3)], vec![BigInt::from(-1), BigInt::from(0)], vec![BigInt::from(1), BigInt::from(0)]]);
    assert!(b.is_valid());
    assert_eq!(b.skew_symmetrizer().unwrap(), [BigInt::from(1), BigInt::from(3)]);
    let x1 = LaurentPoly::var(3, 0);
    assert_eq!(Seed::initial(b).entry(1), &x1);
}
