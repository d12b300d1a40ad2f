use alloc::vec::Vec;

use num_traits::One;

use super::AnalysisError;
use crate::laurent::{LaurentPoly, RationalFn};
use crate::seed::Seed;

/// Outcome of a membership test in `L_y = Z[y_1^±1, ..., y_p^±1, y_{p+1}, ..., y_m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// The element as a Laurent polynomial in the target cluster.
    InLz(LaurentPoly),
    /// The reduced expression in the target cluster, which has a forbidden denominator.
    NotInLz(RationalFn),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::InLz(_))
    }
}

/// The initial cluster expressed in the coordinates `y_1..y_m` of `target`.
///
/// `target` must have been produced from an initial seed by mutation; its
/// word is replayed backwards from a formal seed carrying `target`'s matrix.
pub fn seed_in_coordinates(target: &Seed) -> Result<Vec<LaurentPoly>, AnalysisError> {
    let formal = Seed::initial(target.matrix().clone());
    let back: Vec<usize> = target.word().iter().rev().copied().collect();
    Ok(formal.apply_word(&back)?.cluster().to_vec())
}

/// Decides whether `e`, a rational function in the initial variables, lies in
/// the Laurent ring of the target seed's cluster.
///
/// The change of coordinates is applied one mutation at a time: the inverse
/// of step `k` sends `x_k` to `(M1 + M2) / x_k` and fixes the other
/// variables, so every substitution has a binomial numerator instead of
/// the large images of the composed map.
pub fn laurent_membership(e: &RationalFn, target: &Seed) -> Result<Membership, AnalysisError> {
    let word = target.word();
    let mut matrices = Vec::with_capacity(word.len());
    let mut b = target.matrix().clone();
    for &k in word.iter().rev() {
        b = b.mutate(k)?;
        matrices.push(b.clone());
    }
    let m = b.m();
    let mut current = e.clone();
    for (b, &k) in matrices.into_iter().rev().zip(word) {
        let (m1, m2) = Seed::initial(b).exchange_monomials(k);
        let mut images: Vec<RationalFn> = (0..m).map(|i| LaurentPoly::var(m, i).into()).collect();
        images[k - 1] = RationalFn::new(&m1 + &m2, LaurentPoly::var(m, k - 1))?;
        current = current.substitute(&images)?;
    }
    Ok(classify(current, target.matrix().profile().p))
}

fn classify(r: RationalFn, p: usize) -> Membership {
    let den = r.denominator();
    let ok = den.is_monomial()
        && den.leading_term().is_some_and(|(exps, c)| c.is_one() && exps.as_slice().iter().skip(p).all(|&a| a == 0));
    match ok {
        true => Membership::InLz(r.to_laurent().expect("monomial denominator")),
        false => Membership::NotInLz(r),
    }
}

/// Membership in the upper bound `U(y, z) = L_y ∩ L_z`.
pub fn upper_bound_member(e: &RationalFn, y: &Seed, z: &Seed) -> Result<bool, AnalysisError> {
    Ok(laurent_membership(e, y)?.is_member() && laurent_membership(e, z)?.is_member())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::ExchangeMatrix;

    fn a3() -> Seed {
        Seed::initial(ExchangeMatrix::from_i64(3, 3, 3, &[&[0, -1, 0], &[1, 0, -1], &[0, 1, 0]]).unwrap())
    }

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::var(3, i - 1)
    }

    #[test]
    fn initial_seed_memberships() {
        let s = a3();
        assert!(laurent_membership(&x(1).into(), &s).unwrap().is_member());
        let z1 = s.mutate(1).unwrap().entry(1).clone();
        assert_eq!(laurent_membership(&z1.clone().into(), &s).unwrap(), Membership::InLz(z1));
        let bad = RationalFn::new(LaurentPoly::one(3), &LaurentPoly::one(3) + &x(2)).unwrap();
        assert!(!laurent_membership(&bad, &s).unwrap().is_member());
        assert!(!upper_bound_member(&bad, &s, &s).unwrap());
    }

    #[test]
    fn coordinates_invert_the_word() {
        let s = a3();
        let t = s.apply_word(&[1, 3, 2]).unwrap();
        let back = seed_in_coordinates(&t).unwrap();
        // Substituting the target cluster back into the coordinates recovers x.
        let images: Vec<RationalFn> = t.cluster().iter().cloned().map(RationalFn::from).collect();
        for (i, b) in back.iter().enumerate() {
            assert_eq!(crate::laurent::lp_substitute(b, &images).unwrap(), x(i + 1).into());
        }
    }

    #[test]
    fn cluster_variables_are_laurent_in_other_clusters() {
        let s = a3();
        let y = s.apply_word(&[2, 1]).unwrap();
        let z = s.apply_word(&[3, 2, 1]).unwrap();
        let x1z1 = &x(1) * s.mutate(1).unwrap().entry(1);
        assert_eq!(x1z1, &LaurentPoly::one(3) + &x(2));
        for e in [x(1), x(2), s.mutate(1).unwrap().entry(1).clone(), x1z1] {
            assert!(upper_bound_member(&e.into(), &y, &z).unwrap());
        }
    }

    #[test]
    fn non_invertible_coefficients_may_not_appear_in_denominators() {
        let s = Seed::initial(ExchangeMatrix::from_i64(1, 1, 2, &[&[0], &[1]]).unwrap());
        let inv = RationalFn::new(LaurentPoly::one(2), LaurentPoly::var(2, 1)).unwrap();
        assert!(!laurent_membership(&inv, &s).unwrap().is_member());
    }
}
