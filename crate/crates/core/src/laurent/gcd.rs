//! Greatest common divisors of ordinary multivariate polynomials over `Z`.
//!
//! Recursive content/primitive-part decomposition with respect to one main
//! variable, and the subresultant polynomial remainder sequence for the
//! primitive parts. Coefficients of the main variable are themselves
//! polynomials in the remaining variables.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExponentVector, LaurentPoly};

/// Normalized gcd of two ordinary polynomials.
///
/// The result divides both inputs, every common divisor divides it, and its
/// lex-leading coefficient is positive. `poly_gcd(a, 0)` is `a` up to sign.
///
/// Both inputs must be ordinary polynomials (no negative exponents).
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(a.nvars(), b.nvars(), "gcd of polynomials in different rings");
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let (ma, mb) = (a.min_exponents(), b.min_exponents());
    let common: Vec<i32> = ma.as_slice().iter().zip(mb.as_slice()).map(|(x, y)| *x.min(y)).collect();
    let a0 = a.shift(&negated(&ma));
    let b0 = b.shift(&negated(&mb));
    let g = gcd_rec(&a0, &b0);
    normalize_sign(g.shift(&ExponentVector::from(common)))
}

/// Makes the lex-leading coefficient positive.
pub fn normalize_sign(p: LaurentPoly) -> LaurentPoly {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p,
    }
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let coeffs = coefficients_in(p, var);
    gcd_list(coeffs.iter().filter(|c| !c.is_zero()))
}

/// Primitive part of `p` with respect to all variables (integer content removed).
pub fn primitive_part(p: &LaurentPoly) -> LaurentPoly {
    let c = p.content();
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    let terms = p.terms().map(|(e, v)| (e.clone(), v / &c));
    LaurentPoly::from_terms(p.nvars(), terms)
}

fn negated(e: &ExponentVector) -> ExponentVector {
    ExponentVector::from(e.as_slice().iter().map(|a| -a).collect::<Vec<_>>())
}

fn gcd_list<'a>(mut it: impl Iterator<Item = &'a LaurentPoly>) -> LaurentPoly {
    let Some(first) = it.next() else {
        panic!("gcd of an empty coefficient list");
    };
    let mut g = first.clone();
    for c in it {
        if is_unit_constant(&g) {
            break;
        }
        g = gcd_rec(&g, c);
    }
    normalize_sign(g)
}

fn is_unit_constant(p: &LaurentPoly) -> bool {
    p.as_constant().is_some_and(|c| c.abs().is_one())
}

/// Core recursion on polynomials; the result may carry either sign.
fn gcd_rec(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let nvars = a.nvars();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if let Some(c) = a.as_constant() {
        return LaurentPoly::constant(nvars, c.gcd(&b.content()));
    }
    if let Some(c) = b.as_constant() {
        return LaurentPoly::constant(nvars, c.gcd(&a.content()));
    }
    // Main variable: the first one that occurs in either operand.
    let var = (0..nvars).find(|&v| a.involves(v) || b.involves(v)).unwrap();
    match (a.involves(var), b.involves(var)) {
        (true, false) => return gcd_rec(&content_in(a, var), b),
        (false, true) => return gcd_rec(a, &content_in(b, var)),
        _ => {}
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    let g = subresultant_gcd(&pa, &pb, var);
    &c * &g
}

/// Coefficient list of `p` in `var`, indexed by degree; coefficients do not involve `var`.
pub(crate) fn coefficients_in(p: &LaurentPoly, var: usize) -> Vec<LaurentPoly> {
    let nvars = p.nvars();
    let deg = p.degree_in(var).max(0) as usize;
    let mut buckets: Vec<Vec<(ExponentVector, BigInt)>> = (0..=deg).map(|_| Vec::new()).collect();
    for (e, c) in p.terms() {
        let d = e[var];
        debug_assert!(d >= 0);
        let mut stripped = e.as_slice().to_vec();
        stripped[var] = 0;
        buckets[d as usize].push((ExponentVector::from(stripped), c.clone()));
    }
    buckets.into_iter().map(|t| LaurentPoly::from_terms(nvars, t)).collect()
}

fn from_coefficients(coeffs: &[LaurentPoly], var: usize, nvars: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(nvars);
    for (d, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut shift = alloc::vec![0; nvars];
        shift[var] = d as i32;
        acc = &acc + &c.shift(&ExponentVector::from(shift));
    }
    acc
}

type Univariate = Vec<LaurentPoly>;

fn trim(p: &mut Univariate) {
    while p.last().is_some_and(LaurentPoly::is_zero) {
        p.pop();
    }
}

fn degree(p: &Univariate) -> usize {
    p.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_remainder(a: &Univariate, b: &Univariate) -> Univariate {
    let db = degree(b);
    let lcb = b.last().unwrap();
    let mut r = a.clone();
    let mut e = degree(a) - db + 1;
    trim(&mut r);
    while !r.is_empty() && degree(&r) >= db {
        let dr = degree(&r);
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (i, bc) in b.iter().enumerate() {
            let idx = i + dr - db;
            r[idx] = &r[idx] - &(&lcr * bc);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = lcb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn divide_all(p: &mut Univariate, d: &LaurentPoly) {
    if d.is_one() {
        return;
    }
    for c in p.iter_mut() {
        *c = c.exact_div(d).expect("subresultant division is exact");
    }
}

/// Gcd of two polynomials primitive with respect to `var`, both involving it.
fn subresultant_gcd(a: &LaurentPoly, b: &LaurentPoly, var: usize) -> LaurentPoly {
    let nvars = a.nvars();
    let mut a = coefficients_in(a, var);
    let mut b = coefficients_in(b, var);
    if degree(&a) < degree(&b) {
        core::mem::swap(&mut a, &mut b);
    }
    let mut g = LaurentPoly::one(nvars);
    let mut h = LaurentPoly::one(nvars);
    loop {
        let delta = (degree(&a) - degree(&b)) as u32;
        let mut r = pseudo_remainder(&a, &b);
        if r.is_empty() {
            break;
        }
        if degree(&r) == 0 {
            return LaurentPoly::one(nvars);
        }
        divide_all(&mut r, &(&g * &h.pow(delta)));
        a = b;
        b = r;
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)).expect("subresultant h update is exact"),
        };
    }
    let b = from_coefficients(&b, var, nvars);
    let cont = content_in(&b, var);
    b.exact_div(&cont).expect("content divides")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::var(3, i - 1)
    }

    #[test]
    fn difference_of_squares_gcd() {
        let a = &x(1).pow(2) - &x(2).pow(2);
        let b = &x(1) - &x(2);
        assert_eq!(poly_gcd(&a, &b), b);
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let a = -(&x(1) + &LaurentPoly::constant(3, 2));
        assert_eq!(poly_gcd(&a, &LaurentPoly::zero(3)), &x(1) + &LaurentPoly::constant(3, 2));
    }

    #[test]
    fn integer_content_is_part_of_gcd() {
        let a = LaurentPoly::constant(3, 6).try_mul(&x(1)).unwrap();
        let b = LaurentPoly::constant(3, 4).try_mul(&x(2)).unwrap();
        assert_eq!(poly_gcd(&a, &b), LaurentPoly::constant(3, 2));
    }

    #[test]
    fn monomial_parts_are_shared() {
        let a = &x(1).pow(2) * &x(3);
        let b = &x(1) * &x(2);
        assert_eq!(poly_gcd(&a, &b), x(1));
    }

    #[test]
    fn multivariate_common_factor() {
        let one = LaurentPoly::one(3);
        let g = &(&x(1) * &x(2)) + &(&x(3) + &one);
        let u = &x(1).pow(2) + &x(3);
        let v = &(&x(2) * &x(3)) - &one;
        let got = poly_gcd(&(&g * &u), &(&g * &v));
        assert_eq!(got, normalize_sign(g));
    }

    #[test]
    fn coprime_inputs() {
        let one = LaurentPoly::one(3);
        assert_eq!(poly_gcd(&(&x(1) + &one), &(&x(2) + &one)), one);
    }
}
