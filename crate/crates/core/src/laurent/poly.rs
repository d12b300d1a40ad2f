use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::KernelError;

/// Exponents of one Laurent monomial, one signed entry per ambient variable.
///
/// The derived ordering is lexicographic with `x1` most significant, which is
/// the canonical term order of [`LaurentPoly`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<i32>);

impl ExponentVector {
    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    fn plus(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn minus(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn scaled(&self, k: i32) -> Self {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }
}

impl From<Vec<i32>> for ExponentVector {
    fn from(v: Vec<i32>) -> Self {
        ExponentVector(v)
    }
}

impl core::ops::Index<usize> for ExponentVector {
    type Output = i32;
    fn index(&self, i: usize) -> &i32 {
        &self.0[i]
    }
}

/// Sparse Laurent polynomial in `nvars` variables with integer coefficients.
///
/// Terms live in a `BTreeMap` keyed by exponent vector and no stored
/// coefficient is zero, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, ExponentVector::zero(nvars), c)
    }

    /// The coordinate variable `x_{var+1}` (`var` is zero-based).
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index {var} out of range for {nvars} variables");
        Self::monomial(nvars, ExponentVector::unit(nvars, var), 1)
    }

    pub fn monomial(nvars: usize, exps: impl Into<ExponentVector>, c: impl Into<BigInt>) -> Self {
        let exps = exps.into();
        assert_eq!(exps.len(), nvars, "exponent vector length must equal the variable count");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I, E, C>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (E, C)>,
        E: Into<ExponentVector>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            let e = e.into();
            assert_eq!(e.len(), nvars, "exponent vector length must equal the variable count");
            *map.entry(e).or_insert_with(BigInt::zero) += c.into();
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &ExponentVector) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Largest term under the lexicographic order.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &BigInt)> {
        self.terms.last_key_value()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant value, if this polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.iter().next().filter(|(e, _)| e.is_zero()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// True when no exponent is negative, i.e. the value lies in `Z[x1..xm]`.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_nonnegative)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] != 0)
    }

    /// Indices of the variables that occur with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.involves(v)).collect()
    }

    /// Entrywise minimum of the exponents over all terms (zero vector for 0).
    pub fn min_exponents(&self) -> ExponentVector {
        self.fold_exponents(i32::min)
    }

    pub fn max_exponents(&self) -> ExponentVector {
        self.fold_exponents(i32::max)
    }

    fn fold_exponents(&self, f: impl Fn(i32, i32) -> i32) -> ExponentVector {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return ExponentVector::zero(self.nvars);
        };
        let mut acc = first.0.clone();
        for e in it {
            for (a, b) in acc.iter_mut().zip(&e.0) {
                *a = f(*a, *b);
            }
        }
        ExponentVector(acc)
    }

    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn check_dims(&self, other: &Self) -> Result<(), KernelError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(KernelError::DimensionMismatch { left: self.nvars, right: other.nvars })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, KernelError> {
        self.check_dims(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut terms, e.clone(), c.clone());
        }
        Ok(LaurentPoly { nvars: self.nvars, terms })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, KernelError> {
        self.check_dims(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut terms, e.clone(), -c);
        }
        Ok(LaurentPoly { nvars: self.nvars, terms })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, KernelError> {
        self.check_dims(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms = BTreeMap::new();
        for (e1, c1) in &small.terms {
            for (e2, c2) in &large.terms {
                accumulate(&mut terms, e1.plus(e2), c1 * c2);
            }
        }
        Ok(LaurentPoly { nvars: self.nvars, terms })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &ExponentVector) -> Self {
        assert_eq!(shift.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.plus(shift), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Self::one(self.nvars);
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            return Self::monomial(self.nvars, e.scaled(k as i32), num_traits::pow(c.clone(), k as usize));
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k == 0 {
                return acc;
            }
            base = &base * &base;
        }
    }

    /// Integer power with negative exponents allowed for monomials.
    pub fn try_powi(&self, k: i64) -> Result<Self, KernelError> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let inv = Self::one(self.nvars).exact_div(self)?;
        Ok(inv.pow((-k) as u32))
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    ///
    /// Both operands are shifted by monomials into the ordinary polynomial
    /// ring and the shifted dividend is reduced by leading terms under lex
    /// order. A nonzero remainder means no exact quotient exists.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, KernelError> {
        self.check_dims(divisor)?;
        if divisor.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let a_shift = self.min_exponents();
        let b_shift = divisor.min_exponents();
        let a = self.shift(&a_shift.scaled(-1));
        let b = divisor.shift(&b_shift.scaled(-1));
        let q = poly_exact_div(&a, &b).ok_or(KernelError::NotDivisible)?;
        Ok(q.shift(&a_shift.minus(&b_shift)))
    }

    /// Evaluates at a point with rational coordinates.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, KernelError> {
        if point.len() != self.nvars {
            return Err(KernelError::DimensionMismatch { left: self.nvars, right: point.len() });
        }
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (v, &a) in e.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if a < 0 && point[v].is_zero() {
                    return Err(KernelError::ZeroImageInverted { var: v });
                }
                t *= num_traits::pow::Pow::pow(&point[v], a);
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Partial derivative with respect to `x_{var+1}`.
    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e[var] != 0).map(|(e, c)| {
            let mut e2 = e.clone();
            e2.0[var] -= 1;
            (e2, c * BigInt::from(e[var]))
        });
        Self::from_terms(self.nvars, terms)
    }

    /// Substitutes `x_i -> images[i]` where every image is itself a Laurent
    /// polynomial. Variables occurring with negative exponent need a monomial
    /// (hence invertible) image.
    pub fn compose(&self, images: &[LaurentPoly]) -> Result<Self, KernelError> {
        if images.len() != self.nvars {
            return Err(KernelError::DimensionMismatch { left: self.nvars, right: images.len() });
        }
        let target = images.first().map_or(0, |p| p.nvars);
        let mut cache: BTreeMap<(usize, i32), LaurentPoly> = BTreeMap::new();
        let mut acc = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (v, &a) in e.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let power = match cache.entry((v, a)) {
                    Entry::Occupied(slot) => slot.into_mut(),
                    Entry::Vacant(slot) => {
                        let img = &images[v];
                        let p = if a > 0 {
                            img.pow(a as u32)
                        } else if img.is_zero() {
                            return Err(KernelError::ZeroImageInverted { var: v });
                        } else {
                            img.try_powi(a as i64).map_err(|_| KernelError::NonMonomialInverse { var: v })?
                        };
                        slot.insert(p)
                    }
                };
                t = t.try_mul(power)?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Re-embeds into `nvars` variables, keeping the first variables in place.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut v = e.0.clone();
            v.resize(nvars, 0);
            (ExponentVector(v), c.clone())
        });
        Self::from_terms(nvars, terms)
    }

    /// Writes the value as `numerator / x^shift` with an ordinary polynomial
    /// numerator and a monomial denominator.
    pub fn as_fraction(&self) -> (LaurentPoly, ExponentVector) {
        let min = self.min_exponents();
        let den = ExponentVector(min.0.iter().map(|&a| (-a).max(0)).collect());
        (self.shift(&den), den)
    }
}

fn accumulate(terms: &mut BTreeMap<ExponentVector, BigInt>, e: ExponentVector, c: BigInt) {
    use alloc::collections::btree_map::Entry;
    match terms.entry(e) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Leading-term division of ordinary polynomials; `None` unless exact.
fn poly_exact_div(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let nvars = a.nvars;
    for v in 0..nvars {
        if a.degree_in(v) < b.degree_in(v) {
            return None;
        }
    }
    // A product with a multi-term factor has at least two terms.
    if a.terms.len() == 1 && b.terms.len() > 1 {
        return None;
    }
    let (lb_exp, lb_coeff) = b.leading_term().map(|(e, c)| (e.clone(), c.clone()))?;
    let mut rem = a.terms.clone();
    let mut quot = BTreeMap::new();
    while let Some((e, c)) = rem.last_key_value() {
        let qe = e.minus(&lb_exp);
        if !qe.is_nonnegative() {
            return None;
        }
        let (qc, r) = c.div_rem(&lb_coeff);
        if !r.is_zero() {
            return None;
        }
        for (be, bc) in &b.terms {
            accumulate(&mut rem, be.plus(&qe), -(&qc * bc));
        }
        quot.insert(qe, qc);
    }
    Some(LaurentPoly { nvars, terms: quot })
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<'a> $tr<&'a LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                self.$try(rhs).expect("Laurent polynomial dimension mismatch")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &ExponentVector, mut first: bool) -> fmt::Result {
    for (v, &a) in e.0.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{}", v + 1)?;
        if a != 1 {
            write!(f, "^{a}")?;
        }
    }
    Ok(())
}

/// Canonical text form: terms in ascending lex order joined by ` + ` / ` - `,
/// each term `c*x1^a1*...` with unit coefficients and zero exponents omitted.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if e.is_zero() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write_monomial(f, e, true)?;
            } else {
                write!(f, "{abs}")?;
                write_monomial(f, e, false)?;
            }
        }
        Ok(())
    }
}

/// Human-oriented rendering `(numerator)/monomial`, e.g. `(1 + x2)/x1`.
pub struct FractionDisplay<'a>(pub &'a LaurentPoly);

impl fmt::Display for FractionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.0.as_fraction();
        if den.is_zero() {
            return write!(f, "{num}");
        }
        if num.num_terms() > 1 {
            write!(f, "({num})/")?;
        } else {
            write!(f, "{num}/")?;
        }
        let factors = den.0.iter().filter(|&&a| a != 0).count();
        if factors > 1 {
            f.write_str("(")?;
        }
        write_monomial(f, &den, true)?;
        if factors > 1 {
            f.write_str(")")?;
        }
        Ok(())
    }
}
