use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::gcd::{normalize_sign, poly_gcd};
use super::{ExponentVector, KernelError, LaurentPoly};

/// Reduced quotient of two ordinary polynomials over `Z`.
///
/// Invariants: the denominator is nonzero, numerator and denominator are
/// coprime (polynomial part and integer content), the denominator has a
/// positive lex-leading coefficient, and it equals `1` exactly when the value
/// is a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    /// Reduces `num / den`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, KernelError> {
        Self::from_factored(num, alloc::vec![den])
    }

    /// Reduces `num / (f_1 * ... * f_r)`.
    ///
    /// Factors are first cancelled one at a time by trial division, so a
    /// general gcd is only computed on whatever is left over.
    pub fn from_factored(num: LaurentPoly, factors: Vec<LaurentPoly>) -> Result<Self, KernelError> {
        let nvars = num.nvars();
        let mut num = num;
        let mut mono = LaurentPoly::one(nvars);
        let mut rest = LaurentPoly::one(nvars);
        for f in factors {
            if f.nvars() != nvars {
                return Err(KernelError::DimensionMismatch { left: nvars, right: f.nvars() });
            }
            if f.is_zero() {
                return Err(KernelError::DivisionByZero);
            }
            if f.is_monomial() {
                mono = &mono * &f;
            } else if let Ok(q) = num.exact_div(&f) {
                num = q;
            } else {
                rest = &rest * &f;
            }
        }
        let mut den = &rest * &mono;
        // Clear negative exponents on both sides so the gcd runs on ordinary polynomials.
        let (nmin, dmin) = (num.min_exponents(), den.min_exponents());
        let lift: Vec<i32> = nmin.as_slice().iter().zip(dmin.as_slice()).map(|(a, b)| (-a).max(-b).max(0)).collect();
        let lift = ExponentVector::from(lift);
        let mut num = num.shift(&lift);
        den = den.shift(&lift);
        if num.is_zero() {
            return Ok(RationalFn { num, den: LaurentPoly::one(nvars) });
        }
        debug_assert!(den.is_polynomial());
        let g = if den.is_monomial() {
            monomial_gcd(&num, &den)
        } else {
            poly_gcd(&num, &den)
        };
        if !g.is_one() {
            num = num.exact_div(&g).expect("gcd divides numerator");
            den = den.exact_div(&g).expect("gcd divides denominator");
        }
        if den.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            num = -num;
            den = -den;
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let (num, shift) = p.as_fraction();
        let nvars = p.nvars();
        let den = LaurentPoly::monomial(nvars, shift, 1);
        RationalFn { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a Laurent polynomial, when the denominator is a monomial.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let (e, c) = self.den.leading_term()?;
        if !self.den.is_monomial() || !c.is_one() {
            return None;
        }
        let inv: Vec<i32> = e.as_slice().iter().map(|a| -a).collect();
        Some(self.num.shift(&ExponentVector::from(inv)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, KernelError> {
        Self::from_factored(self.num.try_mul(&other.num)?, alloc::vec![self.den.clone(), other.den.clone()])
    }

    pub fn div(&self, other: &Self) -> Result<Self, KernelError> {
        if other.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Self::from_factored(self.num.try_mul(&other.den)?, alloc::vec![self.den.clone(), other.num.clone()])
    }

    pub fn add(&self, other: &Self) -> Result<Self, KernelError> {
        let num = self.num.try_mul(&other.den)?.try_add(&other.num.try_mul(&self.den)?)?;
        Self::from_factored(num, alloc::vec![self.den.clone(), other.den.clone()])
    }

    /// Formal substitution `x_i -> images[i]` into numerator and denominator.
    pub fn substitute(&self, images: &[RationalFn]) -> Result<Self, KernelError> {
        let n = lp_substitute(&self.num, images)?;
        let d = lp_substitute(&self.den, images)?;
        n.div(&d)
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

/// Gcd of a polynomial with a monomial `c * x^e`.
fn monomial_gcd(p: &LaurentPoly, mono: &LaurentPoly) -> LaurentPoly {
    let (e, c) = mono.leading_term().unwrap();
    let pmin = p.min_exponents();
    let shared: Vec<i32> = e.as_slice().iter().zip(pmin.as_slice()).map(|(a, b)| *a.min(b)).collect();
    let content: BigInt = p.content().gcd(c);
    LaurentPoly::monomial(p.nvars(), shared, content)
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap_num = self.num.num_terms() > 1;
        let wrap_den = self.den.num_terms() > 1 || self.den.to_string_needs_parens();
        match (wrap_num, wrap_den) {
            (true, true) => write!(f, "({})/({})", self.num, self.den),
            (true, false) => write!(f, "({})/{}", self.num, self.den),
            (false, true) => write!(f, "{}/({})", self.num, self.den),
            (false, false) => write!(f, "{}/{}", self.num, self.den),
        }
    }
}

impl LaurentPoly {
    fn to_string_needs_parens(&self) -> bool {
        // A monomial such as 2*x1*x3 contains `*` and must be grouped after `/`.
        self.terms().next().is_some_and(|(e, c)| {
            let factors = e.as_slice().iter().filter(|&&a| a != 0).count() + usize::from(!c.abs().is_one());
            factors > 1
        })
    }
}

/// Substitutes `x_i -> images[i]` into a Laurent polynomial.
///
/// With `lo_i`/`hi_i` the extreme exponents of `x_i` (clamped through zero)
/// and `images[i] = P_i / Q_i`, every term is brought over the common
/// denominator `prod P_i^(-lo_i) * Q_i^(hi_i)`, whose factors are then
/// cancelled by [`RationalFn::from_factored`].
pub fn lp_substitute(e: &LaurentPoly, images: &[RationalFn]) -> Result<RationalFn, KernelError> {
    if images.len() != e.nvars() {
        return Err(KernelError::DimensionMismatch { left: e.nvars(), right: images.len() });
    }
    let target = match images.first() {
        Some(img) => img.nvars(),
        None => return Ok(RationalFn::from_poly(e.clone())),
    };
    if let Some(bad) = images.iter().find(|img| img.nvars() != target) {
        return Err(KernelError::DimensionMismatch { left: target, right: bad.nvars() });
    }
    let lo = e.min_exponents();
    let hi = e.max_exponents();
    let mut factors = Vec::new();
    for (v, img) in images.iter().enumerate() {
        let (l, h) = (lo[v].min(0), hi[v].max(0));
        if l < 0 {
            if img.is_zero() {
                return Err(KernelError::ZeroImageInverted { var: v });
            }
            for _ in 0..-l {
                factors.push(img.num.clone());
            }
        }
        for _ in 0..h {
            factors.push(img.den.clone());
        }
    }
    let mut powers: Vec<PowerCache> = images.iter().map(PowerCache::new).collect();
    let mut num = LaurentPoly::zero(target);
    for (exps, c) in e.terms() {
        let mut t = LaurentPoly::constant(target, c.clone());
        for (v, cache) in powers.iter_mut().enumerate() {
            let (l, h) = (lo[v].min(0), hi[v].max(0));
            let a = exps[v];
            let p_pow = (a - l) as u32;
            let q_pow = (h - a) as u32;
            if p_pow > 0 {
                t = &t * cache.num_pow(p_pow);
            }
            if q_pow > 0 {
                t = &t * cache.den_pow(q_pow);
            }
        }
        num = &num + &t;
    }
    RationalFn::from_factored(num, factors)
}

struct PowerCache<'a> {
    img: &'a RationalFn,
    num: Vec<LaurentPoly>,
    den: Vec<LaurentPoly>,
}

impl<'a> PowerCache<'a> {
    fn new(img: &'a RationalFn) -> Self {
        let one = LaurentPoly::one(img.nvars());
        PowerCache { img, num: alloc::vec![one.clone()], den: alloc::vec![one] }
    }

    fn num_pow(&mut self, k: u32) -> &LaurentPoly {
        while self.num.len() <= k as usize {
            let next = self.num.last().unwrap() * &self.img.num;
            self.num.push(next);
        }
        &self.num[k as usize]
    }

    fn den_pow(&mut self, k: u32) -> &LaurentPoly {
        while self.den.len() <= k as usize {
            let next = self.den.last().unwrap() * &self.img.den;
            self.den.push(next);
        }
        &self.den[k as usize]
    }
}

/// True when `r` satisfies the reduced-form invariants.
pub fn is_reduced(r: &RationalFn) -> bool {
    let g = poly_gcd(&r.num, &r.den);
    g.is_one() && normalize_sign(r.den.clone()) == r.den
}
