use core::fmt;

/// Coefficient field for the one reducibility question the criteria ask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldTag {
    Rationals,
    Complexes,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Rationals => "Q",
            FieldTag::Complexes => "C",
        })
    }
}

/// Why `X^d + 1` splits over the chosen field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducibilityWitness {
    /// `X^e + 1` is a proper factor with integer coefficients; `d / e` is odd.
    RationalFactor { factor_degree: u64 },
    /// Over `C` every polynomial of degree at least two splits into linear factors.
    SplitsOverComplexes,
}

/// Decides whether `X^d + 1` is reducible over `field`.
///
/// Over `C` that happens iff `d >= 2`. Over `Q`, `X^d + 1` is the product of
/// the cyclotomic polynomials `Phi_k` with `k | 2d` and `k ∤ d`, so it is
/// irreducible iff `d` is a power of two.
pub fn xd_plus_one_reducible(d: u64, field: FieldTag) -> bool {
    xd_plus_one_witness(d, field).is_some()
}

/// Like [`xd_plus_one_reducible`], returning the factor that witnesses it.
pub fn xd_plus_one_witness(d: u64, field: FieldTag) -> Option<ReducibilityWitness> {
    assert!(d >= 1, "X^d + 1 needs d >= 1");
    let odd = d >> d.trailing_zeros();
    if odd > 1 {
        return Some(ReducibilityWitness::RationalFactor { factor_degree: d / odd });
    }
    match field {
        FieldTag::Complexes if d >= 2 => Some(ReducibilityWitness::SplitsOverComplexes),
        _ => None,
    }
}
