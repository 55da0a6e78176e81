//! Membership tests for the tractable families and the set-level verdicts.

mod holant_star;
mod verdict;

use std::fmt;


pub use holant_star::{holant_star_tractable, two_term_decompose, HolantStarWitness, TwoTerm};
pub use verdict::{classify_csp2c, classify_holant_c, ClassVerdict, Label};

use crate::factorize::tensor_factorize;
use crate::{AlphaForm, Cyc8, Error, Mat2, Signature};

/// Product type: every non-decomposable factor is unary or a weighted
/// generalized equality (support inside `{a, ā}`).
pub fn in_p(f: &Signature) -> bool {
    let Ok(factors) = tensor_factorize(f) else {
        return true;
    };
    factors.iter().all(|fac| is_generalized_equality(&fac.sig))
}

/// Arity at most one, or support inside an antipodal pair.
pub fn is_generalized_equality(f: &Signature) -> bool {
    if f.arity() <= 1 {
        return true;
    }
    let full = crate::bits::low_mask(f.arity());
    match f.support()[..] {
        [] | [_] => true,
        [a, b] => a ^ b == full,
        _ => false,
    }
}

/// Affine type: `λ · χ_{Ax=b} · i^{L(x)+2Q(x)}`.
pub fn in_a(f: &Signature) -> bool {
    if f.is_zero() {
        return true;
    }
    match AlphaForm::fit(f) {
        Ok(form) => form_is_affine(&form),
        Err(_) => false,
    }
}

fn form_is_affine(form: &AlphaForm) -> bool {
    form.coeffs.iter().all(|(s, &c)| match s.count_ones() {
        1 => c % 2 == 0,
        2 => c % 4 == 0,
        _ => false,
    })
}

/// `M_α^{⊗n}` applied to an affine signature.
pub fn in_a_alpha(f: &Signature) -> bool {
    in_a(&f.apply_uniform(&Mat2::alpha_diag(-1)))
}

/// Support weight at most one.
pub fn in_m(f: &Signature) -> bool {
    f.support().iter().all(|x| x.count_ones() <= 1)
}

/// Multiplies `f(x)` by `α^{⟨σ, x⟩}`, i.e. applies `M_{α^{σ_1}} ⊗ … ⊗ M_{α^{σ_n}}`.
pub fn alpha_twist(f: &Signature, sigma: u64) -> Signature {
    f.map_values(|x, v| v * &Cyc8::alpha_pow((x & sigma).count_ones() as i64))
}

/// Local affine, straight from the definition: every support point's twist is affine.
pub fn in_l_definition(f: &Signature) -> bool {
    f.support().into_iter().all(|sigma| in_a(&alpha_twist(f, sigma)))
}

/// Why a signature passes or fails the algebraic local-affine test.
///
/// Index sets refer to positions among the free variables (see
/// [`AffineSupport::free_vars`](crate::AffineSupport::free_vars)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LCertificate {
    Holds,
    ZeroFunction,
    NotAffine,
    NotUnimodular,
    /// `c_S` violates the parity/degree requirement.
    Coefficient { set: Vec<usize>, value: u8 },
    /// `Σ_i Π_{j∈S} A[i][j]` is odd.
    RowProduct { set: Vec<usize> },
    /// `Σ_i b_i Π_{j∈S} A[i][j]` disagrees with the reduced coefficient of `S`.
    OffsetProduct { set: Vec<usize>, sum: u8, expected: u8 },
}

impl fmt::Display for LCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &[usize]| s.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(",");
        match self {
            LCertificate::Holds => write!(f, "all local-affine equations hold"),
            LCertificate::ZeroFunction => write!(f, "identically zero"),
            LCertificate::NotAffine => write!(f, "support is not affine"),
            LCertificate::NotUnimodular => write!(f, "values are not a common constant times powers of alpha"),
            LCertificate::Coefficient { set: s, value } => {
                write!(f, "coefficient c_{{{}}} = {value} (mod 8) not allowed", set(s))
            }
            LCertificate::RowProduct { set: s } => {
                write!(f, "sum_i prod_{{j in {{{}}}}} A[i][j] = 1 (mod 2)", set(s))
            }
            LCertificate::OffsetProduct { set: s, sum, expected } => write!(
                f,
                "sum_i b[i] prod_{{j in {{{}}}}} A[i][j] = {sum} (mod 2), coefficient requires {expected}",
                set(s)
            ),
        }
    }
}

fn subsets_up_to(r: usize, k: usize) -> Vec<u64> {
    // Nonempty subsets of [r] with at most k elements, by size then lexicographically.
    let mut out = Vec::new();
    fn rec(start: usize, r: usize, left: usize, cur: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for j in start..r {
            rec(j + 1, r, left - 1, cur | 1 << j, out);
        }
    }
    for size in 1..=k.min(r) {
        rec(0, r, size, 0, &mut out);
    }
    out
}

fn mask_list(s: u64) -> Vec<usize> {
    (0..64).filter(|j| s >> j & 1 == 1).collect()
}

/// Local affine via the algebraic criterion on `(A, b)` and the ℤ₈ coefficients.
///
/// Requires `c_S` even for `|S| = 2`, divisible by 4 for `|S| = 3` and zero
/// beyond; every `Σ_i Π_{j∈S} A[i][j]` even for `1 ≤ |S| ≤ 4`; and
/// `Σ_i b_i Π_{j∈S} A[i][j]` equal mod 2 to `c_S`, `c_S/2`, `c_S/4` for
/// `|S| = 1, 2, 3`.
pub fn in_l_characterization(f: &Signature) -> (bool, LCertificate) {
    if f.is_zero() {
        return (true, LCertificate::ZeroFunction);
    }
    let form = match AlphaForm::fit(f) {
        Ok(form) => form,
        Err(Error::NotAffine) => return (false, LCertificate::NotAffine),
        Err(_) => return (false, LCertificate::NotUnimodular),
    };
    let mut bad: Vec<(&u64, &u8)> = form
        .coeffs
        .iter()
        .filter(|(s, &c)| match s.count_ones() {
            1 => false,
            2 => c % 2 != 0,
            3 => c % 4 != 0,
            _ => true,
        })
        .collect();
    bad.sort_by_key(|(s, _)| (s.count_ones(), crate::bits::lex_key(**s, 64)));
    if let Some((s, c)) = bad.first() {
        return (false, LCertificate::Coefficient { set: mask_list(**s), value: **c });
    }
    let aff = &form.support;
    let rows: Vec<(u64, bool)> = (0..aff.arity()).map(|i| (aff.row(i), aff.b(i))).collect();
    let r = aff.rank();
    for s in subsets_up_to(r, 4) {
        let odd = rows.iter().filter(|(a, _)| a & s == s).count() % 2 == 1;
        if odd {
            return (false, LCertificate::RowProduct { set: mask_list(s) });
        }
    }
    for s in subsets_up_to(r, 3) {
        let sum = (rows.iter().filter(|(a, b)| *b && a & s == s).count() % 2) as u8;
        let c = form.coeff(s);
        let expected = match s.count_ones() {
            1 => c % 2,
            2 => (c / 2) % 2,
            _ => (c / 4) % 2,
        };
        if sum != expected {
            return (false, LCertificate::OffsetProduct { set: mask_list(s), sum, expected });
        }
    }
    (true, LCertificate::Holds)
}

/// Convenience wrapper returning only the verdict of [`in_l_characterization`].
pub fn in_l(f: &Signature) -> bool {
    in_l_characterization(f).0
}

/// All factors of arity at most two.
pub fn in_t(f: &Signature) -> bool {
    match tensor_factorize(f) {
        Ok(fs) => fs.iter().all(|fac| fac.sig.arity() <= 2),
        Err(_) => true,
    }
}
