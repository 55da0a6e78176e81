use std::fmt;

use num_traits::{One, Zero};

use super::{in_m, in_p};
use crate::factorize::{tensor_factorize, Factor};
use crate::{Cyc8, Mat2, Signature};

/// `f = w₁ · u₁ ⊗ … ⊗ u_n + w₂ · v₁ ⊗ … ⊗ v_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTerm {
    pub u: Vec<[Cyc8; 2]>,
    pub v: Vec<[Cyc8; 2]>,
    pub weights: (Cyc8, Cyc8),
}

impl TwoTerm {
    pub fn to_signature(&self) -> Signature {
        let n = self.u.len();
        let term = |vecs: &[[Cyc8; 2]], w: &Cyc8| -> Vec<(u64, Cyc8)> {
            let mut acc = vec![(0u64, w.clone())];
            for (k, vec) in vecs.iter().enumerate() {
                let mut next = Vec::with_capacity(acc.len() * 2);
                for (x, val) in &acc {
                    for (bit, c) in vec.iter().enumerate() {
                        if !c.is_zero() {
                            next.push((x | (bit as u64) << k, val * c));
                        }
                    }
                }
                acc = next;
            }
            acc
        };
        let mut entries = std::collections::BTreeMap::<u64, Cyc8>::new();
        for (x, val) in term(&self.u, &self.weights.0).into_iter().chain(term(&self.v, &self.weights.1)) {
            *entries.entry(x).or_insert_with(Cyc8::zero) += val;
        }
        Signature::from_entries(n, entries).expect("arity within bounds")
    }
}

fn small_coeff(index: usize, attempt: usize) -> Cyc8 {
    let k = (index as i64 + 1) * (2 * attempt as i64 + 3) + (attempt as i64) * (index as i64 % 5);
    Cyc8::from_integer(k % 17 - 8 + if k % 17 == 8 { 1 } else { 0 })
}

fn eigenvector(m: &Mat2, lambda: &Cyc8) -> [Cyc8; 2] {
    let [[a, b], [c, d]] = &m.m;
    if !b.is_zero() {
        [b.clone(), lambda.clone() - a.clone()]
    } else if !c.is_zero() {
        [lambda.clone() - d.clone(), c.clone()]
    } else if lambda == a {
        [Cyc8::one(), Cyc8::zero()]
    } else {
        [Cyc8::zero(), Cyc8::one()]
    }
}

/// Splits a rank-one tensor into per-variable vectors, the scalar folded into
/// the first. `None` unless every factor is unary.
fn rank_one_vectors(g: &Signature) -> Option<Vec<[Cyc8; 2]>> {
    let factors: Vec<Factor> = tensor_factorize(g).ok()?;
    if factors.iter().any(|f| f.vars.len() != 1) {
        return None;
    }
    Some(factors.iter().map(|f| [f.sig.get(0), f.sig.get(1)]).collect())
}

/// Decomposes `f` (arity ≥ 3) as a sum of two product tensors.
///
/// Slices over the first two variables are 2×2 matrices `U D_y Wᵀ` with
/// `U = [u₀ v₀]` and `D_y` diagonal, so the eigenvectors of `P₁ P₂⁻¹` for two
/// random slice combinations recover `u₀, v₀`. Returns `None` when no exact
/// decomposition exists in Q(ζ₈) or `f` has tensor rank one.
pub fn two_term_decompose(f: &Signature) -> Option<TwoTerm> {
    let n = f.arity();
    if n < 3 || f.is_zero() {
        return None;
    }
    let mut rests: Vec<u64> = f.support().iter().map(|x| x >> 2).collect();
    rests.sort_unstable();
    rests.dedup();
    for attempt in 0..6 {
        let combo = |shift: usize| -> Mat2 {
            let mut m = [[Cyc8::zero(), Cyc8::zero()], [Cyc8::zero(), Cyc8::zero()]];
            for (idx, &y) in rests.iter().enumerate() {
                let c = small_coeff(idx + shift, attempt);
                for (a, row) in m.iter_mut().enumerate() {
                    for (b, cell) in row.iter_mut().enumerate() {
                        let val = f.get(y << 2 | (b as u64) << 1 | a as u64);
                        if !val.is_zero() {
                            *cell += &val * &c;
                        }
                    }
                }
            }
            let [[a, b], [c, d]] = m;
            Mat2::new(a, b, c, d)
        };
        let p1 = combo(0);
        let p2 = combo(rests.len() + 7);
        let Ok(p2_inv) = p2.inverse() else { continue };
        let m = &p1 * &p2_inv;
        let tr = &m.m[0][0] + &m.m[1][1];
        let disc = &tr * &tr - Cyc8::from_integer(4) * m.det();
        if disc.is_zero() {
            continue;
        }
        let root = disc.sqrt()?;
        let half = Cyc8::from_ratio(1, 2);
        let l1 = (&tr + &root) * half.clone();
        let l2 = (tr - root) * half;
        let u0 = eigenvector(&m, &l1);
        let v0 = eigenvector(&m, &l2);
        let basis = Mat2::from_columns(u0.clone(), v0.clone());
        let Ok(inv) = basis.inverse() else { continue };
        let mut mats = vec![Mat2::identity(); n];
        mats[0] = inv;
        let dual = f.apply_transform(&mats).ok()?;
        let g = dual.pin(0, false).ok()?;
        let h = dual.pin(0, true).ok()?;
        if g.is_zero() || h.is_zero() {
            return None;
        }
        let mut u = vec![u0];
        u.extend(rank_one_vectors(&g)?);
        let mut v = vec![v0];
        v.extend(rank_one_vectors(&h)?);
        let tt = TwoTerm { u, v, weights: (Cyc8::one(), Cyc8::one()) };
        return (tt.to_signature() == *f).then_some(tt);
    }
    None
}

/// A Holant\* tractability witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HolantStarWitness {
    /// Every factor has arity at most two.
    T,
    /// Every factor lies in `H𝒫`; `H` is orthogonal up to scaling of its columns.
    Hp(Mat2),
    Zp(Mat2),
    Zm(Mat2),
}

impl HolantStarWitness {
    pub fn family(&self) -> &'static str {
        match self {
            HolantStarWitness::T => "T",
            HolantStarWitness::Hp(_) => "HP",
            HolantStarWitness::Zp(_) => "ZP",
            HolantStarWitness::Zm(_) => "ZM",
        }
    }

    pub fn matrix(&self) -> Option<&Mat2> {
        match self {
            HolantStarWitness::T => None,
            HolantStarWitness::Hp(m) | HolantStarWitness::Zp(m) | HolantStarWitness::Zm(m) => Some(m),
        }
    }

    /// Re-checks one signature against the witness.
    pub fn admits(&self, f: &Signature) -> bool {
        let Ok(factors) = tensor_factorize(f) else {
            return true;
        };
        match self {
            HolantStarWitness::T => factors.iter().all(|fac| fac.sig.arity() <= 2),
            HolantStarWitness::Hp(h) => match h.inverse() {
                Ok(inv) => factors.iter().all(|fac| in_p(&fac.sig.apply_uniform(&inv))),
                Err(_) => false,
            },
            HolantStarWitness::Zp(z) => match z.inverse() {
                Ok(inv) => factors.iter().all(|fac| half_dense(&fac.sig) && in_p(&fac.sig.apply_uniform(&inv))),
                Err(_) => false,
            },
            HolantStarWitness::Zm(z) => match z.inverse() {
                Ok(inv) => factors.iter().all(|fac| half_dense(&fac.sig) && in_m(&fac.sig.apply_uniform(&inv))),
                Err(_) => false,
            },
        }
    }
}

impl fmt::Display for HolantStarWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.matrix() {
            None => write!(f, "{}", self.family()),
            Some(m) => write!(
                f,
                "{}[[{}, {}], [{}, {}]]",
                self.family(),
                m.m[0][0],
                m.m[0][1],
                m.m[1][0],
                m.m[1][1]
            ),
        }
    }
}

/// Necessary condition for a non-decomposable factor to lie in `Z𝒫` or
/// `Z𝓜`: up to a phase `i^{±|x|}`, the image of a generalized equality or of
/// a weight-≤1 function under `Z^{⊗n}` vanishes on at most half the cube.
/// Rejecting sparser factors up front avoids a dense transform.
fn half_dense(f: &Signature) -> bool {
    f.arity() <= 1 || f.support_size() as u128 >= 1u128 << (f.arity() - 1)
}

fn dot(a: &[Cyc8; 2], b: &[Cyc8; 2]) -> Cyc8 {
    &a[0] * &b[0] + &a[1] * &b[1]
}

/// Scales a nonzero vector so its first nonzero entry is 1. Column scaling
/// of `H` does not affect membership of `H⁻¹`-transformed factors in 𝒫.
fn leading_one(c: &[Cyc8; 2]) -> [Cyc8; 2] {
    let lead = if c[0].is_zero() { &c[1] } else { &c[0] };
    let inv = lead.inv().expect("nonzero column");
    [&c[0] * &inv, &c[1] * &inv]
}

/// First Holant\* family (in the order `T`, `H𝒫`, `Z𝒫`, `Z𝓜`) containing
/// every non-decomposable factor of every signature.
pub fn holant_star_tractable(set: &[Signature]) -> Option<HolantStarWitness> {
    let mut factors: Vec<Signature> = Vec::new();
    for f in set {
        if let Ok(fs) = tensor_factorize(f) {
            factors.extend(fs.into_iter().map(|fac| fac.sig));
        }
    }
    if factors.iter().all(|g| g.arity() <= 2) {
        return Some(HolantStarWitness::T);
    }
    let all_admit = |w: &HolantStarWitness| factors.iter().all(|g| w.admits(g));
    let big = factors.iter().find(|g| g.arity() >= 3).expect("some factor has arity ≥ 3");
    if let Some(tt) = two_term_decompose(big) {
        let (u0, v0) = (&tt.u[0], &tt.v[0]);
        if dot(u0, v0).is_zero() && !dot(u0, u0).is_zero() && !dot(v0, v0).is_zero() {
            let (a, b) = if u0[0].is_zero() { (v0, u0) } else { (u0, v0) };
            let w = HolantStarWitness::Hp(Mat2::from_columns(leading_one(a), leading_one(b)));
            if all_admit(&w) {
                return Some(w);
            }
        }
    }
    for z in [Mat2::z(), Mat2::z_conj()] {
        let w = HolantStarWitness::Zp(z);
        if all_admit(&w) {
            return Some(w);
        }
    }
    for z in [Mat2::z(), Mat2::z_conj()] {
        let w = HolantStarWitness::Zm(z);
        if all_admit(&w) {
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_value;

    fn v(s: &str) -> Cyc8 {
        parse_value(s).unwrap()
    }

    fn sym(vals: &[&str]) -> Signature {
        Signature::symmetric(&vals.iter().map(|s| v(s)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn equality_two_terms() {
        let eq3 = sym(&["1", "0", "0", "1"]);
        let tt = two_term_decompose(&eq3).unwrap();
        assert_eq!(tt.to_signature(), eq3);
        for k in 0..3 {
            let (u, w) = (&tt.u[k], &tt.v[k]);
            assert!(u[0].is_zero() != u[1].is_zero() && w[0].is_zero() != w[1].is_zero());
        }
    }

    #[test]
    fn hadamard_columns_recovered() {
        let h = Mat2::new(v("1"), v("1"), v("1"), v("-1"));
        let f = sym(&["1", "0", "0", "1"]).apply_uniform(&h);
        let tt = two_term_decompose(&f).unwrap();
        assert_eq!(tt.to_signature(), f);
        let cols = [h.column(0), h.column(1)];
        for vecs in [&tt.u, &tt.v] {
            for vec in vecs.iter() {
                let parallel = |c: &[Cyc8; 2]| &vec[0] * &c[1] == &vec[1] * &c[0];
                assert!(cols.iter().any(parallel));
            }
        }
    }

    #[test]
    fn rank_one_is_rejected() {
        assert!(two_term_decompose(&sym(&["1", "0", "0", "0"])).is_none());
    }

    #[test]
    fn witnesses() {
        let set = [sym(&["1", "0", "1"]), sym(&["2", "a"])];
        assert_eq!(holant_star_tractable(&set), Some(HolantStarWitness::T));
        let w = holant_star_tractable(&[sym(&["1", "0", "0", "1"])]).unwrap();
        let HolantStarWitness::Hp(h) = w else { panic!("expected HP, got {w:?}") };
        assert_eq!(h, Mat2::identity());
        let g = Signature::from_entries(
            4,
            [(0b0000, v("1")), (0b0001, v("2")), (0b0010, v("-a")), (0b0100, v("1")), (0b1000, v("3"))],
        )
        .unwrap();
        let f = g.apply_uniform(&Mat2::z());
        assert!(matches!(holant_star_tractable(&[f]), Some(HolantStarWitness::Zm(_))));
    }

    #[test]
    fn sparse_high_arity_factor_is_rejected_quickly() {
        let f = crate::corpus::gen_f_chain(5);
        assert!(!half_dense(&f));
        assert_eq!(holant_star_tractable(&[f]), None);
    }
}
