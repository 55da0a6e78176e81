//! Affine supports, bundles, compressed functions and the ℤ₈ α-exponent
//! normal form `f = λ · χ_supp · α^{Σ_S c_S Π_{j∈S} x_j}`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::{Cyc8, Error, Result, Signature};

/// `supp(f)` presented as `x_i = Σ_j A[i][j] · t_j + b_i (mod 2)`, where
/// `t_j` is the value of the `j`-th free variable.
///
/// Free variables are the pivots of the reduced echelon basis of the
/// translated support, chosen with lowest-index preference; `b` is the
/// support point whose free variables are all zero, which is also the
/// lexicographically least support point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSupport {
    arity: usize,
    free: Vec<usize>,
    basis: Vec<u64>,
    offset: u64,
}

impl AffineSupport {
    /// Closure test and presentation of `supp(f)`.
    pub fn of(f: &Signature) -> Result<AffineSupport> {
        let support = f.support();
        Self::from_points(f.arity(), &support)
    }

    pub fn from_points(arity: usize, points: &[u64]) -> Result<AffineSupport> {
        let &p0 = points.first().ok_or(Error::EmptySupport)?;
        // Reduced basis: each vector's lowest set bit is its pivot, and no
        // other vector has that bit set.
        let mut basis: Vec<u64> = Vec::new();
        for &x in &points[1..] {
            let mut v = x ^ p0;
            for &b in &basis {
                if v >> b.trailing_zeros() & 1 == 1 {
                    v ^= b;
                }
            }
            if v == 0 {
                continue;
            }
            let p = v.trailing_zeros();
            for b in basis.iter_mut() {
                if *b >> p & 1 == 1 {
                    *b ^= v;
                }
            }
            basis.push(v);
            if basis.len() > 63 {
                return Err(Error::NotAffine);
            }
        }
        basis.sort_by_key(|b| b.trailing_zeros());
        if points.len() as u128 != 1u128 << basis.len() {
            return Err(Error::NotAffine);
        }
        let mut offset = p0;
        for &b in &basis {
            if offset >> b.trailing_zeros() & 1 == 1 {
                offset ^= b;
            }
        }
        let free = basis.iter().map(|b| b.trailing_zeros() as usize).collect();
        Ok(AffineSupport { arity, free, basis, offset })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn rank(&self) -> usize {
        self.free.len()
    }

    /// Free variables, ascending.
    pub fn free_vars(&self) -> &[usize] {
        &self.free
    }

    /// Variable order with the free variables first, then the rest ascending.
    pub fn perm(&self) -> Vec<usize> {
        let mut p = self.free.clone();
        p.extend((0..self.arity).filter(|i| !self.free.contains(i)));
        p
    }

    /// Row `i` of `A` as a mask over free-variable positions.
    pub fn row(&self, var: usize) -> u64 {
        self.basis
            .iter()
            .enumerate()
            .fold(0, |acc, (j, b)| acc | ((b >> var & 1) << j))
    }

    pub fn b(&self, var: usize) -> bool {
        self.offset >> var & 1 == 1
    }

    /// The support point with the lowest index (all free variables zero).
    pub fn base_point(&self) -> u64 {
        self.offset
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    /// `A` with rows listed in [`perm`](Self::perm) order; the top `r × r` block is the identity.
    pub fn a_matrix(&self) -> Vec<Vec<bool>> {
        self.perm()
            .into_iter()
            .map(|i| {
                let row = self.row(i);
                (0..self.rank()).map(|j| row >> j & 1 == 1).collect()
            })
            .collect()
    }

    /// `b` in [`perm`](Self::perm) order; its first `r` entries are zero.
    pub fn b_vector(&self) -> Vec<bool> {
        self.perm().into_iter().map(|i| self.b(i)).collect()
    }

    /// The support point whose free variables take the values in `t`.
    pub fn point(&self, t: u64) -> u64 {
        self.basis
            .iter()
            .enumerate()
            .filter(|(j, _)| t >> j & 1 == 1)
            .fold(self.offset, |acc, (_, b)| acc ^ b)
    }

    /// Free-variable values of a point.
    pub fn coords(&self, x: u64) -> u64 {
        self.free
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &v)| acc | ((x >> v & 1) << j))
    }

    pub fn contains(&self, x: u64) -> bool {
        self.point(self.coords(x)) == x
    }

    pub fn size(&self) -> u64 {
        1u64 << self.rank()
    }
}

/// The compressed function: `table[t] = f(point(t))` over all `2^r` free assignments.
pub fn compressed_of(f: &Signature) -> Result<(AffineSupport, Vec<Cyc8>)> {
    let aff = AffineSupport::of(f)?;
    let table = (0..aff.size()).map(|t| f.get(aff.point(t))).collect();
    Ok((aff, table))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    /// Linear combination of free variables, as a nonzero mask.
    pub name: u64,
    pub members: Vec<(usize, Sign)>,
}

impl Bundle {
    pub fn plus_count(&self) -> usize {
        self.members.iter().filter(|(_, s)| *s == Sign::Plus).count()
    }

    pub fn minus_count(&self) -> usize {
        self.members.len() - self.plus_count()
    }

    pub fn is_odd(&self) -> bool {
        self.members.len() % 2 == 1
    }

    pub fn is_even(&self) -> bool {
        !self.is_odd()
    }

    /// Even bundle with an even number of `+`.
    pub fn is_consistent(&self) -> bool {
        self.is_even() && self.plus_count() % 2 == 0
    }

    pub fn is_opposite(&self) -> bool {
        self.is_even() && self.plus_count() % 2 == 1
    }

    /// Type as a sorted string of signs, e.g. `"+-"`.
    pub fn type_string(&self) -> String {
        "+".repeat(self.plus_count()) + &"-".repeat(self.minus_count())
    }
}

/// Variables grouped by the linear combination of free variables they follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleTable {
    pub rank: usize,
    pub arity: usize,
    /// Non-empty bundles ordered by name.
    pub bundles: Vec<Bundle>,
    /// Variables that are constant on the support (zero row of `A`), with their value.
    pub constant: Vec<(usize, bool)>,
}

impl BundleTable {
    pub fn of(f: &Signature) -> Result<BundleTable> {
        Ok(Self::from_support(&AffineSupport::of(f)?))
    }

    pub fn from_support(aff: &AffineSupport) -> BundleTable {
        let mut by_name: BTreeMap<u64, Vec<(usize, Sign)>> = BTreeMap::new();
        let mut constant = Vec::new();
        for i in 0..aff.arity() {
            let row = aff.row(i);
            if row == 0 {
                constant.push((i, aff.b(i)));
            } else {
                let sign = if aff.b(i) { Sign::Minus } else { Sign::Plus };
                by_name.entry(row).or_default().push((i, sign));
            }
        }
        BundleTable {
            rank: aff.rank(),
            arity: aff.arity(),
            bundles: by_name.into_iter().map(|(name, members)| Bundle { name, members }).collect(),
            constant,
        }
    }

    pub fn essential_arity(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundle(&self, name: u64) -> Option<&Bundle> {
        self.bundles.iter().find(|b| b.name == name)
    }

    pub fn bundle_of(&self, var: usize) -> Option<&Bundle> {
        self.bundles.iter().find(|b| b.members.iter().any(|(v, _)| *v == var))
    }

    /// Every bundle has the given type string (e.g. `"+-"`).
    pub fn all_of_type(&self, ty: &str) -> bool {
        self.bundles.iter().all(|b| b.type_string() == ty)
    }
}

/// `f = λ · χ_supp · α^{Σ_S c_S Π_{j∈S} t_j}` with `c_S ∈ ℤ₈`, `S` a nonempty
/// subset of free-variable positions encoded as a mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaForm {
    pub lambda: Cyc8,
    pub support: AffineSupport,
    pub coeffs: BTreeMap<u64, u8>,
}

impl AlphaForm {
    pub fn fit(f: &Signature) -> Result<AlphaForm> {
        let (support, table) = compressed_of(f)?;
        let lambda = table[0].clone();
        let inv = lambda.inv()?;
        let mut e: Vec<u8> = Vec::with_capacity(table.len());
        for v in &table {
            let ratio = v * &inv;
            e.push(ratio.alpha_log().ok_or(Error::NotUnimodular)?);
        }
        let r = support.rank();
        // Möbius inversion over subsets: c_S = Σ_{T⊆S} (−1)^{|S∖T|} e(T).
        let mut c = e.clone();
        for j in 0..r {
            for t in 0..c.len() {
                if t >> j & 1 == 1 {
                    c[t] = (c[t] + 8 - c[t ^ (1 << j)]) % 8;
                }
            }
        }
        let coeffs = c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(s, &v)| (s as u64, v))
            .collect();
        let form = AlphaForm { lambda, support, coeffs };
        for (t, v) in table.iter().enumerate() {
            if form.eval_free(t as u64) != *v {
                unreachable!("alpha form does not reproduce compressed value at {t}");
            }
        }
        Ok(form)
    }

    pub fn rank(&self) -> usize {
        self.support.rank()
    }

    pub fn coeff(&self, s: u64) -> u8 {
        self.coeffs.get(&s).copied().unwrap_or(0)
    }

    /// Exponent `Σ_S c_S Π_{j∈S} t_j mod 8` at a free assignment.
    pub fn exponent(&self, t: u64) -> u8 {
        self.coeffs
            .iter()
            .filter(|(s, _)| *s & t == **s)
            .fold(0u8, |acc, (_, c)| (acc + c) % 8)
    }

    pub fn eval_free(&self, t: u64) -> Cyc8 {
        &self.lambda * &Cyc8::alpha_pow(self.exponent(t) as i64)
    }

    /// Value at an arbitrary assignment (zero off the support).
    pub fn eval(&self, x: u64) -> Cyc8 {
        if self.support.contains(x) {
            self.eval_free(self.support.coords(x))
        } else {
            Cyc8::zero()
        }
    }

    /// Largest `|S|` with nonzero `c_S`.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|s| s.count_ones()).max().unwrap_or(0)
    }

    /// `f² ∈ 𝒜`: `c_S` even for `|S| = 2` and divisible by 4 for `|S| ≥ 3`.
    /// Always true for a fitted form; exposed for constructed ones.
    pub fn square_is_affine(&self) -> bool {
        self.coeffs.iter().all(|(s, &c)| match s.count_ones() {
            0 | 1 => true,
            2 => c % 2 == 0,
            _ => c % 4 == 0,
        })
    }

    /// Rebuilds the signature this form represents.
    pub fn to_signature(&self) -> Signature {
        let s = &self.support;
        Signature::from_entries(s.arity(), (0..s.size()).map(|t| (s.point(t), self.eval_free(t))))
            .expect("arity within bounds")
    }
}

pub fn affine_support_of(f: &Signature) -> Result<AffineSupport> {
    AffineSupport::of(f)
}

pub fn bundles_of(f: &Signature) -> Result<BundleTable> {
    BundleTable::of(f)
}

pub fn fit_alpha_form(f: &Signature) -> Result<AlphaForm> {
    AlphaForm::fit(f)
}
