//! Sparse constraint functions `{0,1}ⁿ → Q(ζ₈)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::bits::{low_mask, to_bitstring};
use crate::{Cyc8, Error, Mat2, Result};

pub const MAX_ARITY: usize = 64;

/// A constraint function stored as its support with values.
///
/// Assignments are packed into a `u64` (bit `i` is variable `i`); absent
/// assignments have value zero and zero values are never stored.
#[derive(Clone)]
pub struct Signature {
    arity: usize,
    entries: BTreeMap<u64, Cyc8>,
    name: Option<String>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.entries == other.entries
    }
}

impl Eq for Signature {}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({}; arity {}; ", self.name.as_deref().unwrap_or("_"), self.arity)?;
        let mut list = f.debug_map();
        for (x, v) in &self.entries {
            list.entry(&to_bitstring(*x, self.arity), &v.to_string());
        }
        list.finish()?;
        write!(f, ")")
    }
}

impl Signature {
    /// The identically-zero signature of the given arity.
    pub fn zero(arity: usize) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::ArityTooLarge(arity));
        }
        Ok(Signature { arity, entries: BTreeMap::new(), name: None })
    }

    /// Builds a signature from `(assignment, value)` pairs. Zero values are
    /// dropped; a repeated assignment keeps the last value.
    pub fn from_entries(arity: usize, entries: impl IntoIterator<Item = (u64, Cyc8)>) -> Result<Self> {
        let mut sig = Self::zero(arity)?;
        let mask = low_mask(arity);
        for (x, v) in entries {
            if x & !mask != 0 {
                return Err(Error::BadAssignment { bits: x, arity });
            }
            if v.is_zero() {
                sig.entries.remove(&x);
            } else {
                sig.entries.insert(x, v);
            }
        }
        Ok(sig)
    }

    /// Dense constructor: `values[x]` is the value at packed assignment `x`.
    pub fn from_values(arity: usize, values: &[Cyc8]) -> Result<Self> {
        assert_eq!(values.len(), 1usize << arity, "need 2^arity values");
        Self::from_entries(arity, values.iter().cloned().enumerate().map(|(x, v)| (x as u64, v)))
    }

    /// Expands the symmetric shorthand `[f₀, …, f_n]` (value by Hamming weight).
    pub fn symmetric(values: &[Cyc8]) -> Result<Self> {
        let n = values.len().checked_sub(1).expect("symmetric signature needs at least one value");
        if n > 24 {
            return Err(Error::ArityTooLarge(n));
        }
        Self::from_entries(
            n,
            (0..1u64 << n).map(|x| (x, values[x.count_ones() as usize].clone())),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("<arity {}>", self.arity))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, x: u64) -> Cyc8 {
        self.entries.get(&x).cloned().unwrap_or_else(Cyc8::zero)
    }

    pub fn value(&self, x: u64) -> Option<&Cyc8> {
        self.entries.get(&x)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &Cyc8)> + '_ {
        self.entries.iter().map(|(x, v)| (*x, v))
    }

    /// `supp(f)`, in increasing packed order.
    pub fn support(&self) -> Vec<u64> {
        self.entries.keys().copied().collect()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_real_valued(&self) -> bool {
        self.entries.values().all(Cyc8::is_real)
    }

    pub fn scale(&self, c: &Cyc8) -> Signature {
        let mut out = Self::from_entries(self.arity, self.entries.iter().map(|(x, v)| (*x, v * c)))
            .expect("same arity");
        out.name = self.name.clone();
        out
    }

    pub fn map_values(&self, f: impl Fn(u64, &Cyc8) -> Cyc8) -> Signature {
        let mut out = Self::from_entries(self.arity, self.entries.iter().map(|(x, v)| (*x, f(*x, v))))
            .expect("same arity");
        out.name = self.name.clone();
        out
    }

    /// Fixes variable `var` to `bit` and removes it.
    pub fn pin(&self, var: usize, bit: bool) -> Result<Signature> {
        if var >= self.arity {
            return Err(Error::BadVariable { var, arity: self.arity });
        }
        let low = low_mask(var);
        let entries = self
            .entries
            .iter()
            .filter(|(x, _)| (*x >> var & 1 == 1) == bit)
            .map(|(x, v)| ((x & low) | ((x >> (var + 1)) << var), v.clone()));
        Self::from_entries(self.arity - 1, entries)
    }

    /// Applies `M₁ ⊗ … ⊗ M_n` to the value vector, matrix `k` acting on variable `k`.
    pub fn apply_transform(&self, mats: &[Mat2]) -> Result<Signature> {
        if mats.len() != self.arity {
            return Err(Error::BadVariable { var: mats.len(), arity: self.arity });
        }
        let mut cur: BTreeMap<u64, Cyc8> = self.entries.clone();
        for (k, m) in mats.iter().enumerate() {
            if *m == Mat2::identity() {
                continue;
            }
            let mut next: BTreeMap<u64, Cyc8> = BTreeMap::new();
            for (x, v) in &cur {
                let xk = (*x >> k & 1) as usize;
                for yk in 0..2 {
                    let coef = &m.m[yk][xk];
                    if coef.is_zero() {
                        continue;
                    }
                    let y = (*x & !(1 << k)) | ((yk as u64) << k);
                    let term = v * coef;
                    match next.get_mut(&y) {
                        Some(acc) => *acc += term,
                        None => {
                            next.insert(y, term);
                        }
                    }
                }
            }
            next.retain(|_, v| !v.is_zero());
            cur = next;
        }
        Ok(Signature { arity: self.arity, entries: cur, name: self.name.clone() })
    }

    /// Applies the same matrix to every variable.
    pub fn apply_uniform(&self, m: &Mat2) -> Signature {
        self.apply_transform(&vec![m.clone(); self.arity]).expect("one matrix per variable")
    }

    /// Reorders variables: variable `i` of the result is variable `order[i]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<Signature> {
        let mut seen = vec![false; self.arity];
        if order.len() != self.arity {
            return Err(Error::BadVariable { var: order.len(), arity: self.arity });
        }
        for &o in order {
            if o >= self.arity || seen[o] {
                return Err(Error::BadVariable { var: o, arity: self.arity });
            }
            seen[o] = true;
        }
        let entries = self.entries.iter().map(|(x, v)| {
            let y = order
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &o)| acc | ((x >> o & 1) << i));
            (y, v.clone())
        });
        let mut out = Self::from_entries(self.arity, entries)?;
        out.name = self.name.clone();
        Ok(out)
    }

    /// `f ⊗ g`, with `g`'s variables appended after `f`'s.
    pub fn tensor(&self, other: &Signature) -> Result<Signature> {
        let arity = self.arity + other.arity;
        if arity > MAX_ARITY {
            return Err(Error::ArityTooLarge(arity));
        }
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (x, v) in &self.entries {
            for (y, w) in &other.entries {
                entries.push((x | (y << self.arity), v * w));
            }
        }
        Self::from_entries(arity, entries)
    }

    /// Entrywise product of two signatures of the same arity.
    pub fn pointwise_mul(&self, other: &Signature) -> Signature {
        assert_eq!(self.arity, other.arity);
        let entries = self
            .entries
            .iter()
            .filter_map(|(x, v)| other.entries.get(x).map(|w| (*x, v * w)));
        Self::from_entries(self.arity, entries).expect("same arity")
    }

    /// The constant `c` with `self = c · g`, if one exists.
    pub fn proportional_to(&self, g: &Signature) -> Option<Cyc8> {
        if self.arity != g.arity || self.entries.len() != g.entries.len() {
            return None;
        }
        let Some((x0, f0)) = self.entries.iter().next() else {
            return Some(Cyc8::one());
        };
        let g0 = g.entries.get(x0)?;
        let c = f0.checked_div(g0).ok()?;
        for (x, v) in &self.entries {
            let w = g.entries.get(x)?;
            if *v != w * &c {
                return None;
            }
        }
        Some(c)
    }
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
    fn support_of_simple_signatures() {
        assert_eq!(sym(&["1", "0"]).support(), vec![0]);
        assert_eq!(sym(&["1", "0", "0", "0", "1"]).support(), vec![0, 0b1111]);
    }

    #[test]
    fn pinning() {
        let eq2 = sym(&["1", "0", "1"]);
        assert_eq!(eq2.pin(0, true).unwrap(), sym(&["0", "1"]));
        let d0 = sym(&["1", "0"]);
        let z = d0.pin(0, true).unwrap();
        assert!(z.is_zero() && z.arity() == 0);
        assert!(eq2.pin(2, true).is_err());
    }

    #[test]
    fn transforms() {
        let f = sym(&["1", "0", "-i", "a"]);
        assert_eq!(f.apply_uniform(&Mat2::identity()), f);
        assert_eq!(sym(&["1", "1"]).apply_uniform(&Mat2::alpha_diag(1)), sym(&["1", "a"]));
        let z = Mat2::z();
        let back = f.apply_uniform(&z).apply_uniform(&z.inverse().unwrap());
        assert_eq!(back, f);
    }

    #[test]
    fn proportionality() {
        let g = sym(&["1", "a", "0"]);
        assert_eq!(g.proportional_to(&g), Some(Cyc8::one()));
        assert_eq!(g.scale(&v("2i")).proportional_to(&g), Some(v("2i")));
        let eq2 = sym(&["1", "0", "1"]);
        let only00 = Signature::from_entries(2, [(0, Cyc8::one())]).unwrap();
        assert_eq!(eq2.proportional_to(&only00), None);
    }

    #[test]
    fn permute_and_tensor() {
        let f = Signature::from_entries(2, [(0b01, v("2")), (0b11, v("a"))]).unwrap();
        let p = f.permute(&[1, 0]).unwrap();
        assert_eq!(p.get(0b10), v("2"));
        let t = f.tensor(&sym(&["0", "1"])).unwrap();
        assert_eq!(t.support(), vec![0b101, 0b111]);
        assert!(f.permute(&[0, 0]).is_err());
    }
}
