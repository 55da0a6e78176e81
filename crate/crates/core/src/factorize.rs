//! Finest tensor factorization `f = g₁ ⊗ … ⊗ g_m` over disjoint variable blocks.
//!
//! The support is split first: an affine support splits along the connected
//! components of its column matroid, any other support by minimizing the
//! mutual information between the two sides of a cut (a symmetric submodular
//! function, so Queyranne's algorithm applies). Values are then grouped by a
//! multiplicative Möbius transform over the support blocks: a nonunit
//! interaction term that touches several blocks forces them into one factor.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Zero};

use crate::{AffineSupport, Cyc8, Error, Result, Signature};

/// One factor: `sig` is a function of the original variables `vars`
/// (ascending), with `sig`'s variable `k` standing for `vars[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub vars: Vec<usize>,
    pub sig: Signature,
}

/// Projects a packed assignment onto the variables of `mask`, renumbered
/// consecutively in ascending order.
pub fn extract(x: u64, vars: &[usize]) -> u64 {
    vars.iter().enumerate().fold(0, |acc, (k, &v)| acc | ((x >> v & 1) << k))
}

fn deposit(y: u64, vars: &[usize]) -> u64 {
    vars.iter().enumerate().fold(0, |acc, (k, &v)| acc | ((y >> k & 1) << v))
}

fn mask_vars(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Finest factorization of a nonzero signature. Factors are ordered by their
/// lowest variable; their product equals `f` exactly.
pub fn tensor_factorize(f: &Signature) -> Result<Vec<Factor>> {
    if f.is_zero() {
        return Err(Error::EmptySupport);
    }
    let n = f.arity();
    if n <= 1 {
        return Ok(vec![Factor { vars: (0..n).collect(), sig: f.clone() }]);
    }
    let support = f.support();
    let blocks = support_blocks(n, &support);
    let parts = merge_by_values(f, &blocks);
    build_factors(f, parts)
}

/// Finest partition of the variables such that `supp(f)` is the product of
/// its projections; each block is a variable mask.
pub fn support_blocks(n: usize, support: &[u64]) -> Vec<u64> {
    let mut blocks = match AffineSupport::from_points(n, support) {
        Ok(aff) => matroid_components(&aff),
        Err(_) => {
            let all = crate::bits::low_mask(n);
            let mut out = Vec::new();
            split_set(all, support.to_vec(), &mut out);
            out
        }
    };
    blocks.sort_by_key(|m| m.trailing_zeros());
    blocks
}

fn matroid_components(aff: &AffineSupport) -> Vec<u64> {
    let n = aff.arity();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for &b in aff.basis() {
        let vars = mask_vars(b);
        for w in vars.windows(2) {
            let (a, c) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = c;
        }
    }
    let mut comp: BTreeMap<usize, u64> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        *comp.entry(r).or_default() |= 1 << i;
    }
    comp.into_values().collect()
}

fn projection_size(points: &[u64], mask: u64) -> usize {
    points.iter().map(|x| x & mask).collect::<HashSet<_>>().len()
}

fn entropy(points: &[u64], mask: u64) -> f64 {
    let mut counts: HashMap<u64, u32> = HashMap::new();
    for x in points {
        *counts.entry(x & mask).or_default() += 1;
    }
    let total = points.len() as f64;
    counts
        .values()
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.ln()
        })
        .sum()
}

fn is_product(points: &[u64], x: u64, y: u64) -> bool {
    projection_size(points, x) * projection_size(points, y) == points.len()
}

fn split_set(mask: u64, points: Vec<u64>, out: &mut Vec<u64>) {
    if mask.count_ones() <= 1 {
        out.push(mask);
        return;
    }
    match zero_cut(mask, &points) {
        Some(x) => {
            let y = mask & !x;
            let px: Vec<u64> = points.iter().map(|p| p & x).collect::<HashSet<_>>().into_iter().collect();
            let py: Vec<u64> = points.iter().map(|p| p & y).collect::<HashSet<_>>().into_iter().collect();
            split_set(x, px, out);
            split_set(y, py, out);
        }
        None => out.push(mask),
    }
}

/// Queyranne's minimization of `I(X; V∖X)` under the uniform distribution on
/// the support; returns a verified cut of value zero if one exists.
fn zero_cut(mask: u64, points: &[u64]) -> Option<u64> {
    const TOL: f64 = 1e-9;
    let h_all = (points.len() as f64).ln();
    let cut = |x: u64| entropy(points, x) + entropy(points, mask & !x) - h_all;
    let mut groups: Vec<u64> = mask_vars(mask).into_iter().map(|v| 1u64 << v).collect();
    while groups.len() > 1 {
        let mut order = vec![0usize];
        let mut w = groups[0];
        let mut rest: Vec<usize> = (1..groups.len()).collect();
        let singles: Vec<f64> = groups.iter().map(|&g| cut(g)).collect();
        while !rest.is_empty() {
            let (pos, _) = rest
                .iter()
                .enumerate()
                .map(|(pos, &u)| (pos, cut(w | groups[u]) - singles[u]))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("nonempty");
            let u = rest.swap_remove(pos);
            w |= groups[u];
            order.push(u);
        }
        let u = order[order.len() - 1];
        let t = order[order.len() - 2];
        if singles[u] < TOL && is_product(points, groups[u], mask & !groups[u]) {
            return Some(groups[u]);
        }
        groups[t] |= groups[u];
        groups.remove(u);
    }
    None
}

/// Coarsens the support blocks so that the values factor as well.
fn merge_by_values(f: &Signature, blocks: &[u64]) -> Vec<u64> {
    let m = blocks.len();
    if m <= 1 {
        return blocks.to_vec();
    }
    let (p, _) = f.entries().next().expect("nonzero");
    let mut h: HashMap<u64, Cyc8> = f.entries().map(|(x, v)| (x, v.clone())).collect();
    for &b in blocks {
        let keys: Vec<u64> = h.keys().copied().filter(|x| (x ^ p) & b != 0).collect();
        for x in keys {
            let base = (x & !b) | (p & b);
            let d = h[&base].clone();
            let v = h.get_mut(&x).expect("present");
            *v = v.checked_div(&d).expect("support is a product, so the base point is present");
        }
    }
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let one = Cyc8::one();
    for (x, phi) in &h {
        if *phi == one {
            continue;
        }
        let touched: Vec<usize> = (0..m).filter(|&k| (x ^ p) & blocks[k] != 0).collect();
        for w in touched.windows(2) {
            let (a, c) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = c;
        }
    }
    let mut merged: BTreeMap<usize, u64> = BTreeMap::new();
    for k in 0..m {
        let r = find(&mut parent, k);
        *merged.entry(r).or_default() |= blocks[k];
    }
    let mut parts: Vec<u64> = merged.into_values().collect();
    parts.sort_by_key(|m| m.trailing_zeros());
    parts
}

fn build_factors(f: &Signature, parts: Vec<u64>) -> Result<Vec<Factor>> {
    let (p, fp) = f.entries().next().map(|(x, v)| (x, v.clone())).expect("nonzero");
    let m = parts.len();
    let correction = if m > 1 { fp.inv()?.pow(m as u32 - 1) } else { Cyc8::one() };
    let mut out = Vec::with_capacity(m);
    for (k, &part) in parts.iter().enumerate() {
        let vars = mask_vars(part);
        let mut entries: BTreeMap<u64, Cyc8> = BTreeMap::new();
        for (x, v) in f.entries() {
            if (x ^ p) & !part == 0 {
                let mut val = v.clone();
                if k == 0 {
                    val = &val * &correction;
                }
                entries.insert(extract(x, &vars), val);
            }
        }
        let sig = Signature::from_entries(vars.len(), entries)?;
        out.push(Factor { vars, sig });
    }
    Ok(out)
}

/// Reassembles `Π g_C` as a signature of the given arity.
pub fn product_of(arity: usize, factors: &[Factor]) -> Result<Signature> {
    let mut acc: Vec<(u64, Cyc8)> = vec![(0, Cyc8::one())];
    for fac in factors {
        let mut next = Vec::with_capacity(acc.len() * fac.sig.support_size());
        for (x, v) in &acc {
            for (y, w) in fac.sig.entries() {
                next.push((x | deposit(y, &fac.vars), v * w));
            }
        }
        acc = next;
    }
    Signature::from_entries(arity, acc.into_iter().filter(|(_, v)| !v.is_zero()))
}

/// Whether `f` splits as `g(x_X) · h(x_{V∖X})` for the variable mask `X`.
pub fn splits_over(f: &Signature, x_mask: u64) -> bool {
    let all = crate::bits::low_mask(f.arity());
    let y_mask = all & !x_mask;
    let support = f.support();
    let Some(&p) = support.first() else {
        return true;
    };
    if !is_product(&support, x_mask, y_mask) {
        return false;
    }
    let fp = f.get(p);
    f.entries().all(|(x, v)| {
        let a = f.get((x & x_mask) | (p & y_mask));
        let b = f.get((p & x_mask) | (x & y_mask));
        v * &fp == &a * &b
    })
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

    fn block_masks(fs: &[Factor]) -> Vec<u64> {
        fs.iter().map(|f| f.vars.iter().fold(0, |a, &v| a | 1 << v)).collect()
    }

    #[test]
    fn single_point_splits_into_unaries() {
        let f = Signature::from_entries(2, [(0, Cyc8::one())]).unwrap();
        let fs = tensor_factorize(&f).unwrap();
        assert_eq!(fs.len(), 2);
        for fac in &fs {
            assert_eq!(fac.sig, sym(&["1", "0"]));
        }
    }

    #[test]
    fn equality_is_non_decomposable() {
        let eq2 = sym(&["1", "0", "1"]);
        let fs = tensor_factorize(&eq2).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].sig, eq2);
    }

    #[test]
    fn interaction_term_keeps_blocks_together() {
        // (-1)^{x0 x1 x2} on the full cube: every pairwise slice is flat
        let f = Signature::from_entries(3, (0..8u64).map(|x| (x, if x == 7 { -Cyc8::one() } else { Cyc8::one() })))
            .unwrap();
        assert_eq!(tensor_factorize(&f).unwrap().len(), 1);
    }

    #[test]
    fn non_affine_support_split() {
        // [0,1,1] on (x0,x2) times [1,a] on x1
        let g = sym(&["0", "1", "1"]);
        let h = sym(&["1", "a"]);
        let f = g.tensor(&h).unwrap().permute(&[0, 2, 1]).unwrap();
        let fs = tensor_factorize(&f).unwrap();
        assert_eq!(block_masks(&fs), vec![0b101, 0b010]);
        assert_eq!(product_of(3, &fs).unwrap(), f);
        assert!(fs[1].sig.proportional_to(&h).is_some());
    }

    #[test]
    fn splitting_predicate() {
        let f = sym(&["1", "1"]).tensor(&sym(&["1", "0", "1"])).unwrap();
        assert!(splits_over(&f, 0b001));
        assert!(!splits_over(&f, 0b010));
    }
}
