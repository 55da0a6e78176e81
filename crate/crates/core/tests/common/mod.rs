//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use holant_core::classes::in_l_characterization;
use holant_core::corpus::{delta, gen_equality, gen_f7_alpha_pm};
use holant_core::{Cyc8, Signature, SignatureGrid};
use num_traits::{One, Zero};
use rand::seq::{IteratorRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// A nonzero element with small integer coordinates in the power basis.
pub fn small_cyc8(rng: &mut impl Rng) -> Cyc8 {
    loop {
        let c: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-2..=2));
        let v = Cyc8::from_integer(c[0])
            + Cyc8::alpha() * Cyc8::from_integer(c[1])
            + Cyc8::alpha_pow(2) * Cyc8::from_integer(c[2])
            + Cyc8::alpha_pow(3) * Cyc8::from_integer(c[3]);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn small_real(rng: &mut impl Rng) -> Cyc8 {
    let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Cyc8::from_integer(n)
}

/// Variable values as affine functions of `t ∈ ℤ₂^r`: row masks and offsets.
#[derive(Clone, Debug)]
pub struct AffineShape {
    pub r: usize,
    pub rows: Vec<u64>,
    pub offsets: Vec<bool>,
}

impl AffineShape {
    pub fn point(&self, t: u64) -> u64 {
        self.rows
            .iter()
            .zip(&self.offsets)
            .enumerate()
            .fold(0, |x, (i, (row, b))| x | ((((row & t).count_ones() & 1 == 1) ^ b) as u64) << i)
    }

    pub fn arity(&self) -> usize {
        self.rows.len()
    }
}

/// Random rows of full column rank `r`: the unit vectors appear somewhere.
pub fn random_shape(rng: &mut impl Rng, r: usize, n: usize) -> AffineShape {
    assert!(r <= n);
    let mut rows: Vec<u64> = (0..r).map(|j| 1u64 << j).collect();
    while rows.len() < n {
        rows.push(rng.gen_range(0..1u64 << r));
    }
    rows.shuffle(rng);
    let offsets = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    AffineShape { r, rows, offsets }
}

/// Every row appears an even number of times, so the row-product sums vanish.
pub fn paired_shape(rng: &mut impl Rng, r: usize, n: usize) -> AffineShape {
    assert!(n % 2 == 0 && 2 * r <= n);
    let mut half: Vec<u64> = (0..r).map(|j| 1u64 << j).collect();
    while half.len() < n / 2 {
        half.push(rng.gen_range(0..1u64 << r));
    }
    let mut rows: Vec<u64> = half.iter().flat_map(|&h| [h, h]).collect();
    rows.shuffle(rng);
    let offsets = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    AffineShape { r, rows, offsets }
}

/// `λ α^{Σ_S c_S t^S}` on the shape's support.
pub fn shaped_signature(shape: &AffineShape, lambda: &Cyc8, coeffs: &BTreeMap<u64, u8>) -> Signature {
    let entries = (0..1u64 << shape.r).map(|t| {
        let e: u32 = coeffs.iter().filter(|(s, _)| *s & t == **s).map(|(_, &c)| c as u32).sum();
        (shape.point(t), lambda * &Cyc8::alpha_pow(e as i64))
    });
    Signature::from_entries(shape.arity(), entries).unwrap()
}

/// Coefficients with `c_j ∈ ℤ₈`, `c_jk ∈ 2ℤ₈`, `c_jkl ∈ 4ℤ₈`, i.e. `f² ∈ 𝒜`.
pub fn square_affine_coeffs(rng: &mut impl Rng, r: usize) -> BTreeMap<u64, u8> {
    let mut c = BTreeMap::new();
    for s in 1..1u64 << r {
        let v = match s.count_ones() {
            1 => rng.gen_range(0..8),
            2 => 2 * rng.gen_range(0..4),
            3 => 4 * rng.gen_range(0..2),
            _ => 0,
        };
        if v != 0 {
            c.insert(s, v);
        }
    }
    c
}

/// Coefficients of an affine-class exponent: `c_j` even, `c_jk ∈ {0, 4}`.
pub fn affine_coeffs(rng: &mut impl Rng, r: usize) -> BTreeMap<u64, u8> {
    let mut c = BTreeMap::new();
    for s in 1..1u64 << r {
        let v = match s.count_ones() {
            1 => 2 * rng.gen_range(0..4),
            2 => 4 * rng.gen_range(0..2),
            _ => 0,
        };
        if v != 0 {
            c.insert(s, v);
        }
    }
    c
}

/// One instance of the definition-versus-characterization corpus.
pub fn l_corpus_instance(rng: &mut impl Rng) -> Signature {
    let r = rng.gen_range(0..=3usize);
    let paired = rng.gen_bool(0.5);
    let shape = if paired {
        let n = 2 * rng.gen_range(r.max(1)..=4);
        paired_shape(rng, r, n)
    } else {
        let n = rng.gen_range(r.max(1)..=8);
        random_shape(rng, r, n)
    };
    let mut coeffs = square_affine_coeffs(rng, r);
    if paired && rng.gen_bool(0.5) {
        // match the offset sums so that membership is likely
        for s in 1..1u64 << r {
            let size = s.count_ones();
            let sum = shape
                .rows
                .iter()
                .zip(&shape.offsets)
                .filter(|(row, b)| **b && *row & s == s)
                .count()
                % 2;
            let unit = match size {
                1 => 1,
                2 => 2,
                3 => 4,
                _ => continue,
            };
            let c = coeffs.get(&s).copied().unwrap_or(0);
            let hat = (c / unit) % 2;
            if hat as usize != sum {
                coeffs.insert(s, (c + unit) % 8);
            }
        }
        coeffs.retain(|_, v| *v != 0);
    }
    let lambda = small_cyc8(rng);
    shaped_signature(&shape, &lambda, &coeffs)
}

/// Closes off a list of signatures with a random perfect matching of their
/// ports (self-loops allowed). Total arity must be even.
pub fn random_closed_grid(rng: &mut impl Rng, sigs: &[Arc<Signature>]) -> SignatureGrid {
    let mut g = SignatureGrid::new();
    let mut ports = Vec::new();
    for (k, s) in sigs.iter().enumerate() {
        let v = g.add_vertex(format!("v{k}"), s.clone());
        ports.extend((0..s.arity()).map(|p| (v, p)));
    }
    assert!(ports.len() % 2 == 0);
    ports.shuffle(rng);
    for pair in ports.chunks(2) {
        g.add_edge(pair[0], pair[1]);
    }
    g
}

/// Draws signatures from `pool` until the port total is even and at most
/// `2 · max_edges`, then wires them randomly.
pub fn random_grid_from_pool(rng: &mut impl Rng, pool: &[Arc<Signature>], max_edges: usize) -> SignatureGrid {
    let odd_fix: Vec<&Arc<Signature>> = pool.iter().filter(|s| s.arity() % 2 == 1).collect();
    loop {
        let mut chosen: Vec<Arc<Signature>> = Vec::new();
        let mut ports = 0;
        let target = rng.gen_range(2..=2 * max_edges);
        while ports < target {
            let s = pool.choose(rng).unwrap();
            if ports + s.arity() > 2 * max_edges {
                break;
            }
            ports += s.arity();
            chosen.push(s.clone());
        }
        if ports % 2 == 1 {
            if let Some(s) = odd_fix.iter().filter(|s| ports + s.arity() <= 2 * max_edges).choose(rng) {
                ports += s.arity();
                chosen.push((*s).clone());
            }
        }
        if ports % 2 == 0 && ports > 0 {
            return random_closed_grid(rng, &chosen);
        }
    }
}

/// Signatures in 𝓛 small enough for grids of at most 12 edges.
pub fn local_affine_pool(rng: &mut impl Rng) -> Vec<Arc<Signature>> {
    let mut pool: Vec<Signature> =
        vec![delta(false), delta(true), gen_equality(2), gen_equality(4), gen_f7_alpha_pm()];
    let mut extra = 0;
    while extra < 12 {
        let f = l_corpus_instance(rng);
        if f.arity() >= 2 && f.arity() <= 6 && in_l_characterization(&f).0 {
            pool.push(f);
            extra += 1;
        }
    }
    pool.into_iter().map(Arc::new).collect()
}

pub fn affine_pool(rng: &mut impl Rng) -> Vec<Arc<Signature>> {
    let mut pool = vec![
        gen_equality(2),
        gen_equality(3),
        gen_equality(4),
        Signature::from_entries(2, [(0, Cyc8::one()), (3, -Cyc8::i())]).unwrap(),
    ];
    for _ in 0..10 {
        let r = rng.gen_range(0..=3);
        let n = rng.gen_range(r.max(1)..=4);
        let shape = random_shape(rng, r, n);
        let lambda = small_cyc8(rng);
        pool.push(shaped_signature(&shape, &lambda, &affine_coeffs(rng, r)));
    }
    pool.into_iter().map(Arc::new).collect()
}

pub fn product_pool(rng: &mut impl Rng) -> Vec<Arc<Signature>> {
    let mut pool = Vec::new();
    for _ in 0..4 {
        pool.push(Signature::from_values(1, &[small_cyc8(rng), small_cyc8(rng)]).unwrap());
    }
    for n in 2..=4 {
        let all = (1u64 << n) - 1;
        pool.push(Signature::from_entries(n, [(0, small_cyc8(rng)), (all, small_cyc8(rng))]).unwrap());
        // generalized equality on an arbitrary antipodal pair
        let a = rng.gen_range(1..all);
        pool.push(Signature::from_entries(n, [(a, small_cyc8(rng)), (all ^ a, small_cyc8(rng))]).unwrap());
    }
    let unary = Signature::from_values(1, &[small_cyc8(rng), small_cyc8(rng)]).unwrap();
    let neq = Signature::from_entries(2, [(1, small_cyc8(rng)), (2, small_cyc8(rng))]).unwrap();
    pool.push(unary.tensor(&neq).unwrap());
    pool.push(delta(true));
    pool.into_iter().map(Arc::new).collect()
}
