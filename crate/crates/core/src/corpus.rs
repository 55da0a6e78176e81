//! Generators for the standard named signatures and bundle-level gadget
//! constructions, plus a replay of the gadget that turns the `(+−)` Hamming
//! signature into its `(++)` form.
//!
//! The chain signatures `f_{2^r−1}` index their variables by the nonzero
//! `d ∈ ℤ₂^r` in increasing order (variable `d − 1`), with bit `j` of `d`
//! selecting free variable `t_j`; on the support, variable `d − 1` equals
//! `⟨d, t⟩`.

use std::collections::BTreeMap;

use num_traits::One;

use crate::affine::{BundleTable, Sign};
use crate::grid::compose_gadget_capped;
use crate::{Cyc8, Error, Result, Signature, SignatureGrid};

/// Edge cap for corpus gadgets; their supports are sparse enough that the
/// contraction stays small well beyond the interactive default.
const GADGET_CAP: usize = 256;

pub fn gen_equality(n: usize) -> Signature {
    assert!(n >= 1, "equality needs at least one variable");
    let all = crate::bits::low_mask(n);
    Signature::from_entries(n, [(0, Cyc8::one()), (all, Cyc8::one())])
        .expect("arity within bounds")
        .with_name(format!("eq{n}"))
}

/// `Δ₀` or `Δ₁`.
pub fn delta(bit: bool) -> Signature {
    Signature::from_entries(1, [(bit as u64, Cyc8::one())])
        .expect("arity 1")
        .with_name(if bit { "delta1" } else { "delta0" })
}

fn chain_point(r: usize, t: u64) -> u64 {
    (1..1u64 << r).fold(0, |acc, d| acc | (((d & t).count_ones() as u64) & 1) << (d - 1))
}

/// `f_{2^r−1}` with value `α^{Σ_S c_S Π_{j∈S} t_j}` on its support.
pub fn gen_weighted_chain(r: usize, coeffs: &BTreeMap<u64, u8>) -> Signature {
    assert!((1..=6).contains(&r), "chain rank must be in 1..=6");
    let entries = (0..1u64 << r).map(|t| {
        let e: u32 = coeffs.iter().filter(|(s, _)| *s & t == **s).map(|(_, &c)| c as u32).sum();
        (chain_point(r, t), Cyc8::alpha_pow(e as i64))
    });
    Signature::from_entries((1 << r) - 1, entries).expect("arity at most 63")
}

/// `f_{2^r−1}`: all nonempty linear combinations of `r` free variables, value 1.
pub fn gen_f_chain(r: usize) -> Signature {
    gen_weighted_chain(r, &BTreeMap::new()).with_name(format!("f{}", (1u32 << r) - 1))
}

/// The arity-7 essential function with compressed value `α^{4 t₀t₁t₂} = (−1)^{t₀t₁t₂}`.
pub fn gen_f7_alpha() -> Signature {
    gen_weighted_chain(3, &BTreeMap::from([(0b111, 4)])).with_name("f7a")
}

/// The arity-14 Hamming signature: support `{w w̄ : w ∈ C⊥}` for the dual
/// Hamming code, value `(−1)^{x₁x₂x₄}` in the free variables.
pub fn gen_f7_alpha_pm() -> Signature {
    let entries = (0..8u64).map(|t| {
        let w = chain_point(3, t);
        let value = if t == 0b111 { -Cyc8::one() } else { Cyc8::one() };
        (w | (!w & 0x7f) << 7, value)
    });
    Signature::from_entries(14, entries).expect("arity 14").with_name("f7a_pm")
}

/// `f₇^α(++)`, built from the essential function by doubling every variable.
pub fn gen_f7_alpha_pp() -> Result<Signature> {
    Ok(retype_all(&gen_f7_alpha(), BundleType::PlusPlus)?.with_name("f7a_pp"))
}

/// `f₃(+−)` with compressed values `weights[t]` (all ones by default).
pub fn gen_f3_pm(weights: Option<[Cyc8; 4]>) -> Result<Signature> {
    let base = match weights {
        None => gen_f_chain(2),
        Some(w) => Signature::from_entries(3, (0..4u64).map(|t| (chain_point(2, t), w[t as usize].clone())))?,
    };
    Ok(retype_all(&base, BundleType::PlusMinus)?.with_name("f3_pm"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BundleType {
    PlusPlus,
    PlusMinus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleOp {
    /// Replace a variable by three copies of itself.
    Triple(usize),
    /// Join two same-sign variables of one bundle.
    Collate(usize, usize),
    /// Double every (singleton-bundle) variable with the given types.
    Retype(Vec<BundleType>),
}

fn affine_bundles(f: &Signature) -> Result<BundleTable> {
    BundleTable::of(f).map_err(|e| Error::BundleViolation(format!("{}: {e}", f.display_name())))
}

/// Applies a bundle operation through gadget contraction, so values are
/// inherited from `f`.
///
/// Output variable orders: `Triple(v)` puts the three copies at `v`'s
/// position; `Collate(a, b)` drops `a` and `b`; `Retype` lists the original
/// variables first, then their copies.
pub fn bundle_variant(f: &Signature, op: &BundleOp) -> Result<Signature> {
    let bt = affine_bundles(f)?;
    let n = f.arity();
    let mut g = SignatureGrid::new();
    let fv = g.add_vertex("f", f.clone());
    match op {
        BundleOp::Triple(v) => {
            if *v >= n {
                return Err(Error::BundleViolation(format!("no variable {v}")));
            }
            let e = g.add_vertex("eq4", gen_equality(4));
            g.add_edge((fv, *v), (e, 0));
            for i in 0..n {
                if i == *v {
                    g.dangle((e, 1)).dangle((e, 2)).dangle((e, 3));
                } else {
                    g.dangle((fv, i));
                }
            }
        }
        BundleOp::Collate(a, b) => {
            let (a, b) = (*a, *b);
            if a == b || a >= n || b >= n {
                return Err(Error::BundleViolation(format!("bad collation pair ({a}, {b})")));
            }
            let bundle = bt
                .bundle_of(a)
                .filter(|bd| bd.members.iter().any(|(x, _)| *x == b))
                .ok_or_else(|| Error::BundleViolation(format!("variables {a} and {b} are not in one bundle")))?;
            let sign = |x: usize| bundle.members.iter().find(|(y, _)| *y == x).map(|(_, s)| *s);
            if sign(a) != sign(b) {
                return Err(Error::BundleViolation(format!("variables {a} and {b} have opposite signs")));
            }
            if bundle.members.len() < 3 {
                return Err(Error::BundleViolation("collation would empty the bundle".into()));
            }
            g.add_edge((fv, a), (fv, b));
            for i in (0..n).filter(|&i| i != a && i != b) {
                g.dangle((fv, i));
            }
        }
        BundleOp::Retype(types) => {
            if types.len() != n {
                return Err(Error::BundleViolation(format!("{} types for arity {n}", types.len())));
            }
            if !bt.constant.is_empty() || bt.bundles.iter().any(|b| b.members.len() != 1) {
                return Err(Error::BundleViolation("retype needs every bundle to be a single variable".into()));
            }
            let eq3 = std::sync::Arc::new(gen_equality(3));
            // x0 = x1, x2 = complement
            let split = std::sync::Arc::new(
                Signature::from_entries(3, [(0b100, Cyc8::one()), (0b011, Cyc8::one())])?.with_name("split_pm"),
            );
            let mut gadgets = Vec::with_capacity(n);
            for (i, ty) in types.iter().enumerate() {
                let sig = match ty {
                    BundleType::PlusPlus => eq3.clone(),
                    BundleType::PlusMinus => split.clone(),
                };
                let e = g.add_vertex(format!("dup{i}"), sig);
                g.add_edge((fv, i), (e, 0));
                gadgets.push(e);
            }
            for &e in &gadgets {
                g.dangle((e, 1));
            }
            for &e in &gadgets {
                g.dangle((e, 2));
            }
        }
    }
    compose_gadget_capped(&g, GADGET_CAP)
}

/// Retypes every variable the same way.
pub fn retype_all(f: &Signature, ty: BundleType) -> Result<Signature> {
    bundle_variant(f, &BundleOp::Retype(vec![ty; f.arity()]))
}

/// `f²++`: two copies of `f` joined through one `(=₄)` per variable; output
/// variables `2i` and `2i+1` both carry variable `i`, with value `f(x)²`.
pub fn square_doubled(f: &Signature) -> Result<Signature> {
    let n = f.arity();
    let mut g = SignatureGrid::new();
    let a = g.add_vertex("f1", f.clone());
    let b = g.add_vertex("f2", f.clone());
    let eq4 = std::sync::Arc::new(gen_equality(4));
    for i in 0..n {
        let e = g.add_vertex(format!("eq{i}"), eq4.clone());
        g.add_edge((a, i), (e, 0)).add_edge((b, i), (e, 1));
        g.dangle((e, 2)).dangle((e, 3));
    }
    compose_gadget_capped(&g, GADGET_CAP)
}

/// The gadget of one `f₇^α(+−)` and three `f₃(+−)` joined by nine edges.
///
/// Ports of the Hamming vertex: `d − 1` for the `(+)` variable of bundle `d`
/// and `d + 6` for its `(−)` partner. Ports of each `f₃(+−)`:
/// `[s₁+, s₂+, (s₁+s₂)+, s₁−, s₂−, (s₁+s₂)−]`.
pub fn figure1_grid() -> Result<SignatureGrid> {
    let mut g = SignatureGrid::new();
    let h = g.add_vertex("h", gen_f7_alpha_pm());
    let f3 = std::sync::Arc::new(gen_f3_pm(None)?);
    let u = g.add_vertex("u", f3.clone());
    let v = g.add_vertex("v", f3.clone());
    let w = g.add_vertex("w", f3);
    // bundles of h by d: x1=1, x2=2, x1+x2=3, x3=4, x1+x3=5, x2+x3=6, x1+x2+x3=7
    g.add_edge((u, 3), (h, 7)) // u1 with x1
        .add_edge((u, 4), (h, 12)) // u2 with x2+x3
        .add_edge((v, 3), (h, 8)) // v1 with x2
        .add_edge((v, 4), (h, 11)) // v2 with x1+x3
        .add_edge((w, 3), (h, 10)) // w1 with x3
        .add_edge((w, 4), (h, 9)) // w2 with x1+x2
        .add_edge((u, 5), (h, 13))
        .add_edge((u, 2), (v, 2))
        .add_edge((v, 5), (w, 5));
    for p in 0..7 {
        g.dangle((h, p));
    }
    // the partner of each h(+) variable, in bundle order d = 1..7
    for p in [(u, 0), (v, 0), (w, 1), (w, 0), (v, 1), (u, 1), (w, 2)] {
        g.dangle(p);
    }
    Ok(g)
}

/// Contracts [`figure1_grid`] and reports whether the result is a constant
/// multiple of the directly built `f₇^α(++)`.
pub fn replay_figure1() -> Result<(Signature, bool)> {
    let derived = compose_gadget_capped(&figure1_grid()?, GADGET_CAP)?.with_name("figure1");
    let direct = gen_f7_alpha_pp()?;
    let ok = derived.proportional_to(&direct).is_some();
    Ok((derived, ok))
}

/// Names accepted by [`generate`].
pub fn known_names() -> Vec<String> {
    let mut names: Vec<String> = vec!["delta0".into(), "delta1".into(), "eq<n>".into()];
    names.extend((1..=6).map(|r| format!("f{}", (1u32 << r) - 1)));
    names.extend(["f7a", "f7a_pm", "f7a_pp", "f3_pm", "figure1"].map(String::from));
    names
}

/// Looks up a generator by name.
pub fn generate(name: &str) -> Result<Signature> {
    let unknown = || Error::UnknownSignature(name.to_string());
    match name {
        "delta0" => Ok(delta(false)),
        "delta1" => Ok(delta(true)),
        "f7a" => Ok(gen_f7_alpha()),
        "f7a_pm" => Ok(gen_f7_alpha_pm()),
        "f7a_pp" => gen_f7_alpha_pp(),
        "f3_pm" => gen_f3_pm(None),
        "figure1" => Ok(replay_figure1()?.0),
        _ => {
            if let Some(n) = name.strip_prefix("eq") {
                let n: usize = n.parse().map_err(|_| unknown())?;
                if n == 0 || n > crate::signature::MAX_ARITY {
                    return Err(unknown());
                }
                return Ok(gen_equality(n));
            }
            if let Some(k) = name.strip_prefix('f') {
                let k: u32 = k.parse().map_err(|_| unknown())?;
                if let Some(r) = (1..=6).find(|&r| (1u32 << r) - 1 == k) {
                    return Ok(gen_f_chain(r));
                }
            }
            Err(unknown())
        }
    }
}

/// `true` when every bundle of `f` has type `ty` (as a sorted sign string).
pub fn bundles_all_of_type(f: &Signature, ty: &str) -> bool {
    BundleTable::of(f).map(|bt| bt.all_of_type(ty)).unwrap_or(false)
}

/// Signs of each variable within its bundle, for display.
pub fn sign_string(f: &Signature) -> Option<String> {
    let bt = BundleTable::of(f).ok()?;
    let mut out = vec!['0'; f.arity()];
    for b in &bt.bundles {
        for (v, s) in &b.members {
            out[*v] = if *s == Sign::Plus { '+' } else { '-' };
        }
    }
    Some(out.into_iter().collect())
}
