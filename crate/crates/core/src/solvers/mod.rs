//! Polynomial-time Holant evaluation for product, affine, α-affine and
//! local-affine grids, with dispatch and a brute-force fallback.

mod gauss;
mod gf2;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

pub use gauss::{gauss_sum_brute, gauss_sum_eval, QuadraticExponent};
pub use gf2::{gf2_solve, GF2Solution, GF2System};

use crate::bits::BitRow;
use crate::classes::{alpha_twist, in_a, in_a_alpha, in_l, in_p};
use crate::factorize::tensor_factorize;
use crate::grid::{holant_brute_capped, DEFAULT_BRUTE_CAP};
use crate::{AlphaForm, Cyc8, Error, Mat2, Result, Signature, SignatureGrid};

fn not_in(g: &SignatureGrid, v: usize, class: &'static str) -> Error {
    Error::NotInClass { vertex: v, name: g.vertices[v].label.clone(), class }
}

fn closed_vars(g: &SignatureGrid) -> Result<Vec<Vec<usize>>> {
    if !g.is_closed() {
        return Err(Error::MalformedGrid("solver needs a closed grid".into()));
    }
    g.port_variables()
}

/// Adds the support equations of `form` (ports mapped to `ports`) to `sys`.
fn add_support_equations(sys: &mut GF2System, form: &AlphaForm, ports: &[usize]) {
    let aff = &form.support;
    let free = aff.free_vars();
    for (i, &x) in ports.iter().enumerate() {
        if free.contains(&i) {
            continue;
        }
        let row = aff.row(i);
        let mut vars = vec![x];
        vars.extend((0..free.len()).filter(|j| row >> j & 1 == 1).map(|j| ports[free[j]]));
        sys.add_equation(&vars, aff.b(i));
    }
}

/// Holant of a closed grid whose signatures are all affine.
pub fn solve_affine_grid(g: &SignatureGrid) -> Result<Cyc8> {
    let vars = closed_vars(g)?;
    let k = g.edge_count();
    let mut sys = GF2System::new(k);
    let mut e = QuadraticExponent::new(k);
    for (v, vert) in g.vertices.iter().enumerate() {
        if vert.sig.is_zero() {
            return Ok(Cyc8::zero());
        }
        let form = AlphaForm::fit(&vert.sig).map_err(|_| not_in(g, v, "A"))?;
        let ports = &vars[v];
        let free: Vec<usize> = form.support.free_vars().iter().map(|&p| ports[p]).collect();
        for (&s, &c) in &form.coeffs {
            match s.count_ones() {
                1 if c % 2 == 0 => e.add_linear(free[s.trailing_zeros() as usize], c / 2),
                2 if c % 4 == 0 => {
                    if c == 4 {
                        let j = s.trailing_zeros() as usize;
                        let l = 63 - s.leading_zeros() as usize;
                        e.add_quad(free[j], free[l]);
                    }
                }
                _ => return Err(not_in(g, v, "A")),
            }
        }
        add_support_equations(&mut sys, &form, ports);
        e.prefactor = &e.prefactor * &form.lambda;
    }
    Ok(gauss_sum_eval(&e, &sys))
}

/// Holant of a closed grid whose signatures are all of product type.
///
/// Every factor becomes parity relations between edge variables plus unary
/// weights; each connected class then sums over its two assignments.
pub fn solve_product_grid(g: &SignatureGrid) -> Result<Cyc8> {
    let vars = closed_vars(g)?;
    let k = g.edge_count();
    let mut uf = ParityUnionFind::new(k);
    let mut weights: Vec<[Cyc8; 2]> = vec![[Cyc8::one(), Cyc8::one()]; k];
    let mut scalar = Cyc8::one();
    for (v, vert) in g.vertices.iter().enumerate() {
        let factors = match tensor_factorize(&vert.sig) {
            Ok(fs) => fs,
            Err(Error::EmptySupport) => return Ok(Cyc8::zero()),
            Err(e) => return Err(e),
        };
        for fac in factors {
            let ports: Vec<usize> = fac.vars.iter().map(|&p| vars[v][p]).collect();
            let support = fac.sig.support();
            match (ports.len(), &support[..]) {
                (0, _) => scalar = &scalar * &fac.sig.get(0),
                (1, _) => {
                    let w = &mut weights[ports[0]];
                    w[0] = &w[0] * &fac.sig.get(0);
                    w[1] = &w[1] * &fac.sig.get(1);
                }
                (_, &[a]) => {
                    scalar = &scalar * &fac.sig.get(a);
                    for (j, &x) in ports.iter().enumerate() {
                        weights[x][(a >> j & 1 ^ 1) as usize] = Cyc8::zero();
                    }
                }
                (_, &[a, b]) if a ^ b == crate::bits::low_mask(ports.len()) => {
                    let x0 = ports[0];
                    for (j, &x) in ports.iter().enumerate().skip(1) {
                        let rel = (a >> j & 1) != (a & 1);
                        if !uf.union(x0, x, rel) {
                            return Ok(Cyc8::zero());
                        }
                    }
                    let w = &mut weights[x0];
                    let (wa, wb) = (fac.sig.get(a), fac.sig.get(b));
                    let (w_at0, w_at1) = if a & 1 == 0 { (wa, wb) } else { (wb, wa) };
                    w[0] = &w[0] * &w_at0;
                    w[1] = &w[1] * &w_at1;
                }
                _ => return Err(not_in(g, v, "P")),
            }
        }
    }
    let mut comp: std::collections::BTreeMap<usize, [Cyc8; 2]> = std::collections::BTreeMap::new();
    for (x, w) in weights.iter().enumerate() {
        let (root, parity) = uf.find(x);
        let acc = comp.entry(root).or_insert_with(|| [Cyc8::one(), Cyc8::one()]);
        for bit in 0..2 {
            acc[bit] = &acc[bit] * &w[bit ^ parity as usize];
        }
    }
    Ok(comp.into_values().fold(scalar, |acc, [w0, w1]| acc * (w0 + w1)))
}

struct ParityUnionFind {
    parent: Vec<usize>,
    /// Parity of a node relative to its parent.
    rel: Vec<bool>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), rel: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, pr) = self.find(p);
        self.parent[x] = root;
        self.rel[x] ^= pr;
        (root, self.rel[x])
    }

    /// Records `x ⊕ y = odd`; `false` on contradiction.
    fn union(&mut self, x: usize, y: usize, odd: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == odd;
        }
        self.parent[ry] = rx;
        self.rel[ry] = px ^ py ^ odd;
        true
    }
}

/// `[1, 0, −i]`: undoes the twist `α · α` on an edge assigned 1.
fn compensator() -> Arc<Signature> {
    Arc::new(
        Signature::from_entries(2, [(0b00, Cyc8::one()), (0b11, -Cyc8::i())])
            .expect("arity 2")
            .with_name("comp"),
    )
}

/// Holant of a closed grid whose signatures are all local affine.
///
/// Takes the particular solution `σ*` of the global support system, twists
/// each vertex by `α^{⟨σ*|v, x⟩}`, subdivides every edge with `σ*_e = 1` by
/// `[1, 0, −i]`, and evaluates the resulting affine grid.
pub fn solve_local_affine_grid(g: &SignatureGrid) -> Result<Cyc8> {
    let vars = closed_vars(g)?;
    let k = g.edge_count();
    let mut sys = GF2System::new(k);
    for (v, vert) in g.vertices.iter().enumerate() {
        if vert.sig.is_zero() {
            return Ok(Cyc8::zero());
        }
        if !in_l(&vert.sig) {
            return Err(not_in(g, v, "L"));
        }
        let form = AlphaForm::fit(&vert.sig).map_err(|_| not_in(g, v, "L"))?;
        add_support_equations(&mut sys, &form, &vars[v]);
    }
    let Some(sol) = gf2_solve(&sys) else {
        return Ok(Cyc8::zero());
    };
    let sigma: &BitRow = &sol.particular;
    let mut h = SignatureGrid::new();
    for (v, vert) in g.vertices.iter().enumerate() {
        let local = vars[v].iter().enumerate().fold(0u64, |acc, (p, &x)| acc | (sigma.get(x) as u64) << p);
        let twisted = if local == 0 { vert.sig.clone() } else { Arc::new(alpha_twist(&vert.sig, local)) };
        h.add_vertex(vert.label.clone(), twisted);
    }
    let comp = compensator();
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        if sigma.get(e) {
            let d = h.add_vertex(format!("comp{e}"), comp.clone());
            h.add_edge(a, (d, 0)).add_edge((d, 1), b);
        } else {
            h.add_edge(a, b);
        }
    }
    solve_affine_grid(&h).map_err(|err| match err {
        Error::NotInClass { vertex, .. } => not_in(g, vertex.min(g.vertices.len() - 1), "L"),
        other => other,
    })
}

/// Holant of a closed grid whose signatures are all α-affine: every vertex is
/// pulled back by `M_α⁻¹` and every edge gains `[1, 0, i]`.
pub fn solve_affine_alpha_grid(g: &SignatureGrid) -> Result<Cyc8> {
    closed_vars(g)?;
    let back = Mat2::alpha_diag(-1);
    let mut h = SignatureGrid::new();
    for (v, vert) in g.vertices.iter().enumerate() {
        if !in_a_alpha(&vert.sig) {
            return Err(not_in(g, v, "A^alpha"));
        }
        h.add_vertex(vert.label.clone(), vert.sig.apply_uniform(&back));
    }
    let edge_sig =
        Arc::new(Signature::from_entries(2, [(0b00, Cyc8::one()), (0b11, Cyc8::i())]).expect("arity 2"));
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        let d = h.add_vertex(format!("edge{e}"), edge_sig.clone());
        h.add_edge(a, (d, 0)).add_edge((d, 1), b);
    }
    solve_affine_grid(&h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Product,
    Affine,
    AffineAlpha,
    LocalAffine,
    Brute,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Product => "product",
            Method::Affine => "affine",
            Method::AffineAlpha => "affine-alpha",
            Method::LocalAffine => "local-affine",
            Method::Brute => "brute",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub force_brute: bool,
    pub max_brute_edges: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { force_brute: false, max_brute_edges: DEFAULT_BRUTE_CAP }
    }
}

/// Picks the first applicable method among product, affine, α-affine and
/// local affine; otherwise evaluates by enumeration within the edge cap.
pub fn solve_auto(g: &SignatureGrid) -> Result<(Cyc8, Method)> {
    solve_with(g, SolveOptions::default())
}

pub fn solve_with(g: &SignatureGrid, opts: SolveOptions) -> Result<(Cyc8, Method)> {
    closed_vars(g)?;
    if opts.force_brute {
        return Ok((holant_brute_capped(g, opts.max_brute_edges)?, Method::Brute));
    }
    let sigs: Vec<&Signature> = g.vertices.iter().map(|v| v.sig.as_ref()).collect();
    if sigs.iter().all(|f| in_p(f)) {
        return Ok((solve_product_grid(g)?, Method::Product));
    }
    if sigs.iter().all(|f| in_a(f)) {
        return Ok((solve_affine_grid(g)?, Method::Affine));
    }
    if sigs.iter().all(|f| in_a_alpha(f)) {
        return Ok((solve_affine_alpha_grid(g)?, Method::AffineAlpha));
    }
    if sigs.iter().all(|f| in_l(f)) {
        return Ok((solve_local_affine_grid(g)?, Method::LocalAffine));
    }
    Ok((holant_brute_capped(g, opts.max_brute_edges)?, Method::Brute))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_value;
    use crate::grid::holant_brute;

    fn sym(vals: &[&str]) -> Signature {
        Signature::symmetric(&vals.iter().map(|s| parse_value(s).unwrap()).collect::<Vec<_>>()).unwrap()
    }

    fn eq(n: usize) -> Signature {
        let mut vals = vec!["0"; n + 1];
        vals[0] = "1";
        vals[n] = "1";
        sym(&vals)
    }

    fn cycle(sigs: &[Signature]) -> SignatureGrid {
        let mut g = SignatureGrid::new();
        for (i, s) in sigs.iter().enumerate() {
            g.add_vertex(format!("v{i}"), s.clone());
        }
        let n = sigs.len();
        for i in 0..n {
            g.add_edge((i, 1), ((i + 1) % n, 0));
        }
        g
    }

    #[test]
    fn triple_parallel_equalities() {
        let mut g = SignatureGrid::new();
        let a = g.add_vertex("a", eq(3));
        let b = g.add_vertex("b", eq(3));
        for p in 0..3 {
            g.add_edge((a, p), (b, p));
        }
        assert_eq!(solve_affine_grid(&g).unwrap(), Cyc8::from_integer(2));
        assert_eq!(solve_product_grid(&g).unwrap(), Cyc8::from_integer(2));
    }

    #[test]
    fn self_loop_trace() {
        let mut g = SignatureGrid::new();
        let v = g.add_vertex("v", sym(&["1", "0", "-i"]));
        g.add_edge((v, 0), (v, 1));
        assert_eq!(solve_affine_grid(&g).unwrap(), parse_value("1 - i").unwrap());
        assert_eq!(solve_product_grid(&g).unwrap(), parse_value("1 - i").unwrap());
    }

    #[test]
    fn product_cycles() {
        assert_eq!(solve_product_grid(&cycle(&vec![eq(2); 4])).unwrap(), Cyc8::from_integer(2));
        let neq = sym(&["0", "1", "0"]);
        assert_eq!(solve_product_grid(&cycle(&vec![neq; 3])).unwrap(), Cyc8::zero());
    }

    #[test]
    fn auto_dispatch() {
        let (v, m) = solve_auto(&cycle(&vec![eq(2); 3])).unwrap();
        assert_eq!((v, m), (Cyc8::from_integer(2), Method::Product));
        let g = cycle(&[sym(&["1", "a", "-i"]), sym(&["1", "0", "1"])]);
        let (v, m) = solve_auto(&g).unwrap();
        assert_eq!(m, Method::AffineAlpha);
        assert_eq!(v, holant_brute(&g).unwrap());
    }

    #[test]
    fn local_affine_on_equalities() {
        let mut g = SignatureGrid::new();
        let a = g.add_vertex("a", eq(4));
        let b = g.add_vertex("b", eq(2));
        let c = g.add_vertex("c", eq(2));
        g.add_edge((a, 0), (b, 0)).add_edge((b, 1), (a, 1)).add_edge((a, 2), (c, 0)).add_edge((c, 1), (a, 3));
        assert_eq!(solve_local_affine_grid(&g).unwrap(), holant_brute(&g).unwrap());
    }

    #[test]
    fn local_affine_with_ones_edges() {
        // Δ1 forces σ* = 1 on its edges
        let mut g = SignatureGrid::new();
        let a = g.add_vertex("a", eq(4));
        let d1 = g.add_vertex("d1", sym(&["0", "1"]));
        let d2 = g.add_vertex("d2", sym(&["0", "1"]));
        g.add_edge((a, 0), (d1, 0)).add_edge((a, 1), (a, 2)).add_edge((a, 3), (d2, 0));
        assert_eq!(solve_local_affine_grid(&g).unwrap(), Cyc8::one());
        assert_eq!(holant_brute(&g).unwrap(), Cyc8::one());
    }
}
