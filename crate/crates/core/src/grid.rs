//! Signature grids, the brute-force Holant oracle and gadget contraction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::signature::MAX_ARITY;
use crate::{Cyc8, Error, Result, Signature};

/// Default limit on internal edges for exhaustive evaluation.
pub const DEFAULT_BRUTE_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub vertex: usize,
    pub port: usize,
}

impl Port {
    pub fn new(vertex: usize, port: usize) -> Port {
        Port { vertex, port }
    }
}

impl From<(usize, usize)> for Port {
    fn from((vertex, port): (usize, usize)) -> Port {
        Port { vertex, port }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.vertex, self.port)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    pub sig: Arc<Signature>,
}

/// A graph whose vertices carry signatures. Edge variables are numbered in
/// insertion order, followed by the dangling ports in their listed order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignatureGrid {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Port, Port)>,
    pub dangling: Vec<Port>,
}

impl SignatureGrid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, sig: impl Into<Arc<Signature>>) -> usize {
        self.vertices.push(Vertex { label: label.into(), sig: sig.into() });
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, a: impl Into<Port>, b: impl Into<Port>) -> &mut Self {
        self.edges.push((a.into(), b.into()));
        self
    }

    pub fn dangle(&mut self, p: impl Into<Port>) -> &mut Self {
        self.dangling.push(p.into());
        self
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_closed(&self) -> bool {
        self.dangling.is_empty()
    }

    pub fn signature(&self, v: usize) -> &Signature {
        &self.vertices[v].sig
    }

    /// Checks that every port is covered exactly once by an edge endpoint or
    /// a dangling declaration.
    pub fn validate(&self) -> Result<()> {
        let mut seen: Vec<Vec<bool>> = self.vertices.iter().map(|v| vec![false; v.sig.arity()]).collect();
        let mut mark = |p: Port, what: &str| -> Result<()> {
            let slot = seen
                .get_mut(p.vertex)
                .ok_or_else(|| Error::MalformedGrid(format!("{what} {p}: no vertex {}", p.vertex)))?
                .get_mut(p.port)
                .ok_or_else(|| Error::MalformedGrid(format!("{what} {p}: port out of range")))?;
            if *slot {
                return Err(Error::MalformedGrid(format!("port {p} used more than once")));
            }
            *slot = true;
            Ok(())
        };
        for &(a, b) in &self.edges {
            if a == b {
                return Err(Error::MalformedGrid(format!("edge joins port {a} to itself")));
            }
            mark(a, "edge endpoint")?;
            mark(b, "edge endpoint")?;
        }
        for &p in &self.dangling {
            mark(p, "dangling port")?;
        }
        for (v, ports) in seen.iter().enumerate() {
            if let Some(p) = ports.iter().position(|s| !s) {
                return Err(Error::MalformedGrid(format!("port {} is not connected", Port::new(v, p))));
            }
        }
        Ok(())
    }

    /// For each vertex, the variable index of each port.
    pub fn port_variables(&self) -> Result<Vec<Vec<usize>>> {
        self.validate()?;
        let mut vars: Vec<Vec<usize>> = self.vertices.iter().map(|v| vec![0; v.sig.arity()]).collect();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            vars[a.vertex][a.port] = e;
            vars[b.vertex][b.port] = e;
        }
        for (d, &p) in self.dangling.iter().enumerate() {
            vars[p.vertex][p.port] = self.edges.len() + d;
        }
        Ok(vars)
    }
}

pub fn validate_grid(g: &SignatureGrid) -> Result<()> {
    g.validate()
}

/// Exact Holant value of a closed grid by exhaustive (sparse) enumeration.
pub fn holant_brute(g: &SignatureGrid) -> Result<Cyc8> {
    holant_brute_capped(g, DEFAULT_BRUTE_CAP)
}

pub fn holant_brute_capped(g: &SignatureGrid, cap: usize) -> Result<Cyc8> {
    if !g.is_closed() {
        return Err(Error::MalformedGrid(format!("{} dangling ports in a closed evaluation", g.dangling.len())));
    }
    Ok(contract(g, cap)?.remove(&0).unwrap_or_else(Cyc8::zero))
}

/// The signature realized by a gadget: its value at each assignment of the
/// dangling ports is the Holant of the grid with those ports pinned.
pub fn compose_gadget(g: &SignatureGrid) -> Result<Signature> {
    compose_gadget_capped(g, DEFAULT_BRUTE_CAP)
}

pub fn compose_gadget_capped(g: &SignatureGrid, cap: usize) -> Result<Signature> {
    if g.dangling.len() > MAX_ARITY {
        return Err(Error::ArityTooLarge(g.dangling.len()));
    }
    let table = contract(g, cap)?;
    Signature::from_entries(g.dangling.len(), table)
}

struct VertexPlan {
    /// Variables fixed before this vertex is visited, with the port reading each.
    known: Vec<(usize, usize)>,
    /// Support entries grouped by the bits on the known ports.
    by_key: HashMap<u64, Vec<(u64, Cyc8)>>,
    /// Variables first assigned here, with the port that sets each.
    fresh: Vec<(usize, usize)>,
}

/// Visit order: sparsest support first, then whichever vertex shares the most
/// already-assigned variables (ties to the smaller support).
fn visit_order(g: &SignatureGrid, vars: &[Vec<usize>], nvars: usize) -> Vec<usize> {
    let n = g.vertices.len();
    let mut assigned = vec![false; nvars];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| !done[v])
            .min_by_key(|&v| {
                let shared = vars[v].iter().filter(|&&x| assigned[x]).count();
                (std::cmp::Reverse(shared), g.vertices[v].sig.support_size(), v)
            })
            .expect("vertex remains");
        done[best] = true;
        for &x in &vars[best] {
            assigned[x] = true;
        }
        order.push(best);
    }
    order
}

fn contract(g: &SignatureGrid, cap: usize) -> Result<BTreeMap<u64, Cyc8>> {
    let vars = g.port_variables()?;
    if g.edges.len() > cap {
        return Err(Error::TooLarge { edges: g.edges.len(), cap });
    }
    let nvars = g.edges.len() + g.dangling.len();
    let order = visit_order(g, &vars, nvars);
    let mut assigned = vec![false; nvars];
    let mut plans = Vec::with_capacity(order.len());
    for &v in &order {
        let ports = &vars[v];
        let mut known = Vec::new();
        let mut fresh = Vec::new();
        // Self-loops: the second port of a shared variable must agree with the first.
        let mut first_port: HashMap<usize, usize> = HashMap::new();
        let mut loops: Vec<(usize, usize)> = Vec::new();
        for (p, &x) in ports.iter().enumerate() {
            if assigned[x] {
                known.push((x, p));
            } else if let Some(&q) = first_port.get(&x) {
                loops.push((q, p));
            } else {
                first_port.insert(x, p);
                fresh.push((x, p));
            }
        }
        for &(x, _) in &fresh {
            assigned[x] = true;
        }
        let mut by_key: HashMap<u64, Vec<(u64, Cyc8)>> = HashMap::new();
        for (a, val) in g.vertices[v].sig.entries() {
            if loops.iter().any(|&(q, p)| (a >> q & 1) != (a >> p & 1)) {
                continue;
            }
            let key = known.iter().enumerate().fold(0u64, |k, (j, &(_, p))| k | ((a >> p & 1) << j));
            by_key.entry(key).or_default().push((a, val.clone()));
        }
        plans.push(VertexPlan { known, by_key, fresh });
    }
    let mut out: BTreeMap<u64, Cyc8> = BTreeMap::new();
    let mut values = vec![0u8; nvars];
    let edges = g.edges.len();
    dfs(&plans, 0, &mut values, Cyc8::one(), edges, &mut out);
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn dfs(
    plans: &[VertexPlan],
    depth: usize,
    values: &mut [u8],
    acc: Cyc8,
    edges: usize,
    out: &mut BTreeMap<u64, Cyc8>,
) {
    let Some(plan) = plans.get(depth) else {
        let key = values[edges..].iter().enumerate().fold(0u64, |k, (d, &b)| k | (b as u64) << d);
        *out.entry(key).or_insert_with(Cyc8::zero) += acc;
        return;
    };
    let key = plan.known.iter().enumerate().fold(0u64, |k, (j, &(x, _))| k | (values[x] as u64) << j);
    let Some(candidates) = plan.by_key.get(&key) else {
        return;
    };
    for (a, val) in candidates {
        for &(x, p) in &plan.fresh {
            values[x] = (a >> p & 1) as u8;
        }
        dfs(plans, depth + 1, values, &acc * val, edges, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_value;

    fn sym(vals: &[&str]) -> Signature {
        Signature::symmetric(&vals.iter().map(|s| parse_value(s).unwrap()).collect::<Vec<_>>()).unwrap()
    }

    fn eq(n: usize) -> Signature {
        let mut vals = vec!["0"; n + 1];
        vals[0] = "1";
        vals[n] = "1";
        sym(&vals)
    }

    #[test]
    fn validation() {
        let mut g = SignatureGrid::new();
        let a = g.add_vertex("a", eq(2));
        let b = g.add_vertex("b", eq(2));
        g.add_edge((a, 0), (b, 0)).add_edge((a, 1), (b, 1));
        assert!(g.validate().is_ok());
        let mut bad = g.clone();
        bad.edges[1] = ((a, 0).into(), (b, 1).into());
        assert!(matches!(bad.validate(), Err(Error::MalformedGrid(_))));
        let mut bad = g.clone();
        bad.dangle((a, 5));
        assert!(matches!(bad.validate(), Err(Error::MalformedGrid(_))));
    }

    #[test]
    fn parallel_equalities() {
        let mut g = SignatureGrid::new();
        let a = g.add_vertex("a", eq(4));
        let b = g.add_vertex("b", eq(4));
        for p in 0..4 {
            g.add_edge((a, p), (b, p));
        }
        assert_eq!(holant_brute(&g).unwrap(), Cyc8::from_integer(2));
    }

    #[test]
    fn pinned_path() {
        let mut g = SignatureGrid::new();
        let d1 = g.add_vertex("d1", sym(&["0", "1"]));
        let e = g.add_vertex("e", eq(2));
        let d2 = g.add_vertex("d2", sym(&["0", "1"]));
        g.add_edge((d1, 0), (e, 0)).add_edge((e, 1), (d2, 0));
        assert_eq!(holant_brute(&g).unwrap(), Cyc8::one());
    }

    #[test]
    fn self_loop_contraction() {
        let mut g = SignatureGrid::new();
        let v = g.add_vertex("v", eq(4));
        g.add_edge((v, 1), (v, 2)).dangle((v, 0)).dangle((v, 3));
        assert_eq!(compose_gadget(&g).unwrap(), eq(2));
        let mut g = SignatureGrid::new();
        let v = g.add_vertex("v", sym(&["1", "0", "-i"]));
        g.add_edge((v, 0), (v, 1));
        assert_eq!(holant_brute(&g).unwrap(), parse_value("1 - i").unwrap());
    }

    #[test]
    fn pinned_equality_gadget() {
        let mut g = SignatureGrid::new();
        let v = g.add_vertex("v", eq(4));
        let d = g.add_vertex("d", sym(&["0", "1"]));
        g.add_edge((v, 3), (d, 0));
        for p in 0..3 {
            g.dangle((v, p));
        }
        let f = compose_gadget(&g).unwrap();
        assert_eq!(f.support(), vec![0b111]);
        assert_eq!(f.get(0b111), Cyc8::one());
    }

    #[test]
    fn cap_is_enforced() {
        let mut g = SignatureGrid::new();
        let a = g.add_vertex("a", eq(4));
        let b = g.add_vertex("b", eq(4));
        for p in 0..4 {
            g.add_edge((a, p), (b, p));
        }
        assert!(matches!(holant_brute_capped(&g, 3), Err(Error::TooLarge { edges: 4, cap: 3 })));
    }
}
