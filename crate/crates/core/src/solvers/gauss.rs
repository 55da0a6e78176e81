use num_traits::{One, Zero};

use super::gf2::{gf2_solve, GF2System};
use crate::bits::BitRow;
use crate::Cyc8;

/// `prefactor · i^{constant + Σ ℓ_j x_j + Σ_{j<k} 2 q_{jk} x_j x_k}` over `k`
/// Boolean variables, with `ℓ_j ∈ ℤ₄` and `q_{jk} ∈ ℤ₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticExponent {
    nvars: usize,
    constant: u8,
    linear: Vec<u8>,
    /// Symmetric adjacency: `quad[j]` holds the `k` with `q_{jk} = 1`.
    quad: Vec<BitRow>,
    pub prefactor: Cyc8,
}

impl QuadraticExponent {
    pub fn new(nvars: usize) -> Self {
        QuadraticExponent {
            nvars,
            constant: 0,
            linear: vec![0; nvars],
            quad: vec![BitRow::zeros(nvars); nvars],
            prefactor: Cyc8::one(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn constant(&self) -> u8 {
        self.constant
    }

    pub fn linear(&self, j: usize) -> u8 {
        self.linear[j]
    }

    pub fn quad(&self, j: usize, k: usize) -> bool {
        self.quad[j].get(k)
    }

    pub fn add_constant(&mut self, c: u8) {
        self.constant = (self.constant + c) % 4;
    }

    pub fn add_linear(&mut self, j: usize, c: u8) {
        self.linear[j] = (self.linear[j] + c) % 4;
    }

    /// Adds `2 x_j x_k`; for `j = k` this is `2 x_j`.
    pub fn add_quad(&mut self, j: usize, k: usize) {
        if j == k {
            self.add_linear(j, 2);
        } else {
            self.quad[j].flip(k);
            self.quad[k].flip(j);
        }
    }

    /// Adds `coef · [c₀ + Σ_{v∈vars} x_v odd]`, keeping the exponent quadratic
    /// via `[m odd] ≡ m² = Σ y + 2 Σ_{pairs} y y' (mod 4)`.
    pub fn add_parity(&mut self, coef: u8, vars: &[usize], c0: bool) {
        let mut coef = coef % 4;
        if coef == 0 {
            return;
        }
        if c0 {
            // [1 + m odd] = 1 − [m odd]
            self.add_constant(coef);
            coef = (4 - coef) % 4;
        }
        let mut set = BitRow::zeros(self.nvars);
        for &v in vars {
            set.flip(v);
        }
        let ones: Vec<usize> = set.ones().collect();
        for &v in &ones {
            self.add_linear(v, coef);
        }
        if coef % 2 == 1 {
            for (a, &v) in ones.iter().enumerate() {
                for &w in &ones[a + 1..] {
                    self.add_quad(v, w);
                }
            }
        }
    }

    /// Exponent mod 4 at a point.
    pub fn exponent(&self, x: &BitRow) -> u8 {
        let mut e = self.constant as u32;
        for j in x.ones() {
            e += self.linear[j] as u32;
            let mut row = self.quad[j].clone();
            // count pairs once: only k > j
            for k in row.clone().ones().filter(|&k| k <= j) {
                row.set(k, false);
            }
            e += 2 * (row.and_parity(x) as u32);
        }
        (e % 4) as u8
    }

    pub fn eval(&self, x: &BitRow) -> Cyc8 {
        &self.prefactor * &Cyc8::alpha_pow(2 * self.exponent(x) as i64)
    }
}

/// `Σ_{x : Cx = d} prefactor · i^{exponent(x)}`, exactly.
///
/// The solution set is parametrized as `x₀ ⊕ N t`; parameters are then summed
/// out lowest index first. Summing `t` out of `c t + 2 t ℓ + R` leaves `2·[ℓ = 0]`,
/// `2·[ℓ = 1]`, `(1+i) i^{3ℓ}` or `(1−i) i^{ℓ}` for `c = 0, 2, 1, 3`; the
/// resulting linear constraints are substituted at once.
pub fn gauss_sum_eval(e: &QuadraticExponent, constraints: &GF2System) -> Cyc8 {
    assert_eq!(e.nvars, constraints.nvars());
    let Some(sol) = gf2_solve(constraints) else {
        return Cyc8::zero();
    };
    let d = sol.null_basis.len();
    // x_i = x0_i + Σ_{s : N_s[i]} t_s
    let forms: Vec<(bool, Vec<usize>)> = (0..e.nvars)
        .map(|i| {
            let ts = sol.null_basis.iter().enumerate().filter(|(_, n)| n.get(i)).map(|(s, _)| s).collect();
            (sol.particular.get(i), ts)
        })
        .collect();
    let mut q = QuadraticExponent::new(d);
    q.prefactor = e.prefactor.clone();
    q.add_constant(e.constant);
    for (i, (c0, ts)) in forms.iter().enumerate() {
        q.add_parity(e.linear[i], ts, *c0);
    }
    for j in 0..e.nvars {
        for k in e.quad[j].ones().filter(|&k| k > j) {
            add_product(&mut q, &forms[j], &forms[k]);
        }
    }
    eliminate(q)
}

/// Adds `2 · (a₀ + Σ_A t)(b₀ + Σ_B t)` (mod 4).
fn add_product(q: &mut QuadraticExponent, a: &(bool, Vec<usize>), b: &(bool, Vec<usize>)) {
    if a.0 && b.0 {
        q.add_constant(2);
    }
    if a.0 {
        for &u in &b.1 {
            q.add_linear(u, 2);
        }
    }
    if b.0 {
        for &s in &a.1 {
            q.add_linear(s, 2);
        }
    }
    for &s in &a.1 {
        for &u in &b.1 {
            q.add_quad(s, u);
        }
    }
}

fn eliminate(mut q: QuadraticExponent) -> Cyc8 {
    let n = q.nvars;
    let mut alive = vec![true; n];
    let mut scale = Cyc8::one();
    let two = Cyc8::from_integer(2);
    let one_plus_i = Cyc8::one() + Cyc8::i();
    let one_minus_i = Cyc8::one() - Cyc8::i();
    for t in 0..n {
        if !alive[t] {
            continue;
        }
        alive[t] = false;
        let c = q.linear[t];
        let ell: Vec<usize> = q.quad[t].ones().collect();
        for &u in &ell {
            q.quad[u].set(t, false);
        }
        q.quad[t] = BitRow::zeros(n);
        q.linear[t] = 0;
        match c {
            0 | 2 => {
                scale = scale * two.clone();
                if !substitute(&mut q, &mut alive, &ell, c == 2) {
                    return Cyc8::zero();
                }
            }
            1 => {
                scale = scale * one_plus_i.clone();
                q.add_parity(3, &ell, false);
            }
            _ => {
                scale = scale * one_minus_i.clone();
                q.add_parity(1, &ell, false);
            }
        }
    }
    &(q.prefactor * scale) * &Cyc8::alpha_pow(2 * q.constant as i64)
}

/// Imposes `Σ_{ℓ} t = rhs` by solving for its lowest variable and substituting.
/// Returns `false` for the contradiction `0 = 1`.
fn substitute(q: &mut QuadraticExponent, alive: &mut [bool], ell: &[usize], rhs: bool) -> bool {
    let Some(&s) = ell.iter().min() else {
        return !rhs;
    };
    let others: Vec<usize> = ell.iter().copied().filter(|&u| u != s).collect();
    alive[s] = false;
    let lin = q.linear[s];
    let nbrs: Vec<usize> = q.quad[s].ones().collect();
    let n = q.nvars;
    for &u in &nbrs {
        q.quad[u].set(s, false);
    }
    q.quad[s] = BitRow::zeros(n);
    q.linear[s] = 0;
    // t_s = rhs + Σ others
    q.add_parity(lin, &others, rhs);
    for &u in &nbrs {
        add_product(q, &(false, vec![u]), &(rhs, others.clone()));
    }
    true
}

/// Direct enumeration of the same sum, for small instances.
pub fn gauss_sum_brute(e: &QuadraticExponent, constraints: &GF2System) -> Cyc8 {
    let k = e.nvars;
    assert!(k <= 24, "enumeration limited to 24 variables");
    let mut total = Cyc8::zero();
    for bits in 0..1u64 << k {
        let mut x = BitRow::zeros(k);
        for j in 0..k {
            x.set(j, bits >> j & 1 == 1);
        }
        if constraints.satisfied_by(&x) {
            total += e.eval(&x);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_value;

    #[test]
    fn single_linear_term() {
        let mut e = QuadraticExponent::new(1);
        e.add_linear(0, 1);
        assert_eq!(gauss_sum_eval(&e, &GF2System::new(1)), parse_value("1 + i").unwrap());
    }

    #[test]
    fn pure_quadratic() {
        let mut e = QuadraticExponent::new(2);
        e.add_quad(0, 1);
        assert_eq!(gauss_sum_eval(&e, &GF2System::new(2)), Cyc8::from_integer(2));
    }

    #[test]
    fn mixed_terms() {
        let mut e = QuadraticExponent::new(2);
        e.add_linear(0, 1);
        e.add_linear(1, 1);
        e.add_quad(0, 1);
        assert_eq!(gauss_sum_eval(&e, &GF2System::new(2)), parse_value("2 + 2i").unwrap());
    }

    #[test]
    fn constrained_sums_match_enumeration() {
        let mut e = QuadraticExponent::new(4);
        e.add_linear(0, 3);
        e.add_linear(2, 1);
        e.add_quad(0, 3);
        e.add_quad(1, 2);
        e.add_constant(1);
        e.prefactor = parse_value("a").unwrap();
        let mut c = GF2System::new(4);
        c.add_equation(&[0, 1, 3], true);
        assert_eq!(gauss_sum_eval(&e, &c), gauss_sum_brute(&e, &c));
        c.add_equation(&[0, 1, 3], false);
        assert_eq!(gauss_sum_eval(&e, &c), Cyc8::zero());
    }

    #[test]
    fn parity_lift_matches_direct_parity() {
        for coef in 0..4u8 {
            for c0 in [false, true] {
                let mut e = QuadraticExponent::new(3);
                e.add_parity(coef, &[0, 1, 2], c0);
                for bits in 0..8u64 {
                    let mut x = BitRow::zeros(3);
                    for j in 0..3 {
                        x.set(j, bits >> j & 1 == 1);
                    }
                    let parity = (bits.count_ones() + c0 as u32) % 2;
                    assert_eq!(e.exponent(&x) as u32, coef as u32 * parity % 4);
                }
            }
        }
    }
}
