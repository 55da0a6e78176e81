use crate::bits::BitRow;

/// Linear equations over ℤ₂, rows bit-packed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GF2System {
    nvars: usize,
    rows: Vec<(BitRow, bool)>,
}

/// Solution set `x₀ + span(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Solution {
    pub particular: BitRow,
    pub null_basis: Vec<BitRow>,
    /// Pivot variable of each reduced row.
    pub pivots: Vec<usize>,
    /// Free variables, in the order of `null_basis`.
    pub free: Vec<usize>,
}

impl GF2System {
    pub fn new(nvars: usize) -> Self {
        GF2System { nvars, rows: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[(BitRow, bool)] {
        &self.rows
    }

    /// Adds `Σ_{v ∈ vars} x_v = rhs`; repeated variables cancel.
    pub fn add_equation(&mut self, vars: &[usize], rhs: bool) {
        let mut row = BitRow::zeros(self.nvars);
        for &v in vars {
            row.flip(v);
        }
        self.rows.push((row, rhs));
    }

    pub fn add_row(&mut self, row: BitRow, rhs: bool) {
        assert_eq!(row.len(), self.nvars);
        self.rows.push((row, rhs));
    }

    /// Whether `x` satisfies every equation.
    pub fn satisfied_by(&self, x: &BitRow) -> bool {
        self.rows.iter().all(|(r, d)| r.and_parity(x) == *d)
    }
}

/// Gauss–Jordan elimination; `None` when the system is inconsistent.
pub fn gf2_solve(sys: &GF2System) -> Option<GF2Solution> {
    let n = sys.nvars;
    let mut reduced: Vec<(BitRow, bool)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (row, rhs) in &sys.rows {
        let (mut row, mut rhs) = (row.clone(), *rhs);
        for ((prow, prhs), &p) in reduced.iter().zip(&pivots) {
            if row.get(p) {
                row.xor_with(prow);
                rhs ^= prhs;
            }
        }
        match row.first_one() {
            None if rhs => return None,
            None => {}
            Some(p) => {
                for (prow, prhs) in reduced.iter_mut() {
                    if prow.get(p) {
                        prow.xor_with(&row);
                        *prhs ^= rhs;
                    }
                }
                reduced.push((row, rhs));
                pivots.push(p);
            }
        }
    }
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !is_pivot[v]).collect();
    let mut particular = BitRow::zeros(n);
    for ((_, rhs), &p) in reduced.iter().zip(&pivots) {
        particular.set(p, *rhs);
    }
    let null_basis = free
        .iter()
        .map(|&f| {
            let mut v = BitRow::zeros(n);
            v.set(f, true);
            for ((row, _), &p) in reduced.iter().zip(&pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();
    Some(GF2Solution { particular, null_basis, pivots, free })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_solution() {
        let mut s = GF2System::new(2);
        s.add_equation(&[0, 1], false);
        s.add_equation(&[1], true);
        let sol = gf2_solve(&s).unwrap();
        assert!(sol.particular.get(0) && sol.particular.get(1));
        assert!(sol.null_basis.is_empty());
    }

    #[test]
    fn inconsistent() {
        let mut s = GF2System::new(2);
        s.add_equation(&[0, 1], true);
        s.add_equation(&[0, 1], false);
        assert!(gf2_solve(&s).is_none());
    }

    #[test]
    fn empty_system() {
        let sol = gf2_solve(&GF2System::new(3)).unwrap();
        assert!(sol.particular.is_zero());
        assert_eq!(sol.null_basis.len(), 3);
    }

    #[test]
    fn null_vectors_solve_homogeneous() {
        let mut s = GF2System::new(5);
        s.add_equation(&[0, 2, 3], true);
        s.add_equation(&[1, 2], false);
        s.add_equation(&[0, 1, 3], true);
        let sol = gf2_solve(&s).unwrap();
        assert!(s.satisfied_by(&sol.particular));
        for n in &sol.null_basis {
            let mut x = sol.particular.clone();
            x.xor_with(n);
            assert!(s.satisfied_by(&x));
        }
        assert_eq!(sol.null_basis.len(), 3);
    }
}
