//! Small exact linear algebra: fraction-free determinants and adjugates
//! over polynomial entries, and Gaussian elimination over the rationals.
//!
//! Everything here targets the tiny, dense matrices this crate manipulates
//! (5x5 eigenmatrices, a 12x8 linear system), so clarity beats asymptotics.

use num_traits::Zero;

use crate::exact::poly::{rat, MultiPoly, Rational};

/// Fraction-free (Bareiss) determinant of a square matrix with polynomial
/// entries. Every division performed is exact, so the result is again a
/// polynomial with no rational-function detour.
pub fn poly_det(mat: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = mat.len();
    assert!(mat.iter().all(|row| row.len() == n), "determinant of non-square matrix");
    if n == 0 {
        return MultiPoly::int(1);
    }
    let mut m: Vec<Vec<MultiPoly>> = mat.to_vec();
    let mut prev = MultiPoly::int(1);
    let mut sign = 1i64;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
        }
        for row in m.iter_mut().take(n).skip(k + 1) {
            row[k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -&det
    } else {
        det
    }
}

/// Adjugate (transposed cofactor matrix): `A * adj(A) = det(A) * I`.
pub fn poly_adjugate(mat: &[Vec<MultiPoly>]) -> Vec<Vec<MultiPoly>> {
    let n = mat.len();
    assert!(mat.iter().all(|row| row.len() == n), "adjugate of non-square matrix");
    let mut adj = vec![vec![MultiPoly::zero(); n]; n];
    for (i, adj_row) in adj.iter_mut().enumerate() {
        for (j, slot) in adj_row.iter_mut().enumerate() {
            // adj[i][j] = (-1)^{i+j} * det(minor with row j, column i removed)
            let minor: Vec<Vec<MultiPoly>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| mat[r][c].clone())
                        .collect()
                })
                .collect();
            let d = poly_det(&minor);
            *slot = if (i + j) % 2 == 0 { d } else { -&d };
        }
    }
    adj
}

/// Matrix product for polynomial matrices.
pub fn poly_matmul(a: &[Vec<MultiPoly>], b: &[Vec<MultiPoly>]) -> Vec<Vec<MultiPoly>> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    assert!(a.iter().all(|row| row.len() == k), "inner dimension mismatch");
    let mut out = vec![vec![MultiPoly::zero(); m]; n];
    for (i, out_row) in out.iter_mut().enumerate() {
        for (j, slot) in out_row.iter_mut().enumerate() {
            let mut acc = MultiPoly::zero();
            for (l, b_row) in b.iter().enumerate() {
                acc = &acc + &(&a[i][l] * &b_row[j]);
            }
            *slot = acc;
        }
    }
    out
}

/// Dense rational matrix with exact Gaussian elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    rows: Vec<Vec<Rational>>,
    cols: usize,
}

impl RatMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        RatMatrix { rows, cols }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= m.len() {
                break;
            }
            let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = rat(1) / m[row][col].clone();
            for v in m[row].iter_mut() {
                *v *= &inv;
            }
            for r in 0..m.len() {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..self.cols {
                        let v = &m[row][c] * &f;
                        m[r][c] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (RatMatrix { rows: m, cols: self.cols }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![rat(0); self.cols];
            v[f] = rat(1);
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r.rows[prow][f].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b` with all free variables set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.nrows(), "right-hand side length mismatch");
        let mut aug = self.rows.clone();
        for (row, rhs) in aug.iter_mut().zip(b) {
            row.push(rhs.clone());
        }
        let augmented = RatMatrix::new(aug);
        let (r, pivots) = augmented.rref();
        // Inconsistent iff a pivot lands in the appended column.
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![rat(0); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r.rows[prow][self.cols].clone();
        }
        Some(x)
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        self.rows
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::ratio;
    use proptest::prelude::*;

    fn c(n: i64) -> MultiPoly {
        MultiPoly::int(n)
    }

    #[test]
    fn constant_determinant() {
        let m = vec![vec![c(1), c(2)], vec![c(3), c(4)]];
        assert_eq!(poly_det(&m), c(-2));
    }

    #[test]
    fn symbolic_vandermonde_determinant() {
        let q = MultiPoly::var("q");
        let r = MultiPoly::var("r");
        let m = vec![vec![c(1), q.clone()], vec![c(1), r.clone()]];
        assert_eq!(poly_det(&m), &r - &q);
    }

    #[test]
    fn zero_pivot_forces_row_swap() {
        let m = vec![
            vec![c(0), c(1), c(2)],
            vec![c(1), c(0), c(3)],
            vec![c(4), c(5), c(6)],
        ];
        // det = 0*(0*6-3*5) - 1*(6-12) + 2*(5-0) = 6 + 10 = 16
        assert_eq!(poly_det(&m), c(16));
    }

    #[test]
    fn singular_symbolic_matrix() {
        let q = MultiPoly::var("q");
        let m = vec![
            vec![q.clone(), q.clone()],
            vec![q.clone(), q.clone()],
        ];
        assert!(poly_det(&m).is_zero());
    }

    #[test]
    fn adjugate_identity_symbolic() {
        let q = MultiPoly::var("q");
        let r = MultiPoly::var("r");
        let m = vec![
            vec![c(1), q.clone(), c(2)],
            vec![c(0), r.clone(), q.clone()],
            vec![c(3), c(1), r.clone()],
        ];
        let det = poly_det(&m);
        let adj = poly_adjugate(&m);
        let prod = poly_matmul(&m, &adj);
        for (i, row) in prod.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(entry, &det);
                } else {
                    assert!(entry.is_zero(), "off-diagonal entry {i}{j} = {entry}");
                }
            }
        }
    }

    #[test]
    fn rank_and_nullspace_of_rank_deficient_matrix() {
        let a = RatMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(a.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = RatMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert!(a.solve(&[rat(3), rat(6)]).is_some());
        assert!(a.solve(&[rat(3), rat(7)]).is_none());
        let x = a.solve(&[rat(3), rat(6)]).unwrap();
        assert_eq!(a.apply(&x), vec![rat(3), rat(6)]);
    }

    #[test]
    fn solve_with_rational_entries() {
        let a = RatMatrix::new(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 4), ratio(-1, 5)],
        ]);
        let b = vec![rat(1), rat(2)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.apply(&x), b);
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        proptest::collection::vec(
            proptest::collection::vec((-9i64..10).prop_map(rat), n),
            n,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn adjugate_identity_random(m in arb_matrix(3)) {
            let pm: Vec<Vec<MultiPoly>> = m
                .iter()
                .map(|row| row.iter().map(|v| MultiPoly::constant(v.clone())).collect())
                .collect();
            let det = poly_det(&pm);
            let prod = poly_matmul(&pm, &poly_adjugate(&pm));
            for (i, row) in prod.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    if i == j {
                        prop_assert_eq!(entry, &det);
                    } else {
                        prop_assert!(entry.is_zero());
                    }
                }
            }
        }

        #[test]
        fn nullspace_vectors_annihilate(m in arb_matrix(4)) {
            let a = RatMatrix::new(m);
            let rank = a.rank();
            let ns = a.nullspace();
            prop_assert_eq!(rank + ns.len(), 4);
            for v in &ns {
                prop_assert!(a.apply(v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn determinant_matches_rational_elimination(m in arb_matrix(4)) {
            let pm: Vec<Vec<MultiPoly>> = m
                .iter()
                .map(|row| row.iter().map(|v| MultiPoly::constant(v.clone())).collect())
                .collect();
            let bareiss = poly_det(&pm).as_constant().unwrap();
            // cross-check against cofactor expansion of the rational matrix
            let gauss = rational_det(&m);
            prop_assert_eq!(bareiss, gauss);
        }
    }

    fn rational_det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = rat(0);
        for j in 0..n {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * rational_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
}
