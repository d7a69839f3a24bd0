//! Dense exact matrices and rational Gaussian elimination.
//!
//! Row reduction uses exact rational pivoting (first nonzero entry); there
//! are no tolerance parameters anywhere. Vectors are column vectors stored
//! as `Vec<Scalar>`.

use crate::error::{CoreError, Result};
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Row-major dense matrix over an exact ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_assign_at(&mut self, r: usize, c: usize, v: &R) {
        let cur = self.get(r, c).add(v);
        self.set(r, c, cur);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn column(&self, c: usize) -> Vec<R> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(R::neg).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// `self * rhs` (composition order: `self` applied after `rhs`).
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_assign_at(i, j, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = acc.add(&self.get(i, j).mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Result of Gauss-Jordan elimination.
pub struct Rref {
    pub matrix: Matrix<Scalar>,
    pub pivots: Vec<usize>,
}

impl Matrix<Scalar> {
    /// Reduced row echelon form with the list of pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let a = m.get(row, c).clone();
                    let b = m.get(p, c).clone();
                    m.set(row, c, b);
                    m.set(p, c, a);
                }
            }
            let inv = m.get(row, col).inv();
            for c in 0..m.cols {
                let v = m.get(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in 0..m.cols {
                    let v = m.get(r, c).sub(&factor.mul(m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one vector per free column, with the free
    /// coordinate set to 1. Columns are scanned in ascending order, so the
    /// basis is deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = matrix.get(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space: the original columns at pivot positions.
    pub fn image_basis(&self) -> Vec<Vec<Scalar>> {
        self.rref().pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// One exact solution of `self * x = b`, free coordinates set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len(), "rhs length mismatch");
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }
}

fn columns_matrix(vectors: &[Vec<Scalar>], dim: usize) -> Matrix<Scalar> {
    let mut m = Matrix::zero(dim, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        assert_eq!(v.len(), dim, "vector length mismatch");
        for (i, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

/// Dimension of the span of the given vectors in ℚ^dim.
pub fn span_rank(vectors: &[Vec<Scalar>], dim: usize) -> usize {
    columns_matrix(vectors, dim).rank()
}

/// Exact membership of `v` in the span of `vectors`.
pub fn span_contains(vectors: &[Vec<Scalar>], v: &[Scalar], dim: usize) -> bool {
    if v.iter().all(Scalar::is_zero) {
        return true;
    }
    let mut all: Vec<Vec<Scalar>> = vectors.to_vec();
    all.push(v.to_vec());
    span_rank(vectors, dim) == span_rank(&all, dim)
}

/// dim(span(amb) / span(sub)), verifying `span(sub) ⊆ span(amb)` first.
pub fn quotient_dimension(
    sub: &[Vec<Scalar>],
    amb: &[Vec<Scalar>],
    dim: usize,
) -> Result<usize> {
    for v in sub {
        if !span_contains(amb, v, dim) {
            return Err(CoreError::Containment);
        }
    }
    Ok(span_rank(amb, dim) - span_rank(sub, dim))
}

/// Vectors of `amb` whose classes form a basis of span(amb)/span(sub):
/// scan `amb` left to right, keeping vectors independent from `sub` plus
/// the vectors already kept.
pub fn quotient_representatives(
    sub: &[Vec<Scalar>],
    amb: &[Vec<Scalar>],
    dim: usize,
) -> Vec<Vec<Scalar>> {
    let mut picked: Vec<Vec<Scalar>> = sub.to_vec();
    let mut reps = Vec::new();
    let mut rank = span_rank(&picked, dim);
    for v in amb {
        picked.push(v.clone());
        let r = span_rank(&picked, dim);
        if r > rank {
            rank = r;
            reps.push(v.clone());
        } else {
            picked.pop();
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// Determinant by cofactor expansion, as an elimination-free oracle.
    fn det_cofactor(m: &Matrix<Scalar>) -> Scalar {
        let n = m.rows();
        assert_eq!(n, m.cols());
        if n == 0 {
            return Scalar::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Scalar::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let mut minor = Matrix::zero(n - 1, n - 1);
            for r in 1..n {
                let mut cc = 0;
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    minor.set(r - 1, cc, m.get(r, c).clone());
                    cc += 1;
                }
            }
            let term = m.get(0, j).mul(&det_cofactor(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn rank_of_random_invertible_matrices() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut seen_invertible = 0;
        while seen_invertible < 10 {
            let mut m = Matrix::zero(4, 4);
            for r in 0..4 {
                for c in 0..4 {
                    m.set(r, c, Scalar::frac(rng.gen_range(-9..=9), rng.gen_range(1..=9)));
                }
            }
            if !det_cofactor(&m).is_zero() {
                assert_eq!(m.rank(), 4);
                seen_invertible += 1;
            }
        }
    }

    #[test]
    fn rank_respects_dependent_columns() {
        // Third column is the sum of the first two.
        let m = Matrix::from_rows(vec![
            vec![s(1), s(0), s(1)],
            vec![s(2), s(1), s(3)],
            vec![s(0), s(4), s(4)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel_basis().len(), 1);
        let k = &m.kernel_basis()[0];
        assert!(m.apply(k).iter().all(Scalar::is_zero));
    }

    #[test]
    fn kernel_image_dimension_theorem() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..25 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let mut m = Matrix::zero(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m.set(r, c, s(rng.gen_range(-3..=3)));
                }
            }
            assert_eq!(m.kernel_basis().len() + m.rank(), cols);
            assert_eq!(m.image_basis().len(), m.rank());
            for v in m.kernel_basis() {
                assert!(m.apply(&v).iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn solve_finds_exact_solutions() {
        let m = Matrix::from_rows(vec![vec![s(2), s(1)], vec![s(0), s(3)]]);
        let x = m.solve(&[s(5), s(6)]).unwrap();
        assert_eq!(x, vec![Scalar::frac(3, 2), s(2)]);
        let singular = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(1), s(1)]]);
        assert!(singular.solve(&[s(0), s(1)]).is_none());
    }

    #[test]
    fn quotient_dimension_checks_containment() {
        let amb = vec![vec![s(1), s(0)], vec![s(0), s(1)]];
        let sub = vec![vec![s(1), s(1)]];
        assert_eq!(quotient_dimension(&sub, &amb, 2).unwrap(), 1);
        let outside = vec![vec![s(1), s(0), s(0)]];
        let small = vec![vec![s(0), s(1), s(0)]];
        assert!(matches!(
            quotient_dimension(&outside, &small, 3),
            Err(CoreError::Containment)
        ));
    }
}
