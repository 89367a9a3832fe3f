//! Dense exact matrices with rank and right-kernel computation.

use crate::field::{FieldSpec, Scalar};

/// A dense matrix over an exact field. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
    field: FieldSpec,
}

impl<S: Scalar> ExactMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize, field: FieldSpec) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            entries.extend(row);
        }
        ExactMatrix { rows: nrows, cols, entries, field }
    }

    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> Self {
        ExactMatrix { rows, cols, entries: vec![S::zero(); rows * cols], field }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Self::zero(n, n, field);
        for i in 0..n {
            m.entries[i * n + i] = S::from_integer(1, &field);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, entries, field: self.field }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(S::zero(), |acc, j| {
                    acc + self.get(i, j).clone() * v[j].clone()
                })
            })
            .collect()
    }

    fn rref(&self) -> (Vec<Vec<S>>, Vec<usize>) {
        let mut rows: Vec<Vec<S>> = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let pivots = S::reduced_echelon(&mut rows);
        (rows, pivots)
    }

    /// Exact rank; 0 for empty or all-zero matrices.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, `cols - rank` vectors. Empty when the
    /// matrix has full column rank.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let (rref, pivots) = self.rref();
        let one = S::from_integer(1, &self.field);
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        let mut next_pivot = 0usize;
        for j in 0..self.cols {
            if next_pivot < pivots.len() && pivots[next_pivot] == j {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[j] = one.clone();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref[ri][j].clone();
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_traits::Zero;
    use num::BigRational;

    fn f7() -> FieldSpec {
        FieldSpec::prime(7).unwrap()
    }

    fn fp_matrix(rows: &[&[i64]], p: u64) -> ExactMatrix<Fp> {
        let field = FieldSpec::prime(p).unwrap();
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Fp::new(x, p)).collect())
                .collect(),
            cols,
            field,
        )
    }

    fn rat_matrix(rows: &[&[i64]]) -> ExactMatrix<BigRational> {
        let field = FieldSpec::Rational;
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| <BigRational as Scalar>::from_integer(x, &field))
                        .collect()
                })
                .collect(),
            cols,
            field,
        )
    }

    #[test]
    fn rank_empty_matrix_is_zero() {
        let m: ExactMatrix<Fp> = ExactMatrix::zero(0, 0, f7());
        assert_eq!(m.rank(), 0);
        let z: ExactMatrix<Fp> = ExactMatrix::zero(3, 4, f7());
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn rank_identity() {
        let m: ExactMatrix<Fp> = ExactMatrix::identity(3, f7());
        assert_eq!(m.rank(), 3);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_row() {
        let m = fp_matrix(&[&[0, 0]], 7);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rank_with_dependent_rows() {
        let m = fp_matrix(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]], 10007);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel_basis().len(), 1);
    }

    #[test]
    fn rational_rank_uses_bareiss_path() {
        let m = rat_matrix(&[&[2, 4, 6], &[3, 6, 9], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rational_kernel_exact_fractions() {
        // row [3, 1] has kernel spanned by (1, -3)
        let m = rat_matrix(&[&[3, 1]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(|x| x.is_zero()));
    }
}
