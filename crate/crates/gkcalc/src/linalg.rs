//! Dense exact linear algebra over Q(i, sqrt2, sqrt3).
//!
//! Fraction-free performance is irrelevant at the sizes involved (at most
//! 16 x 16), so this is plain Gaussian elimination with exact division.

use crate::scalar::FieldScalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<FieldScalar>>,
}

impl Matrix {
    pub fn new(data: Vec<Vec<FieldScalar>>) -> Matrix {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        for r in &data {
            assert_eq!(r.len(), cols, "ragged matrix");
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![vec![FieldScalar::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = FieldScalar::one();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldScalar {
        &self.data[i][j]
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i][j] = out.data[i][j].clone()
                        + self.data[i][k].clone() * o.data[k][j].clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldScalar]) -> Vec<FieldScalar> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(FieldScalar::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Row-reduce in place; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.data[r][col].is_zero()) else {
                continue;
            };
            self.data.swap(row, p);
            let inv = self.data[row][col].inv().expect("pivot is nonzero");
            for j in col..self.cols {
                self.data[row][j] = self.data[row][j].clone() * inv.clone();
            }
            for r in 0..self.rows {
                if r != row && !self.data[r][col].is_zero() {
                    let f = self.data[r][col].clone();
                    for j in col..self.cols {
                        self.data[r][j] =
                            self.data[r][j].clone() - f.clone() * self.data[row][j].clone();
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<FieldScalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![FieldScalar::zero(); self.cols];
            v[free] = FieldScalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.data[r][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of A x = b, or None if inconsistent.
    pub fn solve(&self, b: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.data[i][..self.cols].clone_from_slice(&self.data[i]);
            aug.data[i][self.cols] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![FieldScalar::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.data[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn det(&self) -> FieldScalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = FieldScalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return FieldScalar::zero();
            };
            if p != col {
                m.swap(col, p);
                det = -det;
            }
            det = det * m[col][col].clone();
            let inv = m[col][col].inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone() * inv.clone();
                for j in col..n {
                    m[r][j] = m[r][j].clone() - f.clone() * m[col][j].clone();
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.data[i][..n].clone_from_slice(&self.data[i]);
            aug.data[i][n + i] = FieldScalar::one();
        }
        let pivots = aug.rref();
        // singular iff some pivot escapes into the identity half
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            out.data[i].clone_from_slice(&aug.data[i][n..]);
        }
        Some(out)
    }

    /// Determinants of the k x k top-left blocks, k = 1..=n. All positive
    /// (exact sign test) iff the matrix, assumed real symmetric, is positive
    /// definite.
    pub fn leading_principal_minors(&self) -> Vec<FieldScalar> {
        assert_eq!(self.rows, self.cols);
        (1..=self.rows)
            .map(|k| {
                Matrix::new(
                    self.data[..k].iter().map(|r| r[..k].to_vec()).collect(),
                )
                .det()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldScalar as F;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Matrix {
        Matrix::new(vec![
            vec![F::from_int(a), F::from_int(b)],
            vec![F::from_int(c), F::from_int(d)],
        ])
    }

    #[test]
    fn inverse_and_det() {
        let m = m2(2, 1, 1, 1);
        assert_eq!(m.det(), F::from_int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(m2(1, 2, 2, 4).inverse().is_none());
    }

    #[test]
    fn kernel_and_solve() {
        let m = Matrix::new(vec![
            vec![F::one(), F::from_int(2), F::from_int(3)],
            vec![F::from_int(2), F::from_int(4), F::from_int(6)],
        ]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for c in m.mul_vec(v) {
                assert!(c.is_zero());
            }
        }
        let b = vec![F::from_int(6), F::from_int(12)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(m.solve(&[F::one(), F::one()]).is_none());
    }

    #[test]
    fn minors_detect_definiteness() {
        let pd = m2(2, 1, 1, 1);
        assert!(pd
            .leading_principal_minors()
            .iter()
            .all(|d| d.real_sign() == Some(1)));
        let not_pd = m2(1, 2, 2, 1);
        assert!(!not_pd
            .leading_principal_minors()
            .iter()
            .all(|d| d.real_sign() == Some(1)));
    }

    #[test]
    fn radical_entries_are_exact() {
        let m = Matrix::new(vec![
            vec![F::sqrt2(), F::one()],
            vec![F::one(), F::sqrt2()],
        ]);
        assert_eq!(m.det(), F::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }
}
