//! Small dense linear algebra over any scalar backend: row reduction, rank,
//! solving and nullspaces. Pivots are chosen by magnitude, which is exact for
//! rationals and the usual partial pivoting for floats.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S: Scalar> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::ShapeMismatch(format!("column of length {} in {rows} rows", col.len())));
            }
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        Ok(m)
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    /// Entries with magnitude at most `tol` count as zero.
    pub fn row_reduce(&mut self, tol: f64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let best = (row..self.rows)
                .map(|r| (r, self.get(r, col).abs()))
                .max_by(|a, b| a.1.total_cmp(&b.1));
            let Some((pr, mag)) = best else { break };
            if mag <= tol || self.get(pr, col).is_zero() {
                continue;
            }
            for c in 0..self.cols {
                self.data.swap(pr * self.cols + c, row * self.cols + c);
            }
            let inv = self.get(row, col).inv().expect("non-zero pivot");
            for c in 0..self.cols {
                let v = self.get(row, c).clone() * inv.clone();
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for c in 0..self.cols {
                    let v = self.get(r, c).clone() - f.clone() * self.get(row, c).clone();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.clone().row_reduce(tol).len()
    }

    /// A basis of `{x : A x = 0}`.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.row_reduce(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![S::zero(); self.cols];
                x[f] = S::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -m.get(r, f).clone();
                }
                x
            })
            .collect()
    }

    /// The unique solution of `A x = b` for square invertible `A`.
    pub fn solve(&self, b: &[S], tol: f64) -> Result<Vec<S>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::ShapeMismatch("solve needs a square system".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n, b[r].clone());
        }
        let pivots = aug.row_reduce(tol);
        if pivots.len() < n || pivots.contains(&n) {
            return Err(Error::SingularParameter("singular linear system".into()));
        }
        Ok((0..n).map(|r| aug.get(r, n).clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn m(rows: &[&[i64]]) -> DenseMatrix<G> {
        let cols: Vec<Vec<G>> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| G::from_i64(r[c])).collect())
            .collect();
        DenseMatrix::from_columns(rows.len(), &cols).unwrap()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(0.0), 2);
        let ns = a.nullspace(0.0);
        assert_eq!(ns.len(), 1);
        for r in 0..3 {
            let s = (0..3).fold(G::zero(), |acc, c| acc + a.get(r, c).clone() * ns[0][c].clone());
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_square() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[G::from_i64(3), G::from_i64(5)], 0.0).unwrap();
        assert_eq!(x, vec![G::real(4, 5), G::real(7, 5)]);
        assert!(m(&[&[1, 2], &[2, 4]]).solve(&[G::one(), G::one()], 0.0).is_err());
    }
}
