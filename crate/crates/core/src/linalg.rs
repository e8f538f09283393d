//! Dense exact linear algebra over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::rational::{self, q, Q};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Q>>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![vec![Q::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Q::one();
        }
        m
    }

    pub fn diagonal(entries: &[Q]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.data[i][i] = e.clone();
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(data: Vec<Vec<Q>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        QMatrix { rows, cols, data }
    }

    pub fn from_i64(data: &[&[i64]]) -> Self {
        Self::from_rows(
            data.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        self.data.clone()
    }

    /// Entries rendered as `p/q` strings, row by row.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.data
            .iter()
            .map(|r| r.iter().map(rational::to_string).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Q) -> Self {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|x| x * s).collect())
            .collect();
        QMatrix { data, ..*self }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &QMatrix) -> QMatrix {
        &(self * other) - &(other * self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && *self == -&self.transpose()
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<Q> {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i][i].clone())
            .collect()
    }

    pub fn trace(&self) -> Q {
        self.diagonal_entries()
            .into_iter()
            .fold(Q::zero(), |a, b| a + b)
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diag(a: &QMatrix, b: &QMatrix) -> QMatrix {
        let mut m = QMatrix::zeros(a.rows + b.rows, a.cols + b.cols);
        m.paste(0, 0, a);
        m.paste(a.rows, a.cols, b);
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &QMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[r + i][c + j] = block.data[i][j].clone();
            }
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, exec: Exec) -> (QMatrix, Vec<usize>) {
        let mut rows = self.data.clone();
        let pivots = rref_in_place(&mut rows, self.cols, exec);
        (
            QMatrix {
                rows: self.rows,
                cols: self.cols,
                data: rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref(Exec::Sequential).1.len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`, one vector per free
    /// column of the echelon form.
    pub fn nullspace(&self, exec: Exec) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref(exec);
        nullspace_from_rref(&r.data, &pivots, self.cols)
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::domain("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Q>> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut aug, 2 * n, Exec::Sequential);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(QMatrix::from_rows(
            aug.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }

    /// Determinant by fraction-carrying Gaussian elimination.
    pub fn det(&self) -> Result<Q> {
        if !self.is_square() {
            return Err(Error::domain("determinant of a non-square matrix"));
        }
        let mut a = self.data.clone();
        let n = self.rows;
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(Q::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] / &piv;
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
        Ok(det)
    }
}

/// In-place RREF over `ncols` leading columns; returns pivot columns.
///
/// Elimination of the non-pivot rows for each pivot runs under `exec`.
pub(crate) fn rref_in_place(rows: &mut [Vec<Q>], ncols: usize, exec: Exec) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut().filter(|x| !x.is_zero()) {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        let support: Vec<usize> = (0..pivot_row.len())
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        let pr = r;
        par::for_each_mut_indexed(exec, rows, |i, row| {
            if i == pr || row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for &j in &support {
                let t = &f * &pivot_row[j];
                row[j] -= t;
            }
        });
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn nullspace_from_rref(rref: &[Vec<Q>], pivots: &[usize], ncols: usize) -> Vec<Vec<Q>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                if !rref[row][f].is_zero() {
                    v[p] = -rref[row][f].clone();
                }
            }
            v
        })
        .collect()
}

/// Rank of a list of vectors (treated as matrix rows).
pub fn rank_of(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMatrix::from_rows(vectors.to_vec()).rank()
}

impl<'a> Mul<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;

    fn mul(self, rhs: &'a QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;

    fn add(self, rhs: &'a QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        QMatrix { data, ..*self }
    }
}

impl<'a> Sub<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;

    fn sub(self, rhs: &'a QMatrix) -> QMatrix {
        self + &(-rhs)
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;

    fn neg(self) -> QMatrix {
        self.scale(&q(-1))
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(rational::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn rank_and_nullspace() {
        let m = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace(Exec::Sequential);
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_and_det() {
        let m = QMatrix::from_i64(&[&[2, 1], &[5, 3]]);
        assert_eq!(m.det().unwrap(), q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        let s = QMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert_eq!(s.det().unwrap(), q(0));
        let h = QMatrix::from_rows(vec![vec![qr(1, 2), q(1)], vec![q(0), q(3)]]);
        assert_eq!(h.det().unwrap(), qr(3, 2));
    }

    #[test]
    fn parallel_rref_matches() {
        let m = QMatrix::from_i64(&[
            &[0, 1, 2, 3],
            &[1, 1, 0, -1],
            &[2, 3, 2, 1],
            &[5, 0, 1, 1],
        ]);
        assert_eq!(m.rref(Exec::Sequential), m.rref(Exec::Parallel));
    }
}
