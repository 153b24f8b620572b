use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of [`Matrix::solve`]: every solution is `particular + kernel * t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Matrix,
    pub kernel: Matrix,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from integer rows. All rows must have equal length.
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_row_major(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(s) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(s.field().to_string(), field.to_string()));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        assert!(columns.iter().all(|c| c.len() == rows), "column length");
        Matrix::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_columns(field, v.len(), &[v.to_vec()])
    }

    pub fn field(&self) -> Field {
        self.field
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
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = value;
    }

    /// Rows of canonical scalar strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|s| s.to_string()).collect()).collect()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation. `rows` is needed when the list is empty.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row count");
            out.set_block(0, offset, b);
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation. `cols` is needed when the list is empty.
    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column count");
            out.set_block(offset, 0, b);
            offset += b.rows;
        }
        out
    }

    pub fn block_diagonal(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &Matrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, row: usize, col: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(row + i, col + j).clone())
    }

    pub fn select_columns(&self, indices: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, indices.len(), |i, j| {
            self.get(i, indices[j]).clone()
        })
    }

    pub fn select_rows(&self, indices: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, indices.len(), self.cols, |i, j| {
            self.get(indices[i], j).clone()
        })
    }

    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(
            self.field,
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let a = self.get(i / other.rows, j / other.cols);
                if a.is_zero() {
                    return self.field.zero();
                }
                a * other.get(i % other.rows, j % other.cols)
            },
        )
    }

    /// Reduced row echelon form and the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let pivot_entry = self.get(r, j);
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&factor * pivot_entry);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            k.set(f, idx, self.field.one());
            for (row, &p) in pivots.iter().enumerate() {
                k.set(p, idx, -r.get(row, f));
            }
        }
        k
    }

    /// Solves `self * x = b`. `Ok(None)` when inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Solution>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: matrix has {} rows, right-hand side {}",
                self.rows, b.rows
            )));
        }
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(row, self.cols + j).clone());
            }
        }
        Ok(Some(Solution {
            particular: x,
            kernel: self.kernel_basis(),
        }))
    }

    /// A full-row-rank `q` with `q * self = 0` and `rows(q) = rows - rank`.
    pub fn cokernel_projection(&self) -> (Matrix, usize) {
        let q = self.transpose().kernel_basis().transpose();
        let dim = q.rows;
        (q, dim)
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn image_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        if (0..n).any(|i| pivots.get(i) != Some(&i)) {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&factor * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// `L` with `L * self = I`; requires full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let sol = self
            .transpose()
            .solve(&Matrix::identity(self.field, self.cols))
            .ok()??;
        Some(sol.particular.transpose())
    }

    /// `R` with `self * R = I`; requires full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        let sol = self.solve(&Matrix::identity(self.field, self.rows)).ok()??;
        Some(sol.particular)
    }

    /// Whether the column spaces of `self` and `other` coincide.
    pub fn same_column_space(&self, other: &Matrix) -> bool {
        let joint = Matrix::hstack(self.field, self.rows, &[self, other]).rank();
        joint == self.rank() && joint == other.rank()
    }

    /// Whether every column of `other` lies in the column space of `self`.
    pub fn column_space_contains(&self, other: &Matrix) -> bool {
        Matrix::hstack(self.field, self.rows, &[self, other]).rank() == self.rank()
    }

    /// Canonical basis of the column space: the transposed RREF of the row space.
    pub fn canonical_column_space(&self) -> Matrix {
        let (r, pivots) = self.transpose().rref();
        r.select_rows(&(0..pivots.len()).collect::<Vec<_>>()).transpose()
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Reduces `v` modulo the row space of an RREF matrix.
pub fn reduce_by_rref(rref: &Matrix, pivots: &[usize], v: &mut [Scalar]) {
    for (row, &p) in pivots.iter().enumerate() {
        if v[p].is_zero() {
            continue;
        }
        let factor = v[p].clone();
        for (j, entry) in rref.row(row).iter().enumerate() {
            if !entry.is_zero() {
                v[j] = &v[j] - &(&factor * entry);
            }
        }
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
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
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix sum shape");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix difference shape");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-self.field.one())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
