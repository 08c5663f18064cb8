use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::LinalgError;

pub type Vector = Vec<GaussianRational>;

/// Dense row-major matrix over ℚ(i). Zero-row and zero-column shapes are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. `cols` is needed to give an empty row
    /// list a definite shape.
    pub fn from_rows(rows: &[Vector], cols: usize) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Ragged { row: i, expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(ExactMatrix { rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self, LinalgError> {
        Ok(ExactMatrix::from_rows(columns, rows)?.transpose())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&v| GaussianRational::from(v)).collect()).collect();
        ExactMatrix::from_rows(&vecs, cols).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(GaussianRational::is_real)
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn map(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn checked_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch { left: self.shape(), right: rhs.shape() });
        }
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Result<Vector, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::ShapeMismatch { left: self.shape(), right: (v.len(), 1) });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn checked_add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.shape() != rhs.shape() {
            return Err(LinalgError::ShapeMismatch { left: self.shape(), right: rhs.shape() });
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::ShapeMismatch { left: self.shape(), right: rhs.shape() });
        }
        Ok(ExactMatrix::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                rhs[(r, c - self.cols)].clone()
            }
        }))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..a.cols {
            if pivot_row == a.rows {
                break;
            }
            let Some(found) = (pivot_row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(found, pivot_row);
            let inv = a[(pivot_row, col)].inv().expect("nonzero pivot");
            for c in col..a.cols {
                let v = &a[(pivot_row, c)] * &inv;
                a[(pivot_row, c)] = v;
            }
            for r in 0..a.rows {
                if r == pivot_row || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in col..a.cols {
                    let sub = &factor * &a[(pivot_row, c)];
                    a[(r, c)] -= &sub;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[free] = GaussianRational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, free)];
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<GaussianRational, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.shape()));
        }
        let mut a = self.clone();
        let n = a.rows;
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(found) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(GaussianRational::zero());
            };
            if found != col {
                a.swap_rows(found, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] * &inv;
                for c in col..n {
                    let sub = &factor * &a[(col, c)];
                    a[(r, c)] -= &sub;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<ExactMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.shape()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(ExactMatrix::zeros(0, 0));
        }
        let (r, pivots) = self.hstack(&ExactMatrix::identity(n))?.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        Ok(ExactMatrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (r, c): (usize, usize)) -> &GaussianRational {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds for {}x{}", self.rows, self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussianRational {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds for {}x{}", self.rows, self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_add(rhs).expect("matrix shape mismatch")
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_add(&-rhs).expect("matrix shape mismatch")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.map(|z| -z)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[] ({}x{})", self.rows, self.cols);
        }
        let cells: Vec<Vec<String>> = self.to_rows().iter().map(|r| r.iter().map(|z| z.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            write!(f, "[{}]", line.join("  "))?;
            if i + 1 < cells.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Serialized as a grid of Gaussian-rational strings.
impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vector> = Vec::deserialize(deserializer)?;
        let cols = rows.first().map_or(0, Vec::len);
        ExactMatrix::from_rows(&rows, cols).map_err(serde::de::Error::custom)
    }
}

/// Right null space of `m`.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vector> {
    m.kernel_basis()
}

/// Rank of the matrix whose rows are `vectors`.
pub fn rank_of(vectors: &[Vector], dim: usize) -> Result<usize, LinalgError> {
    Ok(ExactMatrix::from_rows(vectors, dim)?.rank())
}

/// Whether two generating sets span the same ℚ(i)-subspace.
pub fn span_equal(a: &[Vector], b: &[Vector]) -> Result<bool, LinalgError> {
    let dim = match a.first().or(b.first()) {
        Some(v) => v.len(),
        None => return Ok(true),
    };
    for (i, v) in a.iter().chain(b).enumerate() {
        if v.len() != dim {
            return Err(LinalgError::DimensionMismatch { index: i, expected: dim, found: v.len() });
        }
    }
    let ra = rank_of(a, dim)?;
    let rb = rank_of(b, dim)?;
    if ra != rb {
        return Ok(false);
    }
    let both: Vec<Vector> = a.iter().chain(b).cloned().collect();
    Ok(rank_of(&both, dim)? == ra)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| GaussianRational::from(x)).collect()
    }

    #[test]
    fn kernel_of_scalar_matrices() {
        assert_eq!(ExactMatrix::from_i64_rows(&[&[0]]).kernel_basis(), vec![v(&[1])]);
        assert!(ExactMatrix::from_i64_rows(&[&[1]]).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_coordinate_projection() {
        let m = ExactMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(m.kernel_basis(), vec![v(&[0, 0, 1])]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        let m = ExactMatrix::from_rows(&[vec![one.clone(), i.clone()], vec![-&i, one.clone()]], 2).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn span_examples() {
        assert!(span_equal(&[v(&[1, 0])], &[v(&[2, 0])]).unwrap());
        assert!(!span_equal(&[v(&[1, 0])], &[v(&[0, 1])]).unwrap());
        assert!(span_equal(&[v(&[1, 1]), v(&[1, -1])], &[v(&[1, 0]), v(&[0, 1])]).unwrap());
        assert!(span_equal(&[], &[]).unwrap());
        assert!(span_equal(&[v(&[0, 0])], &[]).unwrap());
        assert!(span_equal(&[v(&[1, 0])], &[v(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn inverse_and_determinant() {
        let m = ExactMatrix::from_i64_rows(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant().unwrap(), GaussianRational::one());
        assert_eq!(&m * &m.inverse().unwrap(), ExactMatrix::identity(2));
        let s = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(LinalgError::Singular));
        assert!(s.determinant().unwrap().is_zero());
    }

    #[test]
    fn empty_shapes_behave() {
        let m = ExactMatrix::zeros(3, 0);
        assert_eq!(m.rank(), 0);
        assert!(m.kernel_basis().is_empty());
        let z = ExactMatrix::zeros(0, 2);
        assert_eq!(z.kernel_basis().len(), 2);
        assert!(m.is_zero());
    }
}
