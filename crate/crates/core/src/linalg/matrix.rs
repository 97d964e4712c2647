use std::ops::{Add, Index, IndexMut, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::vector::{algebra_of, Vector};
use crate::error::{LabError, Result};
use crate::scalar::{Algebra, Quaternion, Scalar, ScalarRepr};

/// Dense matrix acting on column vectors from the left: `(A x)_r = Σ_c A_rc x_c`.
///
/// Because scalars multiply vectors on the right, every matrix is linear over
/// the whole algebra: `A (x q) = (A x) q`. Entries are stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MatrixRepr", try_from = "MatrixRepr")]
pub struct Matrix {
    algebra: Algebra,
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, algebra: Algebra) -> Self {
        Matrix {
            algebra,
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize, algebra: Algebra) -> Self {
        Matrix::scalar_diagonal(n, Quaternion::ONE).with_algebra(algebra)
    }

    /// `diag(q, ..., q)`, i.e. left multiplication by `q` in every coordinate.
    pub fn scalar_diagonal(n: usize, q: Quaternion) -> Self {
        let mut m = Matrix::zeros(n, n, algebra_of(q));
        for k in 0..n {
            m[(k, k)] = q;
        }
        m
    }

    pub fn diagonal(entries: &[Quaternion], algebra: Algebra) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, algebra, |r, c| {
            if r == c {
                entries[r]
            } else {
                Quaternion::ZERO
            }
        })
    }

    pub fn real_diagonal(entries: &[f64], algebra: Algebra) -> Self {
        let q: Vec<_> = entries.iter().map(|&x| Quaternion::real(x)).collect();
        Matrix::diagonal(&q, algebra)
    }

    /// Entries are projected onto `algebra`.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        algebra: Algebra,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(algebra.project(f(r, c)));
            }
        }
        Matrix {
            algebra,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows<S: Scalar>(rows: &[Vec<S>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(LabError::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        let data = rows.iter().flatten().map(|x| x.to_quaternion()).collect();
        Ok(Matrix {
            algebra: S::ALGEBRA,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Build a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector]) -> Result<Self> {
        let n = cols.first().map_or(0, Vector::len);
        if let Some(bad) = cols.iter().find(|v| v.len() != n) {
            return Err(LabError::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let algebra = cols.iter().fold(Algebra::Real, |a, v| a.join(v.algebra()));
        Ok(Matrix::from_fn(n, cols.len(), algebra, |r, c| cols[c][r]))
    }

    /// `u ⟨v|·⟩`, the rank-one map `x ↦ u ⟨v|x⟩`. Entries are `u_r conj(v_c)`.
    pub fn outer(u: &Vector, v: &Vector) -> Self {
        let algebra = u.algebra().join(v.algebra());
        Matrix::from_fn(u.len(), v.len(), algebra, |r, c| u[r] * v[c].conj())
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
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

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LabError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn ensure_algebra(&self, expected: Algebra) -> Result<()> {
        if self.algebra == expected {
            Ok(())
        } else {
            Err(LabError::WrongAlgebra {
                expected,
                found: self.algebra,
            })
        }
    }

    /// Retag the matrix; entries outside the new algebra are dropped.
    pub fn with_algebra(mut self, algebra: Algebra) -> Self {
        if algebra < self.algebra {
            for q in &mut self.data {
                *q = algebra.project(*q);
            }
        }
        self.algebra = algebra;
        self
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector::from_raw(self.algebra, (0..self.rows).map(|r| self[(r, c)]).collect())
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// `(A*)_rc = conj(A_cr)`, so that `⟨A* x|y⟩ = ⟨x|A y⟩`.
    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows, self.algebra);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(LabError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols, self.algebra.join(rhs.algebra));
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            for (k, &a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        if self.cols != x.len() {
            return Err(LabError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let data = (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter().zip(x.as_slice()).map(|(&a, &xc)| a * xc).sum()
            })
            .collect();
        Ok(Vector::from_raw(self.algebra.join(x.algebra()), data))
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            data: self.data.iter().map(|&q| q * s).collect(),
            ..self.clone()
        }
    }

    /// `Σ_k A_kk`, the trace in the standard basis.
    pub fn diagonal_sum(&self) -> Quaternion {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius distance, used for every "to tolerance" matrix comparison.
    pub fn distance(&self, other: &Matrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn approx_eq(&self, other: &Matrix, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.distance(other) <= tol
    }

    pub fn max_abs_entry_diff(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `|A - A*|_F`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.distance(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Matrix {
        (self + &self.adjoint()).scale(0.5)
    }

    /// `(A - A*) / 2`.
    pub fn anti_hermitian_part(&self) -> Matrix {
        (self - &self.adjoint()).scale(0.5)
    }

    /// `|U*U - I|_F`.
    pub fn unitary_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.adjoint() * self).distance(&Matrix::identity(self.rows, self.algebra))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_defect() <= tol
    }

    /// `max(|PP - P|_F, |P - P*|_F)`.
    pub fn projector_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (self * self).distance(self).max(self.hermitian_defect())
    }

    /// Entrywise complex conjugation (meaningful over C and R only).
    pub fn entrywise_conj(&self) -> Matrix {
        Matrix {
            data: self.data.iter().map(|q| q.conj()).collect(),
            ..self.clone()
        }
    }

    /// Block-diagonal sum of square matrices.
    pub fn block_diagonal(blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let algebra = blocks.iter().fold(Algebra::Real, |a, b| a.join(b.algebra));
        let mut out = Matrix::zeros(n, n, algebra);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(off + r, off + c)] = b[(r, c)];
                }
            }
            off += b.rows;
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs)
            .expect("matrix product shape mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            algebra: self.algebra.join(o.algebra),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            algebra: self.algebra.join(o.algebra),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

/// Wire format: `{ "algebra": "R"|"C"|"H", "rows": n, "cols": m, "data": [[scalar, ...], ...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixRepr {
    pub algebra: Algebra,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<ScalarRepr>>,
}

impl From<Matrix> for MatrixRepr {
    fn from(m: Matrix) -> Self {
        let data = (0..m.rows)
            .map(|r| {
                (0..m.cols)
                    .map(|c| ScalarRepr::encode(m[(r, c)], m.algebra))
                    .collect()
            })
            .collect();
        MatrixRepr {
            algebra: m.algebra,
            rows: m.rows,
            cols: m.cols,
            data,
        }
    }
}

impl TryFrom<MatrixRepr> for Matrix {
    type Error = LabError;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        if repr.data.len() != repr.rows {
            return Err(LabError::Encoding(format!(
                "declared {} rows, found {}",
                repr.rows,
                repr.data.len()
            )));
        }
        let mut data = Vec::with_capacity(repr.rows * repr.cols);
        for row in &repr.data {
            if row.len() != repr.cols {
                return Err(LabError::Encoding(format!(
                    "declared {} columns, found a row of {}",
                    repr.cols,
                    row.len()
                )));
            }
            for s in row {
                if s.algebra() != repr.algebra {
                    return Err(LabError::Encoding(format!(
                        "scalar encoded as {} inside a {} matrix",
                        s.algebra(),
                        repr.algebra
                    )));
                }
                data.push(s.decode());
            }
        }
        Ok(Matrix {
            algebra: repr.algebra,
            rows: repr.rows,
            cols: repr.cols,
            data,
        })
    }
}
