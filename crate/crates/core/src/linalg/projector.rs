use super::basis::{gram_schmidt, orthonormalize};
use super::{Matrix, Vector};
use crate::error::{LabError, Result};
use crate::scalar::Algebra;

/// Tolerance on `|PP - P|` and `|P - P*|` accepted by [`Projector::from_matrix`].
pub const PROJECTOR_TOL: f64 = 1e-9;

/// Orthogonal projector: `PP = P = P*`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: Matrix,
}

impl Projector {
    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        matrix.ensure_square()?;
        let defect = matrix.projector_defect();
        if defect > PROJECTOR_TOL {
            return Err(LabError::PreconditionViolation(format!(
                "not an orthogonal projector (defect {defect:e})"
            )));
        }
        Ok(Projector { matrix })
    }

    /// `Σ_u u⟨u|·⟩` over an orthonormal family (not checked).
    pub fn from_orthonormal(family: &[Vector], n: usize, algebra: Algebra) -> Self {
        let mut m = Matrix::zeros(n, n, algebra);
        for u in family {
            m = &m + &Matrix::outer(u, u);
        }
        Projector { matrix: m }
    }

    /// Projector onto the span of linearly independent vectors.
    pub fn onto(vs: &[Vector]) -> Result<Self> {
        let first = vs.first().ok_or_else(|| {
            LabError::PreconditionViolation("projector_onto needs at least one vector".into())
        })?;
        let family = gram_schmidt(vs)?;
        let algebra = vs.iter().fold(Algebra::Real, |a, v| a.join(v.algebra()));
        Ok(Projector::from_orthonormal(&family, first.len(), algebra))
    }

    /// Projector onto the span of arbitrary (possibly dependent) vectors.
    pub fn onto_span(vs: &[Vector], n: usize, algebra: Algebra) -> Self {
        Projector::from_orthonormal(&orthonormalize(vs, 1e-8), n, algebra)
    }

    pub fn zero(n: usize, algebra: Algebra) -> Self {
        Projector {
            matrix: Matrix::zeros(n, n, algebra),
        }
    }

    pub fn identity(n: usize, algebra: Algebra) -> Self {
        Projector {
            matrix: Matrix::identity(n, algebra),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn algebra(&self) -> Algebra {
        self.matrix.algebra()
    }

    /// `I - P`.
    pub fn complement(&self) -> Projector {
        Projector {
            matrix: &Matrix::identity(self.dim(), self.algebra()) - &self.matrix,
        }
    }

    /// Rank, read off the real trace.
    pub fn rank(&self) -> usize {
        self.matrix.diagonal_sum().re().round().max(0.0) as usize
    }

    /// Orthonormal basis of the range.
    pub fn range_basis(&self) -> Vec<Vector> {
        orthonormalize(&self.matrix.columns(), 1e-8)
    }

    /// Lattice order: `self ≤ other` iff `other · self = self`.
    pub fn is_below(&self, other: &Projector, tol: f64) -> bool {
        (&other.matrix * &self.matrix).distance(&self.matrix) <= tol
    }

    /// `P Q = 0`.
    pub fn is_orthogonal_to(&self, other: &Projector, tol: f64) -> bool {
        (&self.matrix * &other.matrix).norm_fro() <= tol
    }
}
