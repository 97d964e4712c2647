//! Dense linear algebra over R, C and H.
//!
//! Conventions: matrices act from the left, scalars multiply vectors from the
//! right, and the inner product `⟨x|y⟩ = Σ conj(x_m) y_m` is linear in its
//! right entry. With these choices `A(xq) = (Ax)q` holds over H as well.

mod basis;
mod matrix;
mod projector;
mod random;
mod vector;

pub use basis::{gram_schmidt, orthonormalize, OrthonormalBasis, RANK_TOL};
pub use matrix::{Matrix, MatrixRepr};
pub use projector::{Projector, PROJECTOR_TOL};
pub use random::{random_unitary, LabRng};
pub use vector::Vector;

use crate::error::Result;
use crate::scalar::{Algebra, Quaternion};
use crate::spectral;

/// Default tolerance for positivity checks.
pub const POSITIVITY_TOL: f64 = 1e-10;

pub fn inner(x: &Vector, y: &Vector) -> Result<Quaternion> {
    x.inner(y)
}

pub fn projector_onto(vs: &[Vector]) -> Result<Projector> {
    Projector::onto(vs)
}

/// `⟨x|Ax⟩ ≥ 0` for every `x`.
///
/// Over R this only constrains the symmetric part, so a positive real matrix
/// need not be symmetric. Over C and H a positive matrix is automatically
/// Hermitian, hence the anti-Hermitian part must vanish too.
pub fn is_positive(a: &Matrix) -> Result<bool> {
    is_positive_with_tol(a, POSITIVITY_TOL)
}

pub fn is_positive_with_tol(a: &Matrix, tol: f64) -> Result<bool> {
    a.ensure_square()?;
    let scale = a.norm_fro().max(1.0);
    if a.algebra() != Algebra::Real && a.anti_hermitian_part().norm_fro() > tol * scale {
        return Ok(false);
    }
    let min = spectral::min_eigenvalue(&a.hermitian_part())?;
    Ok(min >= -tol * scale)
}

/// Positive and selfadjoint; over C and H this coincides with [`is_positive`].
pub fn is_positive_selfadjoint(a: &Matrix) -> Result<bool> {
    let scale = a.norm_fro().max(1.0);
    Ok(a.is_hermitian(POSITIVITY_TOL * scale) && is_positive(a)?)
}
