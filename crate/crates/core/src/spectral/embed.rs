//! Complex representation of quaternionic matrices.
//!
//! Writing `A = A₁ + A₂ j` with complex `A₁`, `A₂`,
//!
//! ```text
//! χ(A) = [  A₁        A₂      ]
//!        [ -conj(A₂)  conj(A₁) ]
//! ```
//!
//! and a quaternionic vector `w = w₁ + w₂ j` maps to `φ(w) = (w₁; -conj(w₂))`.
//! Then `φ(A w) = χ(A) φ(w)` and `φ(w z) = φ(w) z` for complex `z`, so χ is a
//! *-homomorphism and φ identifies `Hⁿ` with `C²ⁿ` as right complex spaces.
//! Right multiplication by `j` maps `φ(w)` to its symplectic partner
//! `φ(w j) = (-w₂; -conj(w₁))`.

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{Matrix, Vector};
use crate::scalar::{Algebra, Quaternion};

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexEmbedding {
    image: Matrix,
}

impl ComplexEmbedding {
    /// The `2n x 2n` complex matrix (tagged [`Algebra::Complex`]).
    pub fn image(&self) -> &Matrix {
        &self.image
    }

    pub fn into_image(self) -> Matrix {
        self.image
    }

    /// Quaternionic dimension `n`.
    pub fn dim(&self) -> usize {
        self.image.rows() / 2
    }

    /// Inverse of [`embed`].
    pub fn collapse(&self) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, Algebra::Quaternion, |r, c| {
            let z1 = self.image[(r, c)];
            let z2 = self.image[(r, n + c)];
            Quaternion::from_complex_pair(Complex64::new(z1.a, z1.b), Complex64::new(z2.a, z2.b))
        })
    }
}

/// χ(A) for a square quaternionic matrix.
pub fn embed(a: &Matrix) -> Result<ComplexEmbedding> {
    a.ensure_algebra(Algebra::Quaternion)?;
    let n = a.ensure_square()?;
    let image = Matrix::from_fn(2 * n, 2 * n, Algebra::Complex, |r, c| {
        let (z1, z2) = a[(r % n, c % n)].to_complex_pair();
        let z = match (r < n, c < n) {
            (true, true) => z1,
            (true, false) => z2,
            (false, true) => -z2.conj(),
            (false, false) => z1.conj(),
        };
        Quaternion::from(z)
    });
    Ok(ComplexEmbedding { image })
}

/// Complex matrix entries as a row-major `Complex64` buffer.
pub(crate) fn complex_buffer(m: &Matrix) -> Vec<Complex64> {
    debug_assert!(m.algebra() <= Algebra::Complex);
    m.as_slice()
        .iter()
        .map(|q| Complex64::new(q.a, q.b))
        .collect()
}

/// φ(w).
pub fn embed_vector(w: &Vector) -> Vec<Complex64> {
    let n = w.len();
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (m, q) in w.iter().enumerate() {
        let (z1, z2) = q.to_complex_pair();
        out[m] = z1;
        out[n + m] = -z2.conj();
    }
    out
}

/// φ⁻¹: `(u; v) ↦ u - conj(v) j`.
pub fn lift_vector(x: &[Complex64]) -> Vector {
    let n = x.len() / 2;
    let data = (0..n)
        .map(|m| Quaternion::from_complex_pair(x[m], -x[n + m].conj()))
        .collect();
    Vector::from_quaternions(Algebra::Quaternion, data)
}
