use super::{Matrix, Vector};
use crate::error::{LabError, Result};
use crate::scalar::{Algebra, Quaternion};

/// Relative rank tolerance used by [`gram_schmidt`].
pub const RANK_TOL: f64 = 1e-10;

/// Modified Gram-Schmidt with one re-orthogonalization pass, skipping inputs
/// whose residual falls below `rel_tol * max_k |v_k|`.
///
/// Projections are `v - u⟨u|v⟩` and normalization divides on the right, so the
/// output spans the same right submodule as the input.
pub fn orthonormalize(vs: &[Vector], rel_tol: f64) -> Vec<Vector> {
    let scale = vs.iter().map(Vector::norm).fold(0.0, f64::max);
    let mut out: Vec<Vector> = Vec::new();
    if scale == 0.0 {
        return out;
    }
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                w.remove_component(u);
            }
        }
        let n = w.norm();
        if n > rel_tol * scale {
            out.push(w.scale(1.0 / n));
        }
    }
    out
}

/// Orthonormalize linearly independent vectors; dependence is an error.
pub fn gram_schmidt(vs: &[Vector]) -> Result<Vec<Vector>> {
    if let Some(first) = vs.first() {
        if let Some(bad) = vs.iter().find(|v| v.len() != first.len()) {
            return Err(LabError::DimensionMismatch {
                expected: first.len(),
                found: bad.len(),
            });
        }
    }
    let scale = vs.iter().map(Vector::norm).fold(0.0, f64::max);
    let mut out: Vec<Vector> = Vec::with_capacity(vs.len());
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                w.remove_component(u);
            }
        }
        let n = w.norm();
        if n.is_nan() || n <= RANK_TOL * scale {
            return Err(LabError::DegenerateInput { residual: n });
        }
        out.push(w.scale(1.0 / n));
    }
    Ok(out)
}

/// An ordered orthonormal basis of the whole space.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    vectors: Vec<Vector>,
}

impl OrthonormalBasis {
    /// Validate orthonormality (to `1e-9`) and completeness.
    pub fn new(vectors: Vec<Vector>) -> Result<Self> {
        let n = vectors.first().map_or(0, Vector::len);
        if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
            return Err(LabError::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        if vectors.len() != n {
            return Err(LabError::IncompleteBasis {
                expected: n,
                found: vectors.len(),
            });
        }
        let basis = OrthonormalBasis { vectors };
        let defect = basis.orthonormality_defect();
        if defect > 1e-9 {
            return Err(LabError::DegenerateInput { residual: defect });
        }
        Ok(basis)
    }

    pub(crate) fn from_orthonormal(vectors: Vec<Vector>) -> Self {
        OrthonormalBasis { vectors }
    }

    pub fn standard(n: usize, algebra: Algebra) -> Self {
        OrthonormalBasis {
            vectors: (0..n).map(|k| Vector::unit(n, k, algebra)).collect(),
        }
    }

    pub fn from_unitary(u: &Matrix) -> Result<Self> {
        OrthonormalBasis::new(u.columns())
    }

    /// Extend an orthonormal family to a full basis using standard basis vectors.
    pub fn complete(family: Vec<Vector>, n: usize, algebra: Algebra) -> Result<Self> {
        let mut candidates = family.clone();
        candidates.extend((0..n).map(|k| Vector::unit(n, k, algebra)));
        let mut vectors = orthonormalize(&candidates, 1e-8);
        vectors.truncate(n);
        // the supplied family must survive unchanged as a prefix
        if vectors.len() != n
            || family
                .iter()
                .zip(&vectors)
                .any(|(a, b)| !a.approx_eq(b, 1e-8))
        {
            return Err(LabError::IncompleteBasis {
                expected: n,
                found: vectors.len(),
            });
        }
        vectors.splice(0..family.len(), family);
        Ok(OrthonormalBasis { vectors })
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn algebra(&self) -> Algebra {
        self.vectors
            .iter()
            .fold(Algebra::Real, |a, v| a.join(v.algebra()))
    }

    /// `max_rs |⟨u_r|u_s⟩ - δ_rs|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (r, u) in self.vectors.iter().enumerate() {
            for (s, v) in self.vectors.iter().enumerate() {
                let target = if r == s {
                    Quaternion::ONE
                } else {
                    Quaternion::ZERO
                };
                worst = worst.max((u.dot(v) - target).norm());
            }
        }
        worst
    }

    /// Columns-as-basis-vectors matrix; unitary.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.vectors).expect("basis vectors share a length")
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        OrthonormalBasis {
            vectors: perm.iter().map(|&k| self.vectors[k].clone()).collect(),
        }
    }

    /// `{u s | u ∈ N}`.
    pub fn right_scaled(&self, s: Quaternion) -> Self {
        OrthonormalBasis {
            vectors: self.vectors.iter().map(|u| u.mul_right(s)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::LabRng;

    #[test]
    fn standard_basis_is_fixed() {
        let e = OrthonormalBasis::standard(4, Algebra::Quaternion);
        let out = gram_schmidt(e.vectors()).unwrap();
        assert_eq!(out, e.vectors());
    }

    #[test]
    fn two_dimensional_real() {
        let vs = [
            Vector::from_scalars(&[1.0, 0.0]),
            Vector::from_scalars(&[1.0, 1.0]),
        ];
        let out = gram_schmidt(&vs).unwrap();
        assert!(out[0].approx_eq(&Vector::from_scalars(&[1.0, 0.0]), 1e-15));
        assert!(out[1].approx_eq(&Vector::from_scalars(&[0.0, 1.0]), 1e-15));
    }

    #[test]
    fn quaternionic_line_normalizes_on_the_right() {
        let q = Quaternion::new(1.0, -2.0, 0.5, 3.0);
        let out = gram_schmidt(&[Vector::from_scalars(&[q])]).unwrap();
        assert!(out[0][0].approx_eq(q / q.norm(), 1e-15));
        assert!(out[0]
            .inner(&out[0])
            .unwrap()
            .approx_eq(Quaternion::ONE, 1e-15));
    }

    #[test]
    fn dependent_input_is_rejected() {
        let v = Vector::from_scalars(&[Quaternion::I, Quaternion::J]);
        // v k is in the same quaternionic line as v
        let w = v.mul_right(Quaternion::K);
        assert!(matches!(
            gram_schmidt(&[v.clone(), w]),
            Err(LabError::DegenerateInput { .. })
        ));
        assert_eq!(
            orthonormalize(&[v.clone(), v.scale(2.0)], RANK_TOL).len(),
            1
        );
    }

    #[test]
    fn incomplete_basis_rejected() {
        let e = OrthonormalBasis::standard(3, Algebra::Real);
        let err = OrthonormalBasis::new(e.vectors()[..2].to_vec()).unwrap_err();
        assert!(matches!(
            err,
            LabError::IncompleteBasis { .. } | LabError::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn completion_keeps_family() {
        let mut rng = LabRng::seed_from(3);
        let u = rng.unit_vector(4, Algebra::Quaternion);
        let b = OrthonormalBasis::complete(vec![u.clone()], 4, Algebra::Quaternion).unwrap();
        assert_eq!(b.vectors()[0], u);
        assert!(b.orthonormality_defect() < 1e-12);
    }

    #[test]
    fn random_complex_unitary_columns_survive_gram_schmidt() {
        let u = crate::linalg::random_unitary(5, Algebra::Complex, 11);
        let cols = u.columns();
        let out = gram_schmidt(&cols).unwrap();
        for (a, b) in cols.iter().zip(&out) {
            assert!(a.approx_eq(b, 1e-12));
        }
    }
}
