//! Symmetries acting on states and observables, one-parameter unitary groups
//! and the continuity of `t ↦ tr^R(A U_t B U_t⁻¹)`.

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::gleason::DensityOperator;
use crate::linalg::{Matrix, Vector};
use crate::scalar::{Algebra, Quaternion};
use crate::spectral::{eig_hermitian, operator_norm};
use crate::trace::{real_trace, trace_norm};

/// Accepted `|U*U - I|`.
pub const UNITARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetryKind {
    Unitary,
    /// Complex conjugation of coordinates followed by the unitary factor.
    Antiunitary,
}

/// `x ↦ V x` or, over C, `x ↦ V conj(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Symmetry {
    kind: SymmetryKind,
    factor: Matrix,
}

fn ensure_unitary(v: &Matrix) -> Result<()> {
    v.ensure_square()?;
    let deviation = v.unitary_defect();
    if deviation > UNITARY_TOL {
        return Err(LabError::NotUnitary { deviation });
    }
    Ok(())
}

impl Symmetry {
    pub fn unitary(u: Matrix) -> Result<Self> {
        ensure_unitary(&u)?;
        Ok(Symmetry {
            kind: SymmetryKind::Unitary,
            factor: u,
        })
    }

    /// Only over C: conjugation is not additive-compatible with right
    /// multiplication by H scalars, and over R it is the identity.
    pub fn antiunitary(v: Matrix) -> Result<Self> {
        if v.algebra() != Algebra::Complex {
            return Err(LabError::WrongAlgebra {
                expected: Algebra::Complex,
                found: v.algebra(),
            });
        }
        ensure_unitary(&v)?;
        Ok(Symmetry {
            kind: SymmetryKind::Antiunitary,
            factor: v,
        })
    }

    pub fn kind(&self) -> SymmetryKind {
        self.kind
    }

    pub fn factor(&self) -> &Matrix {
        &self.factor
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        match self.kind {
            SymmetryKind::Unitary => self.factor.apply(x),
            SymmetryKind::Antiunitary => {
                let conj =
                    Vector::from_quaternions(x.algebra(), x.iter().map(|q| q.conj()).collect());
                self.factor.apply(&conj)
            }
        }
    }

    /// `U B U⁻¹`; for `U = V∘conj` this is `V conj(B) V*`.
    pub fn conjugate(&self, b: &Matrix) -> Result<Matrix> {
        let inner = match self.kind {
            SymmetryKind::Unitary => b.clone(),
            SymmetryKind::Antiunitary => b.entrywise_conj(),
        };
        self.factor
            .checked_mul(&inner)?
            .checked_mul(&self.factor.adjoint())
    }

    /// `U⁻¹ A U`; for `U = V∘conj` this is `conj(V* A V)`.
    pub fn inverse_conjugate(&self, a: &Matrix) -> Result<Matrix> {
        let m = self
            .factor
            .adjoint()
            .checked_mul(a)?
            .checked_mul(&self.factor)?;
        Ok(match self.kind {
            SymmetryKind::Unitary => m,
            SymmetryKind::Antiunitary => m.entrywise_conj(),
        })
    }

    /// The state `U T U⁻¹`.
    pub fn act_on_state(&self, t: &DensityOperator) -> Result<DensityOperator> {
        DensityOperator::new(self.conjugate(t.matrix())?)
    }
}

/// `|tr^R(A U B U⁻¹) - tr^R(U⁻¹ A U B)|`.
pub fn symmetry_duality_gap(a: &Matrix, b: &Matrix, u: &Symmetry) -> Result<f64> {
    let schrodinger = real_trace(&a.checked_mul(&u.conjugate(b)?)?)?;
    let heisenberg = real_trace(&u.inverse_conjugate(a)?.checked_mul(b)?)?;
    Ok((schrodinger - heisenberg).abs())
}

#[derive(Debug, Clone)]
enum Component {
    /// `u e^{i t ω} ⟨u|`, i.e. `cos(tω) u⟨u| + sin(tω) u i ⟨u|`.
    Phase {
        u: Vector,
        omega: f64,
    },
    /// Rotation by `tω` in the real plane spanned by `a`, `b`.
    Plane {
        a: Vector,
        b: Vector,
        omega: f64,
    },
    Fixed {
        u: Vector,
    },
}

/// `t ↦ U_t = exp(t G)` built from the eigendecomposition of a Hermitian `H`.
///
/// Over C and H each eigenvector `u` with eigenvalue `s` rotates as
/// `u ↦ u e^{its}`, so `G = Σ s u i ⟨u|`. Over R there is no `i`; consecutive
/// eigenvectors are paired into planes rotating at the larger eigenvalue of the
/// pair, and a leftover eigenvector stays fixed.
#[derive(Debug, Clone)]
pub struct OneParameterGroup {
    dim: usize,
    algebra: Algebra,
    components: Vec<Component>,
}

impl OneParameterGroup {
    pub fn from_generator(h: &Matrix) -> Result<Self> {
        let eig = eig_hermitian(h)?;
        let (dim, algebra) = (h.rows(), h.algebra());
        let pairs: Vec<(Vector, f64)> = eig.pairs().map(|(u, s)| (u.clone(), s)).collect();
        let components = if algebra == Algebra::Real {
            pairs
                .chunks(2)
                .map(|c| match c {
                    [(a, s), (b, _)] => Component::Plane {
                        a: a.clone(),
                        b: b.clone(),
                        omega: *s,
                    },
                    [(u, _)] => Component::Fixed { u: u.clone() },
                    _ => unreachable!("chunks of two"),
                })
                .collect()
        } else {
            pairs
                .into_iter()
                .map(|(u, omega)| Component::Phase { u, omega })
                .collect()
        };
        Ok(OneParameterGroup {
            dim,
            algebra,
            components,
        })
    }

    pub fn at(&self, t: f64) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim, self.algebra);
        for c in &self.components {
            let term = match c {
                Component::Phase { u, omega } => {
                    let (s, co) = (t * omega).sin_cos();
                    &Matrix::outer(&u.scale(co), u)
                        + &Matrix::outer(&u.mul_right(Quaternion::I).scale(s), u)
                }
                Component::Plane { a, b, omega } => {
                    let (s, co) = (t * omega).sin_cos();
                    let diag = &Matrix::outer(a, a) + &Matrix::outer(b, b);
                    let rot = &Matrix::outer(b, a) - &Matrix::outer(a, b);
                    &diag.scale(co) + &rot.scale(s)
                }
                Component::Fixed { u } => Matrix::outer(u, u),
            };
            m = &m + &term;
        }
        m
    }

    /// The anti-Hermitian `G` with `U_t = exp(t G)`.
    pub fn generator(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim, self.algebra);
        for c in &self.components {
            match c {
                Component::Phase { u, omega } => {
                    m = &m + &Matrix::outer(&u.mul_right(Quaternion::I).scale(*omega), u);
                }
                Component::Plane { a, b, omega } => {
                    m = &m + &(&Matrix::outer(b, a) - &Matrix::outer(a, b)).scale(*omega);
                }
                Component::Fixed { .. } => {}
            }
        }
        m
    }

    /// `|U_{t+s} - U_t U_s|_F`.
    pub fn group_law_defect(&self, t: f64, s: f64) -> f64 {
        self.at(t + s).distance(&(&self.at(t) * &self.at(s)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuityReport {
    pub samples: usize,
    /// `max_k |g(t_{k+1}) - g(t_k)|` for `g(t) = tr^R(A U_t B U_t⁻¹)` on `[0, 1]`.
    pub max_jump: f64,
    /// `max_k` of the jump over `2 |A| |B|_1 |U_{t_{k+1}} - U_{t_k}|_F`; at most 1.
    pub max_bound_ratio: f64,
    pub min_value: f64,
    pub max_value: f64,
}

/// Sample `g(t) = tr^R(A U_t B U_t⁻¹)` at `t = k / samples`, `k = 0..=samples`.
pub fn continuity_scan(
    a: &Matrix,
    b: &DensityOperator,
    path: impl Fn(f64) -> Matrix,
    samples: usize,
) -> Result<ContinuityReport> {
    let samples = samples.max(1);
    let lipschitz = 2.0 * operator_norm(a)? * trace_norm(b.matrix())?;
    let mut prev: Option<(Matrix, f64)> = None;
    let mut report = ContinuityReport {
        samples,
        max_jump: 0.0,
        max_bound_ratio: 0.0,
        min_value: f64::INFINITY,
        max_value: f64::NEG_INFINITY,
    };
    for k in 0..=samples {
        let u = path(k as f64 / samples as f64);
        let moved = u.checked_mul(b.matrix())?.checked_mul(&u.adjoint())?;
        let g = real_trace(&a.checked_mul(&moved)?)?;
        report.min_value = report.min_value.min(g);
        report.max_value = report.max_value.max(g);
        if let Some((pu, pg)) = &prev {
            let jump = (g - pg).abs();
            report.max_jump = report.max_jump.max(jump);
            let bound = lipschitz * u.distance(pu);
            if jump > 0.0 {
                report.max_bound_ratio = report.max_bound_ratio.max(if bound > 0.0 {
                    jump / bound
                } else {
                    f64::INFINITY
                });
            }
        }
        prev = Some((u, g));
    }
    Ok(report)
}

/// Max adjacent jumps for `base, 2 base, 4 base, ...` samples (`refinements + 1` scans).
pub fn refinement_study(
    a: &Matrix,
    b: &DensityOperator,
    path: impl Fn(f64) -> Matrix,
    base: usize,
    refinements: usize,
) -> Result<Vec<ContinuityReport>> {
    (0..=refinements)
        .map(|r| continuity_scan(a, b, &path, base << r))
        .collect()
}
