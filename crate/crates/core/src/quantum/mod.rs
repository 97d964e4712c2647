//! Observables, their projector-valued measures and outcome statistics.
//!
//! With a finite spectrum every Borel set of outcomes is a finite union of
//! eigenvalues, so a PVM is a list of atoms and `f(A) = Σ f(s) P_s` is exact.

mod symmetry;

pub use symmetry::{
    continuity_scan, refinement_study, symmetry_duality_gap, ContinuityReport, OneParameterGroup,
    Symmetry, SymmetryKind,
};

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::gleason::DensityOperator;
use crate::linalg::{Matrix, Projector, Vector};
use crate::scalar::Algebra;
use crate::spectral::{eig_hermitian, EigenDecomposition, HERMITIAN_TOL};
use crate::trace::real_trace;

/// Relative tolerance merging numerically equal eigenvalues into one atom.
pub const ATOM_TOL: f64 = 1e-7;

/// A Hermitian matrix with a lazily computed eigendecomposition.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: Matrix,
    decomposition: OnceLock<EigenDecomposition>,
}

impl Observable {
    pub fn new(matrix: Matrix) -> Result<Self> {
        matrix.ensure_square()?;
        let deviation = matrix.hermitian_defect();
        if deviation > HERMITIAN_TOL * matrix.norm_fro().max(1.0) {
            return Err(LabError::NotHermitian { deviation });
        }
        Ok(Observable {
            matrix: matrix.hermitian_part(),
            decomposition: OnceLock::new(),
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn algebra(&self) -> Algebra {
        self.matrix.algebra()
    }

    pub fn decomposition(&self) -> &EigenDecomposition {
        self.decomposition
            .get_or_init(|| eig_hermitian(&self.matrix).expect("Hermitian by construction"))
    }

    /// Largest `|s|` over the spectrum.
    pub fn operator_norm(&self) -> f64 {
        self.decomposition()
            .values()
            .iter()
            .fold(0.0, |m, s| m.max(s.abs()))
    }
}

/// One spectral atom: a distinct eigenvalue and its eigenprojector.
#[derive(Debug, Clone)]
pub struct Atom {
    pub eigenvalue: f64,
    pub projector: Projector,
    /// Orthonormal basis of the eigenspace.
    pub basis: Vec<Vector>,
}

/// Projector-valued measure of an observable, atoms in descending eigenvalue order.
#[derive(Debug, Clone)]
pub struct PVMap {
    dim: usize,
    algebra: Algebra,
    atoms: Vec<Atom>,
}

impl PVMap {
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `P_E` for the set `E` of eigenvalues selected by `member`.
    pub fn projector_of(&self, member: impl Fn(f64) -> bool) -> Projector {
        let family: Vec<Vector> = self
            .atoms
            .iter()
            .filter(|a| member(a.eigenvalue))
            .flat_map(|a| a.basis.iter().cloned())
            .collect();
        Projector::from_orthonormal(&family, self.dim, self.algebra)
    }

    /// `|Σ P_s - I|_F`.
    pub fn completeness_defect(&self) -> f64 {
        let sum = self
            .atoms
            .iter()
            .fold(Matrix::zeros(self.dim, self.dim, self.algebra), |m, a| {
                &m + a.projector.matrix()
            });
        sum.distance(&Matrix::identity(self.dim, self.algebra))
    }

    /// `max_{s≠t} |P_s P_t|_F`.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, a) in self.atoms.iter().enumerate() {
            for b in &self.atoms[k + 1..] {
                worst = worst.max((a.projector.matrix() * b.projector.matrix()).norm_fro());
            }
        }
        worst
    }
}

pub fn pvm_of(a: &Observable) -> PVMap {
    let eig = a.decomposition();
    let tol = ATOM_TOL * a.operator_norm();
    let mut groups: Vec<(Vec<f64>, Vec<Vector>)> = Vec::new();
    for (u, s) in eig.pairs() {
        match groups.last_mut() {
            Some((values, basis)) if values[0] - s <= tol => {
                values.push(s);
                basis.push(u.clone());
            }
            _ => groups.push((vec![s], vec![u.clone()])),
        }
    }
    let (n, algebra) = (a.dim(), a.algebra());
    let atoms = groups
        .into_iter()
        .map(|(values, basis)| Atom {
            eigenvalue: values.iter().sum::<f64>() / values.len() as f64,
            projector: Projector::from_orthonormal(&basis, n, algebra),
            basis,
        })
        .collect();
    PVMap {
        dim: n,
        algebra,
        atoms,
    }
}

/// `f(A) = Σ f(s) P_s`.
pub fn apply_function(a: &Observable, f: impl Fn(f64) -> f64) -> Observable {
    let pvm = pvm_of(a);
    let mut m = Matrix::zeros(a.dim(), a.dim(), a.algebra());
    for atom in pvm.atoms() {
        m = &m + &atom.projector.matrix().scale(f(atom.eigenvalue));
    }
    Observable::new(m.hermitian_part()).expect("real combination of projectors")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub eigenvalue: f64,
    pub probability: f64,
}

/// Distribution of measurement outcomes, sorted by ascending eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OutcomeMeasure {
    pub support: Vec<Outcome>,
}

impl OutcomeMeasure {
    pub fn total(&self) -> f64 {
        self.support.iter().map(|o| o.probability).sum()
    }

    pub fn mean(&self) -> f64 {
        self.support
            .iter()
            .map(|o| o.eigenvalue * o.probability)
            .sum()
    }

    /// `√(Σ s² μ(s) - (Σ s μ(s))²)` with rounding-level negatives clamped.
    pub fn std_deviation(&self) -> Result<f64> {
        let second: f64 = self
            .support
            .iter()
            .map(|o| o.eigenvalue * o.eigenvalue * o.probability)
            .sum();
        let scale = self
            .support
            .iter()
            .fold(1.0f64, |m, o| m.max(o.eigenvalue * o.eigenvalue));
        clamped_sqrt(second - self.mean().powi(2), scale)
    }
}

fn ensure_same_dim(a: &Observable, t: &DensityOperator) -> Result<()> {
    if a.dim() != t.dim() {
        return Err(LabError::DimensionMismatch {
            expected: a.dim(),
            found: t.dim(),
        });
    }
    Ok(())
}

/// `μ(s) = tr^R(P_s T)` for each eigenvalue `s`.
pub fn outcome_measure(a: &Observable, t: &DensityOperator) -> Result<OutcomeMeasure> {
    ensure_same_dim(a, t)?;
    let mut support = pvm_of(a)
        .atoms()
        .iter()
        .map(|atom| {
            Ok(Outcome {
                eigenvalue: atom.eigenvalue,
                probability: real_trace(&atom.projector.matrix().checked_mul(t.matrix())?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    support.sort_by(|x, y| x.eigenvalue.total_cmp(&y.eigenvalue));
    Ok(OutcomeMeasure { support })
}

/// `⟨A⟩_T = tr^R(A T)`.
pub fn expectation(a: &Observable, t: &DensityOperator) -> Result<f64> {
    ensure_same_dim(a, t)?;
    real_trace(&a.matrix().checked_mul(t.matrix())?)
}

/// `Σ s μ(s)`.
pub fn expectation_from_measure(m: &OutcomeMeasure) -> f64 {
    m.mean()
}

/// Radicands in `[-1e-10 scale, 0)` are rounding and count as zero.
fn clamped_sqrt(radicand: f64, scale: f64) -> Result<f64> {
    if radicand < -1e-10 * scale {
        return Err(LabError::NegativeVariance { radicand });
    }
    Ok(radicand.max(0.0).sqrt())
}

/// `ΔA_T = √(tr^R(A² T) - tr^R(A T)²)`.
pub fn std_deviation(a: &Observable, t: &DensityOperator) -> Result<f64> {
    ensure_same_dim(a, t)?;
    let a2 = a.matrix().checked_mul(a.matrix())?;
    let second = real_trace(&a2.checked_mul(t.matrix())?)?;
    let mean = expectation(a, t)?;
    clamped_sqrt(second - mean * mean, a.operator_norm().powi(2).max(1.0))
}
