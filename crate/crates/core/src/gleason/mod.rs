//! Probability measures on the projector lattice and the density operators
//! that induce them through `μ(P) = tr^R(P T)`.
//!
//! Measures are oracles: the lattice is infinite already for `n = 3`, so every
//! statement about "all projectors" is checked on sampled probes.

mod dim2;
mod extremal;

pub use dim2::{dim2_counterexample, dim2_counterexample_in, Dim2Certificate};
pub use extremal::{
    convex_mix, convex_split, convex_unit_lemma, is_extremal, lemma_sampler, ConvexSplit,
    LemmaCheck, LemmaSamplerReport,
};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::linalg::{LabRng, Matrix, MatrixRepr, OrthonormalBasis, Projector, Vector};
use crate::scalar::{Algebra, Quaternion};
use crate::spectral;
use crate::trace::real_trace;

/// Tolerance for membership in the state space.
pub const DENSITY_TOL: f64 = 1e-8;

/// Hermitian, positive, unit real trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: Matrix,
}

impl DensityOperator {
    /// Certify `matrix` as a state; stores its Hermitian part.
    pub fn new(matrix: Matrix) -> Result<Self> {
        matrix.ensure_square()?;
        let deviation = matrix.hermitian_defect();
        if deviation > DENSITY_TOL {
            return Err(LabError::NotADensityOperator(format!(
                "|T - T*| = {deviation:e}"
            )));
        }
        let matrix = matrix.hermitian_part();
        let trace = real_trace(&matrix)?;
        if (trace - 1.0).abs() > DENSITY_TOL {
            return Err(LabError::NotADensityOperator(format!("real trace {trace}")));
        }
        let min = spectral::eigenvalues_hermitian(&matrix)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < -DENSITY_TOL {
            return Err(LabError::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(DensityOperator { matrix })
    }

    /// `ψ⟨ψ|·⟩` for a nonzero `ψ` (normalized here).
    pub fn pure(psi: &Vector) -> Result<Self> {
        let u = psi.normalized().ok_or(LabError::DegenerateInput {
            residual: psi.norm(),
        })?;
        Ok(DensityOperator {
            matrix: Matrix::outer(&u, &u),
        })
    }

    pub fn maximally_mixed(n: usize, algebra: Algebra) -> Self {
        DensityOperator {
            matrix: Matrix::identity(n, algebra).scale(1.0 / n as f64),
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

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        spectral::eigenvalues_hermitian(&self.matrix)
            .expect("certified Hermitian")
            .iter()
            .filter(|&&s| s > tol)
            .count()
    }

    /// `⟨x|T x⟩`, real for Hermitian `T`.
    pub fn expectation_on(&self, x: &Vector) -> f64 {
        x.dot(&self.matrix.apply(x).expect("same dimension")).re()
    }

    /// `U T U⁻¹` for a unitary `U`.
    pub fn conjugated(&self, u: &Matrix) -> Result<Self> {
        let deviation = u.unitary_defect();
        if deviation > 1e-9 {
            return Err(LabError::NotUnitary { deviation });
        }
        DensityOperator::new(u.checked_mul(&self.matrix)?.checked_mul(&u.adjoint())?)
    }
}

#[derive(Serialize, Deserialize)]
struct DensityRepr {
    #[serde(flatten)]
    matrix: MatrixRepr,
    certified: bool,
}

impl Serialize for DensityOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DensityRepr {
            matrix: self.matrix.clone().into(),
            certified: true,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityOperator {
    /// The `certified` flag is advisory; the matrix is always re-certified.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = DensityRepr::deserialize(d)?;
        let matrix = Matrix::try_from(repr.matrix).map_err(serde::de::Error::custom)?;
        DensityOperator::new(matrix).map_err(serde::de::Error::custom)
    }
}

type VectorOracle = Arc<dyn Fn(&Vector) -> f64 + Send + Sync>;
type ProjectorOracle = Arc<dyn Fn(&Projector) -> f64 + Send + Sync>;

/// A function on unit vectors, expected to sum to 1 over every orthonormal basis.
#[derive(Clone)]
pub struct FrameFunction {
    dim: usize,
    algebra: Algebra,
    oracle: VectorOracle,
}

impl FrameFunction {
    pub fn new(
        dim: usize,
        algebra: Algebra,
        f: impl Fn(&Vector) -> f64 + Send + Sync + 'static,
    ) -> Self {
        FrameFunction {
            dim,
            algebra,
            oracle: Arc::new(f),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn evaluate(&self, x: &Vector) -> f64 {
        (self.oracle)(x)
    }

    /// `Σ_{u∈N} f(u)`.
    pub fn basis_sum(&self, basis: &OrthonormalBasis) -> f64 {
        basis.vectors().iter().map(|u| self.evaluate(u)).sum()
    }
}

impl fmt::Debug for FrameFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FrameFunction")
            .field("dim", &self.dim)
            .field("algebra", &self.algebra)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeasureKind {
    TraceBacked(DensityOperator),
    Oracle,
}

/// A map from projectors to `[0, 1]`.
#[derive(Clone)]
pub struct LatticeMeasure {
    dim: usize,
    algebra: Algebra,
    kind: MeasureKind,
    oracle: ProjectorOracle,
}

impl LatticeMeasure {
    pub fn from_oracle(
        dim: usize,
        algebra: Algebra,
        f: impl Fn(&Projector) -> f64 + Send + Sync + 'static,
    ) -> Self {
        LatticeMeasure {
            dim,
            algebra,
            kind: MeasureKind::Oracle,
            oracle: Arc::new(f),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn kind(&self) -> &MeasureKind {
        &self.kind
    }

    pub fn state(&self) -> Option<&DensityOperator> {
        match &self.kind {
            MeasureKind::TraceBacked(t) => Some(t),
            MeasureKind::Oracle => None,
        }
    }

    pub fn evaluate(&self, p: &Projector) -> f64 {
        (self.oracle)(p)
    }

    /// `x ↦ μ(x⟨x|·⟩)` on unit vectors.
    pub fn frame_function(&self) -> FrameFunction {
        let oracle = Arc::clone(&self.oracle);
        let (n, algebra) = (self.dim, self.algebra);
        FrameFunction::new(n, algebra, move |x| {
            oracle(&Projector::from_orthonormal(
                std::slice::from_ref(x),
                n,
                algebra,
            ))
        })
    }
}

impl fmt::Debug for LatticeMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticeMeasure")
            .field("dim", &self.dim)
            .field("algebra", &self.algebra)
            .field("kind", &self.kind)
            .finish()
    }
}

/// Projector onto the span of the union of the ranges.
pub fn lattice_join(ps: &[Projector]) -> Result<Projector> {
    let first = ps.first().ok_or_else(|| {
        LabError::PreconditionViolation("join of an empty family needs a dimension".into())
    })?;
    let n = first.dim();
    if let Some(bad) = ps.iter().find(|p| p.dim() != n) {
        return Err(LabError::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    let algebra = ps.iter().fold(Algebra::Real, |a, p| a.join(p.algebra()));
    let spanning: Vec<Vector> = ps.iter().flat_map(Projector::range_basis).collect();
    Ok(Projector::onto_span(&spanning, n, algebra))
}

/// `μ(P) = tr^R(P T)`.
pub fn measure_from_state(t: &DensityOperator) -> LatticeMeasure {
    let state = t.clone();
    LatticeMeasure {
        dim: t.dim(),
        algebra: t.algebra(),
        kind: MeasureKind::TraceBacked(t.clone()),
        oracle: Arc::new(move |p: &Projector| {
            real_trace(
                &p.matrix()
                    .checked_mul(state.matrix())
                    .expect("same dimension"),
            )
            .expect("square")
        }),
    }
}

/// Knobs for [`reconstruct_state_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionOptions {
    /// Random unit vectors on which `⟨x|Tx⟩ = f(x)` is checked.
    pub probes: usize,
    /// Random phases per polarization vector in the invariance check.
    pub phases: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for ReconstructionOptions {
    fn default() -> Self {
        ReconstructionOptions {
            probes: 100,
            phases: 10,
            tolerance: 1e-8,
            seed: 0x5EED,
        }
    }
}

pub fn reconstruct_state(f: &FrameFunction, n: usize, algebra: Algebra) -> Result<DensityOperator> {
    reconstruct_state_with(f, n, algebra, &ReconstructionOptions::default())
}

/// Polarization: `T_kk = f(e_k)` and, for `x = (e_k + e_l q)/√2`,
/// `f(x) = (T_kk + T_ll)/2 + Re(T_kl q)` for each unit `q ∈ {1, i, j, k} ∩ D`.
pub fn reconstruct_state_with(
    f: &FrameFunction,
    n: usize,
    algebra: Algebra,
    opts: &ReconstructionOptions,
) -> Result<DensityOperator> {
    let mut rng = LabRng::seed_from(opts.seed);
    let tol = opts.tolerance;
    let mut probe = |x: &Vector| -> Result<f64> {
        let value = f.evaluate(x);
        for _ in 0..opts.phases {
            let q = rng.unit_scalar(algebra);
            let moved = f.evaluate(&x.mul_right(q));
            if (moved - value).abs() > tol {
                return Err(LabError::NotAFrameFunction(format!(
                    "f(xq) = {moved} differs from f(x) = {value} for a unit q"
                )));
            }
        }
        Ok(value)
    };

    let units = algebra.units();
    let mut t = Matrix::zeros(n, n, algebra);
    for k in 0..n {
        t[(k, k)] = Quaternion::real(probe(&Vector::unit(n, k, algebra))?);
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for k in 0..n {
        for l in (k + 1)..n {
            let mean = 0.5 * (t[(k, k)].a + t[(l, l)].a);
            let mut entry = Quaternion::ZERO;
            for (m, &q) in units.iter().enumerate() {
                let mut x = Vector::unit(n, k, algebra).scale(h);
                x = &x + &Vector::unit(n, l, algebra).mul_right(q).scale(h);
                let r = probe(&x)? - mean;
                // Re(T_kl) = r_1 and Re(T_kl u) = -(u-component of T_kl) for imaginary u
                entry += if m == 0 { q.scale(r) } else { q.scale(-r) };
            }
            t[(k, l)] = entry;
            t[(l, k)] = entry.conj();
        }
    }

    let mut worst: f64 = 0.0;
    for _ in 0..opts.probes {
        let x = rng.unit_vector(n, algebra);
        worst = worst.max((x.dot(&t.apply(&x)?).re() - f.evaluate(&x)).abs());
    }
    if worst > tol {
        return Err(LabError::NotAFrameFunction(format!(
            "no Hermitian T reproduces f: probe error {worst:e}"
        )));
    }
    DensityOperator::new(t)
}

/// One row of a probe transcript.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub projector_rank: usize,
    pub value: f64,
}

pub fn probe_transcript(mu: &LatticeMeasure, probes: &[Projector]) -> Vec<ProbeRecord> {
    probes
        .iter()
        .map(|p| ProbeRecord {
            projector_rank: p.rank(),
            value: mu.evaluate(p),
        })
        .collect()
}

/// Random projectors with ranks cycling through `1..=max(n - 1, 1)`.
pub fn random_probes(rng: &mut LabRng, n: usize, algebra: Algebra, count: usize) -> Vec<Projector> {
    let top = n.saturating_sub(1).max(1);
    (0..count)
        .map(|c| {
            let k = 1 + c % top;
            let u = rng.unitary(n, algebra);
            Projector::from_orthonormal(&u.columns()[..k.min(n)], n, algebra)
        })
        .collect()
}

/// Random orthogonal decomposition `I = Σ P_k` into at most `n` blocks.
pub fn random_decomposition(rng: &mut LabRng, n: usize, algebra: Algebra) -> Vec<Projector> {
    let columns = rng.unitary(n, algebra).columns();
    let blocks = rng.int_in(1, n);
    let mut cuts: Vec<usize> = (1..n).collect();
    for k in (1..cuts.len()).rev() {
        cuts.swap(k, rng.int_in(0, k));
    }
    let mut cuts: Vec<usize> = cuts.into_iter().take(blocks - 1).collect();
    cuts.sort_unstable();
    cuts.push(n);
    let mut start = 0;
    cuts.into_iter()
        .map(|end| {
            let p = Projector::from_orthonormal(&columns[start..end], n, algebra);
            start = end;
            p
        })
        .collect()
}

/// Random state `C*C / tr(C*C)`, full rank almost surely.
pub fn random_state(rng: &mut LabRng, n: usize, algebra: Algebra) -> DensityOperator {
    random_state_of_rank(rng, n, n, algebra)
}

/// Random state of the given rank `1 ≤ k ≤ n`.
pub fn random_state_of_rank(
    rng: &mut LabRng,
    n: usize,
    k: usize,
    algebra: Algebra,
) -> DensityOperator {
    let c = rng.matrix(k, n, algebra);
    let g = (&c.adjoint() * &c).hermitian_part();
    let tr = real_trace(&g).expect("square");
    DensityOperator {
        matrix: g.scale(1.0 / tr),
    }
}

pub fn random_pure_state(rng: &mut LabRng, n: usize, algebra: Algebra) -> DensityOperator {
    DensityOperator::pure(&rng.unit_vector(n, algebra)).expect("unit vector")
}
