//! Spectral machinery for Hermitian matrices over R, C and H.
//!
//! Real and complex matrices go straight through the Jacobi kernel. A
//! quaternionic matrix is diagonalized through its complex image χ(A), whose
//! spectrum is the quaternionic one with every multiplicity doubled; one
//! quaternionic eigenvector is lifted back per symplectic pair.
//!
//! Singular values, `|A|` and the polar factor are read off the Hermitian
//! dilation `[[0, A], [A*, 0]]`, whose eigenvalues are `±σ_k`. This avoids the
//! square root of `A*A`, which would lose half the digits of small singular
//! values.

mod embed;
mod jacobi;
mod structure;

pub use embed::{embed, embed_vector, lift_vector, ComplexEmbedding};
pub use structure::{adapted_basis, make_j, unit_rotation_to};

use crate::error::{LabError, Result};
use crate::linalg::{Matrix, OrthonormalBasis, Vector};
use crate::scalar::{Algebra, Quaternion};
use embed::complex_buffer;
use jacobi::jacobi_hermitian;

/// Relative tolerance on `|A - A*|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Eigenvalues of χ(A) closer than this (times `max(1, |A|)`) belong to one pair group.
pub const PAIR_TOL: f64 = 1e-7;
/// Eigenvalues in `[-CLAMP_TOL |A|, 0)` count as zero.
pub const CLAMP_TOL: f64 = 1e-10;

/// Orthonormal eigenbasis with real eigenvalues, sorted descending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    basis: OrthonormalBasis,
    values: Vec<f64>,
}

impl EigenDecomposition {
    pub fn basis(&self) -> &OrthonormalBasis {
        &self.basis
    }

    pub fn vectors(&self) -> &[Vector] {
        self.basis.vectors()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Vector, f64)> {
        self.basis.vectors().iter().zip(self.values.iter().copied())
    }

    /// `Σ_u u f(s(u)) ⟨u|·⟩`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.basis.dim();
        let algebra = self.basis.algebra();
        let mut out = Matrix::zeros(n, n, algebra);
        for (u, s) in self.pairs() {
            let fs = f(s);
            if fs != 0.0 {
                out = &out + &Matrix::outer(&u.scale(fs), u);
            }
        }
        out
    }

    /// `Σ_u u s(u) ⟨u|·⟩`.
    pub fn reconstruct(&self) -> Matrix {
        self.map_values(|s| s)
    }

    /// `max_u |A u - u s(u)|`.
    pub fn max_residual(&self, a: &Matrix) -> f64 {
        self.pairs()
            .map(|(u, s)| (&a.apply(u).expect("square") - &u.scale(s)).norm())
            .fold(0.0, f64::max)
    }
}

fn ensure_hermitian(a: &Matrix) -> Result<usize> {
    let n = a.ensure_square()?;
    let deviation = a.hermitian_defect();
    if deviation > HERMITIAN_TOL * a.norm_fro().max(1.0) {
        return Err(LabError::NotHermitian { deviation });
    }
    Ok(n)
}

fn sort_descending(values: &mut [f64]) {
    values.sort_by(|x, y| y.total_cmp(x));
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn eig_hermitian(a: &Matrix) -> Result<EigenDecomposition> {
    let n = ensure_hermitian(a)?;
    let h = a.hermitian_part();
    match a.algebra() {
        Algebra::Real | Algebra::Complex => eig_complex(&h),
        Algebra::Quaternion => eig_quaternionic(&h, n),
    }
}

fn eig_complex(h: &Matrix) -> Result<EigenDecomposition> {
    let n = h.rows();
    let out = jacobi_hermitian(complex_buffer(h), n, true)?;
    let vectors = out.vectors.expect("requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| out.values[y].total_cmp(&out.values[x]));
    let basis = order
        .iter()
        .map(|&k| {
            let data = vectors[k].iter().map(|&z| Quaternion::from(z)).collect();
            Vector::from_quaternions(h.algebra(), data)
        })
        .collect();
    Ok(EigenDecomposition {
        basis: OrthonormalBasis::from_orthonormal(basis),
        values: order.iter().map(|&k| out.values[k]).collect(),
    })
}

/// Group indices of descending `values` into runs closer than `tol`, merging
/// runs until every group has even size.
fn pair_groups(values: &[f64], tol: f64) -> Result<Vec<Vec<usize>>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, &v) in values.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if values[*g.last().expect("nonempty")] - v <= tol => g.push(k),
            _ => groups.push(vec![k]),
        }
    }
    let mut merged: Vec<Vec<usize>> = Vec::new();
    let mut pending: Vec<usize> = Vec::new();
    for g in groups {
        pending.extend(g);
        if pending.len().is_multiple_of(2) {
            merged.push(std::mem::take(&mut pending));
        }
    }
    if !pending.is_empty() {
        return Err(LabError::ConvergenceFailure {
            sweeps: 0,
            off_diagonal: tol,
        });
    }
    Ok(merged)
}

fn eig_quaternionic(h: &Matrix, n: usize) -> Result<EigenDecomposition> {
    let chi = embed(h)?;
    let out = jacobi_hermitian(complex_buffer(chi.image()), 2 * n, true)?;
    let complex_vectors = out.vectors.expect("requested");
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&x, &y| out.values[y].total_cmp(&out.values[x]));
    let sorted: Vec<f64> = order.iter().map(|&k| out.values[k]).collect();
    let tol = PAIR_TOL * h.norm_fro().max(1.0);

    let mut basis: Vec<Vector> = Vec::with_capacity(n);
    let mut values: Vec<f64> = Vec::with_capacity(n);
    for group in pair_groups(&sorted, tol)? {
        let mut candidates: Vec<Vector> = group
            .iter()
            .map(|&g| lift_vector(&complex_vectors[order[g]]))
            .collect();
        // pivoted selection: the complex span of the group is φ of a
        // quaternionic space of half the dimension
        for _ in 0..group.len() / 2 {
            for c in candidates.iter_mut() {
                for _ in 0..2 {
                    for u in &basis {
                        c.remove_component(u);
                    }
                }
            }
            let (best, norm) = candidates
                .iter()
                .enumerate()
                .map(|(k, c)| (k, c.norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .expect("nonempty group");
            if norm < 1e-3 {
                return Err(LabError::ConvergenceFailure {
                    sweeps: 0,
                    off_diagonal: norm,
                });
            }
            let u = candidates.swap_remove(best).scale(1.0 / norm);
            let s = u.dot(&h.apply(&u)?).re();
            basis.push(u);
            values.push(s);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| values[y].total_cmp(&values[x]));
    Ok(EigenDecomposition {
        basis: OrthonormalBasis::from_orthonormal(
            order.iter().map(|&k| basis[k].clone()).collect(),
        ),
        values: order.iter().map(|&k| values[k]).collect(),
    })
}

/// Eigenvalues of a Hermitian matrix, descending, without eigenvectors.
pub fn eigenvalues_hermitian(a: &Matrix) -> Result<Vec<f64>> {
    let n = ensure_hermitian(a)?;
    let h = a.hermitian_part();
    let mut values = match a.algebra() {
        Algebra::Real | Algebra::Complex => jacobi_hermitian(complex_buffer(&h), n, false)?.values,
        Algebra::Quaternion => {
            let chi = embed(&h)?;
            let mut doubled = jacobi_hermitian(complex_buffer(chi.image()), 2 * n, false)?.values;
            sort_descending(&mut doubled);
            doubled.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
        }
    };
    sort_descending(&mut values);
    Ok(values)
}

pub(crate) fn min_eigenvalue(a: &Matrix) -> Result<f64> {
    Ok(eigenvalues_hermitian(a)?.last().copied().unwrap_or(0.0))
}

fn dilation(a: &Matrix) -> Matrix {
    let n = a.rows();
    let m = a.cols();
    Matrix::from_fn(n + m, n + m, a.algebra(), |r, c| match (r < n, c < n) {
        (true, false) => a[(r, c - n)],
        (false, true) => a[(c, r - n)].conj(),
        _ => Quaternion::ZERO,
    })
}

/// Singular values of a square matrix, descending.
pub fn singular_values(a: &Matrix) -> Result<Vec<f64>> {
    let n = a.ensure_square()?;
    let values = eigenvalues_hermitian(&dilation(a))?;
    Ok(values[..n].iter().map(|&s| s.max(0.0)).collect())
}

/// Largest singular value.
pub fn operator_norm(a: &Matrix) -> Result<f64> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

/// `|A|` and its partial isometry from one dilation eigendecomposition.
struct DilationParts {
    abs: Matrix,
    isometry: Matrix,
    /// Orthonormal basis of `Ker(A)^⊥`.
    corange: Vec<Vector>,
}

fn dilation_parts(a: &Matrix) -> Result<DilationParts> {
    let n = a.ensure_square()?;
    let eig = eig_hermitian(&dilation(a))?;
    let top = eig.values().first().copied().unwrap_or(0.0).max(0.0);
    let kernel_tol = CLAMP_TOL * top;
    let mut abs = Matrix::zeros(n, n, a.algebra());
    let mut isometry = Matrix::zeros(n, n, a.algebra());
    let mut corange = Vec::new();
    for (v, s) in eig.pairs() {
        if s <= 0.0 {
            continue;
        }
        let x = Vector::from_quaternions(a.algebra(), v.as_slice()[..n].to_vec());
        let y = Vector::from_quaternions(a.algebra(), v.as_slice()[n..].to_vec());
        // |x| = |y| = 1/√2 for σ > 0
        abs = &abs + &Matrix::outer(&y.scale(2.0 * s), &y);
        if s > kernel_tol {
            isometry = &isometry + &Matrix::outer(&x.scale(2.0), &y);
            corange.push(y.scale(std::f64::consts::SQRT_2));
        }
    }
    Ok(DilationParts {
        abs: abs.hermitian_part(),
        isometry,
        corange,
    })
}

/// `|A| = √(A*A)`.
pub fn abs_op(a: &Matrix) -> Result<Matrix> {
    Ok(dilation_parts(a)?.abs)
}

/// The unique positive square root of a positive Hermitian matrix.
pub fn sqrt_positive(b: &Matrix) -> Result<Matrix> {
    let eig = eig_hermitian(b)?;
    let scale = eig.values().iter().fold(0.0f64, |m, s| m.max(s.abs()));
    let min = eig.values().last().copied().unwrap_or(0.0);
    if min < -CLAMP_TOL * scale {
        return Err(LabError::NotPositive {
            min_eigenvalue: min,
        });
    }
    // rounding-level eigenvalues of either sign are kernel; √ would amplify them
    let floor = CLAMP_TOL * scale;
    Ok(eig
        .map_values(|s| if s <= floor { 0.0 } else { s.sqrt() })
        .hermitian_part())
}

/// `A = U |A|` with `U` a partial isometry vanishing on `Ker(A)`.
#[derive(Debug, Clone)]
pub struct PolarDecomposition {
    pub partial_isometry: Matrix,
    pub absolute: Matrix,
}

pub fn polar(a: &Matrix) -> Result<PolarDecomposition> {
    let parts = dilation_parts(a)?;
    Ok(PolarDecomposition {
        partial_isometry: parts.isometry,
        absolute: parts.abs,
    })
}

/// Polar factor together with an orthonormal basis of `Ker(A)^⊥`.
pub(crate) fn polar_with_corange(a: &Matrix) -> Result<(Matrix, Vec<Vector>)> {
    let parts = dilation_parts(a)?;
    Ok((parts.isometry, parts.corange))
}
