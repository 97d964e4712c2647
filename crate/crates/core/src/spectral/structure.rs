//! Anti-selfadjoint unitaries attached to a quaternionic operator and the
//! complex slices `H_{Jı} = {z | J z = z ı}` they determine.

use num_complex::Complex64;

use super::embed::{complex_buffer, embed, lift_vector};
use super::jacobi::jacobi_hermitian;
use super::polar_with_corange;
use crate::error::{LabError, Result};
use crate::linalg::{Matrix, OrthonormalBasis, Vector};
use crate::scalar::{Algebra, Quaternion};

/// Residual accepted for `J u = u ı` on a returned adapted basis.
pub const ADAPTED_TOL: f64 = 1e-9;

/// A unit `s` with `s⁻¹ i s = ı`.
///
/// `s = (1 - i ı)/|1 - i ı|` works unless `ı = -i`, where `s = j` does.
pub fn unit_rotation_to(imaginary: Quaternion) -> Quaternion {
    let s = Quaternion::ONE - Quaternion::I * imaginary;
    let n = s.norm();
    if n < 1e-8 {
        Quaternion::J
    } else {
        s / n
    }
}

/// An anti-selfadjoint unitary `J` with `A - A* = J |A - A*|` that commutes
/// with `A - A*` and `|A - A*|`.
///
/// On `Ker(A - A*)^⊥` this is the polar factor of `A - A*`; on the kernel it is
/// `Σ_k k i ⟨k|` over an orthonormal basis `k` of the kernel. For Hermitian `A`
/// this gives left multiplication by `i`.
pub fn make_j(a: &Matrix) -> Result<Matrix> {
    let n = a.ensure_square()?;
    if a.algebra() == Algebra::Real {
        return Err(LabError::WrongAlgebra {
            expected: Algebra::Quaternion,
            found: Algebra::Real,
        });
    }
    let d = a - &a.adjoint();
    let (u, corange) = polar_with_corange(&d)?;
    let rank = corange.len();
    let full = OrthonormalBasis::complete(corange, n, a.algebra())?;
    let mut j = u;
    for k in &full.vectors()[rank..] {
        j = &j + &Matrix::outer(&k.mul_right(Quaternion::I), k);
    }
    Ok(j.anti_hermitian_part())
}

/// Orthonormal basis `N` of the whole space with `J u = u ı` for every `u ∈ N`.
///
/// `J` must be an anti-selfadjoint unitary and `ı` a unit imaginary quaternion.
pub fn adapted_basis(j: &Matrix, imaginary: Quaternion) -> Result<OrthonormalBasis> {
    let n = j.ensure_square()?;
    if (imaginary.norm() - 1.0).abs() > 1e-9 || imaginary.re().abs() > 1e-9 {
        return Err(LabError::PreconditionViolation(format!(
            "{imaginary:?} is not a unit imaginary quaternion"
        )));
    }
    let deviation = (&j.adjoint() + j).norm_fro().max(j.unitary_defect());
    if deviation > 1e-8 {
        return Err(LabError::PreconditionViolation(format!(
            "J is not an anti-selfadjoint unitary (defect {deviation:e})"
        )));
    }
    let jq = j.clone().with_algebra(Algebra::Quaternion);
    // K = -i χ(J) is Hermitian with K² = I; its +1 eigenvectors lift into H_{Ji}
    let chi = embed(&jq)?;
    let minus_i = Complex64::new(0.0, -1.0);
    let k: Vec<Complex64> = complex_buffer(chi.image())
        .into_iter()
        .map(|z| minus_i * z)
        .collect();
    let out = jacobi_hermitian(k, 2 * n, true)?;
    let vectors = out.vectors.expect("requested");
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&x, &y| out.values[y].total_cmp(&out.values[x]));

    let s = unit_rotation_to(imaginary);
    let basis: Vec<Vector> = order[..n]
        .iter()
        .map(|&k| lift_vector(&vectors[k]).mul_right(s))
        .collect();
    let basis = OrthonormalBasis::from_orthonormal(basis);

    let residual = basis
        .vectors()
        .iter()
        .map(|u| (&jq.apply(u).expect("square") - &u.mul_right(imaginary)).norm())
        .fold(basis.orthonormality_defect(), f64::max);
    if residual > ADAPTED_TOL {
        return Err(LabError::ConvergenceFailure {
            sweeps: 0,
            off_diagonal: residual,
        });
    }
    Ok(basis)
}
