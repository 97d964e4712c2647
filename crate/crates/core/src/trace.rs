//! Basis traces, the real trace and the trace norm.
//!
//! Over R and C the trace `Σ_{x∈N} ⟨x|Ax⟩` does not depend on the orthonormal
//! basis `N`. Over H it does unless `A = A*`, but its real part never does and
//! is cyclic; that real part is the real trace.

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::linalg::{Matrix, OrthonormalBasis};
use crate::scalar::{Algebra, Quaternion, ScalarRepr};
use crate::spectral::{self, adapted_basis, make_j};

/// Absolute tolerance for trace identities.
pub const TRACE_TOL: f64 = 1e-9;

/// `tr_N(A) = Σ_{x∈N} ⟨x|Ax⟩`, summed in the order of `N`.
pub fn trace_n(a: &Matrix, basis: &OrthonormalBasis) -> Result<Quaternion> {
    let n = a.ensure_square()?;
    if basis.dim() != n || basis.vectors().iter().any(|v| v.len() != n) {
        return Err(LabError::IncompleteBasis {
            expected: n,
            found: basis.dim(),
        });
    }
    let mut sum = Quaternion::ZERO;
    for x in basis.vectors() {
        sum += x.inner(&a.apply(x)?)?;
    }
    Ok(sum)
}

/// `tr^R(A) = Re tr_N(A)` for any `N`; read off the standard basis.
pub fn real_trace(a: &Matrix) -> Result<f64> {
    a.ensure_square()?;
    Ok(a.diagonal_sum().re())
}

/// `|A|_1`, the sum of singular values.
pub fn trace_norm(a: &Matrix) -> Result<f64> {
    Ok(spectral::singular_values(a)?.iter().sum())
}

/// `Σ_{x∈N} |⟨x|Ax⟩|`.
pub fn absolute_diagonal_sum(a: &Matrix, basis: &OrthonormalBasis) -> Result<f64> {
    a.ensure_square()?;
    let mut sum = 0.0;
    for x in basis.vectors() {
        sum += x.inner(&a.apply(x)?)?.norm();
    }
    Ok(sum)
}

/// Slack of each trace-norm inequality; a negative slack is a violation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormInequalityReport {
    /// `|A|_1 |B| - |AB|_1`
    pub product_right: f64,
    /// `|A|_1 |B| - |BA|_1`
    pub product_left: f64,
    /// `||A|_1 - |A*|_1|`, ideally zero
    pub adjoint_gap: f64,
    /// `|A|_1 - |A|`
    pub operator_below_trace: f64,
}

impl NormInequalityReport {
    /// Largest violation across the four statements, `0` if none.
    pub fn worst_violation(&self) -> f64 {
        [
            -self.product_right,
            -self.product_left,
            self.adjoint_gap,
            -self.operator_below_trace,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn holds(&self, slack: f64) -> bool {
        self.worst_violation() <= slack
    }
}

pub fn check_norm_inequalities(a: &Matrix, b: &Matrix) -> Result<NormInequalityReport> {
    let n = a.ensure_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(LabError::DimensionMismatch {
            expected: n,
            found: b.rows(),
        });
    }
    let a1 = trace_norm(a)?;
    let b_op = spectral::operator_norm(b)?;
    Ok(NormInequalityReport {
        product_right: a1 * b_op - trace_norm(&a.checked_mul(b)?)?,
        product_left: a1 * b_op - trace_norm(&b.checked_mul(a)?)?,
        adjoint_gap: (a1 - trace_norm(&a.adjoint())?).abs(),
        operator_below_trace: a1 - spectral::operator_norm(a)?,
    })
}

/// `|Re tr(AB) - Re tr(BA)|`.
pub fn real_trace_cyclic_gap(a: &Matrix, b: &Matrix) -> Result<f64> {
    Ok((real_trace(&a.checked_mul(b)?)? - real_trace(&b.checked_mul(a)?)?).abs())
}

/// `|tr(AB) - tr(BA)|` in the standard basis; nonzero over H in general.
pub fn full_trace_cyclic_gap(a: &Matrix, b: &Matrix) -> Result<f64> {
    Ok((a.checked_mul(b)?.diagonal_sum() - b.checked_mul(a)?.diagonal_sum()).norm())
}

/// Both sides of `tr_N(A) = tr^R(A) + (ı/2) |A - A*|_1` on a basis `N ⊂ H_{Jı}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceFormulaReport {
    pub imaginary: [f64; 4],
    pub basis_trace: [f64; 4],
    pub predicted: [f64; 4],
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn quaternionic_trace_formula_check(
    a: &Matrix,
    imaginary: Quaternion,
) -> Result<TraceFormulaReport> {
    a.ensure_algebra(Algebra::Quaternion)?;
    let j = make_j(a)?;
    quaternionic_trace_formula_check_with(a, &j, imaginary)
}

/// As [`quaternionic_trace_formula_check`] with a caller-supplied `J`, which must
/// agree with `make_j(a)` on `Ker(A - A*)^⊥` for the identity to be expected.
pub fn quaternionic_trace_formula_check_with(
    a: &Matrix,
    j: &Matrix,
    imaginary: Quaternion,
) -> Result<TraceFormulaReport> {
    a.ensure_algebra(Algebra::Quaternion)?;
    let basis = adapted_basis(j, imaginary)?;
    let lhs = trace_n(a, &basis)?;
    let skew = trace_norm(&(a - &a.adjoint()))?;
    let rhs = Quaternion::real(real_trace(a)?) + imaginary * (0.5 * skew);
    let residual = (lhs - rhs).norm();
    let tolerance = 1e-8 * (1.0 + trace_norm(a)?);
    Ok(TraceFormulaReport {
        imaginary: imaginary.components(),
        basis_trace: lhs.components(),
        predicted: rhs.components(),
        residual,
        tolerance,
        pass: residual <= tolerance,
    })
}

/// The real `4n x 4n` matrix of `A` on `H_R` in the basis `{e_r, e_r i, e_r j, e_r k}`
/// with scalar product `Re⟨·|·⟩`.
pub fn realify(a: &Matrix) -> Matrix {
    let (rows, cols) = (a.rows(), a.cols());
    let units = Algebra::Quaternion.units();
    Matrix::from_fn(4 * rows, 4 * cols, Algebra::Real, |r, c| {
        let (row, alpha) = (r / 4, r % 4);
        let (col, beta) = (c / 4, c % 4);
        Quaternion::real((units[alpha].conj() * a[(row, col)] * units[beta]).re())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealificationReport {
    pub trace_norm: f64,
    pub realified_trace_norm: f64,
    pub real_trace: f64,
    pub realified_trace: f64,
}

impl RealificationReport {
    /// `max(| |A|_1 - |A_R|_1 / 4 |, | tr^R(A) - tr(A_R) / 4 |)`.
    pub fn residual(&self) -> f64 {
        (self.trace_norm - 0.25 * self.realified_trace_norm)
            .abs()
            .max((self.real_trace - 0.25 * self.realified_trace).abs())
    }
}

pub fn realification_check(a: &Matrix) -> Result<RealificationReport> {
    a.ensure_algebra(Algebra::Quaternion)?;
    a.ensure_square()?;
    let r = realify(a);
    Ok(RealificationReport {
        trace_norm: trace_norm(a)?,
        realified_trace_norm: trace_norm(&r)?,
        real_trace: real_trace(a)?,
        realified_trace: r.diagonal_sum().re(),
    })
}

/// Trace data of one operator against one basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub basis: String,
    pub trace: ScalarRepr,
    pub real_trace: f64,
    pub trace_norm: f64,
}

impl TraceReport {
    pub fn new(a: &Matrix, basis: &OrthonormalBasis, basis_id: impl Into<String>) -> Result<Self> {
        let trace = trace_n(a, basis)?;
        Ok(TraceReport {
            basis: basis_id.into(),
            trace: ScalarRepr::encode(trace, a.algebra().join(basis.algebra())),
            real_trace: trace.re(),
            trace_norm: trace_norm(a)?,
        })
    }
}

/// Operators behind the classic failures of naive trace calculus.
pub mod witness {
    use super::*;

    /// Left multiplication by `j` on `H¹`.
    pub fn left_j() -> Matrix {
        Matrix::scalar_diagonal(1, Quaternion::J)
    }

    /// `diag(i, 0)` and `diag(j, 0)` on `H²`: `tr(AB) = k` while `tr(BA) = -k`.
    pub fn noncyclic_pair() -> (Matrix, Matrix) {
        let a = Matrix::diagonal(&[Quaternion::I, Quaternion::ZERO], Algebra::Quaternion);
        let b = Matrix::diagonal(&[Quaternion::J, Quaternion::ZERO], Algebra::Quaternion);
        (a, b)
    }

    /// `m` copies of `[[0, -1], [1, 0]]` on `R^{2m}`: `A* = -A`, `AA = -I`, `|A| = I`.
    pub fn antisymmetric_blocks(m: usize) -> Matrix {
        let block = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).expect("2x2");
        Matrix::block_diagonal(&vec![block; m])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{is_positive, projector_onto, LabRng, Vector};
    use crate::spectral::eig_hermitian;
    use proptest::prelude::*;

    /// `Σ √λ(A*A)`, independent of the dilation route used in the library.
    fn trace_norm_oracle(a: &Matrix) -> f64 {
        let g = (&a.adjoint() * a).hermitian_part();
        spectral::eigenvalues_hermitian(&g)
            .unwrap()
            .iter()
            .map(|&s| s.max(0.0).sqrt())
            .sum()
    }

    #[test]
    fn identity_traces() {
        let mut rng = LabRng::seed_from(51);
        for alg in Algebra::ALL {
            let id = Matrix::identity(4, alg);
            let basis = rng.basis(4, alg);
            assert!(trace_n(&id, &basis)
                .unwrap()
                .approx_eq(Quaternion::real(4.0), 1e-12));
            assert_eq!(real_trace(&id).unwrap(), 4.0);
            assert!((trace_norm(&id).unwrap() - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn left_j_trace_depends_on_basis() {
        let a = witness::left_j();
        let one = OrthonormalBasis::standard(1, Algebra::Quaternion);
        let i = one.right_scaled(Quaternion::I);
        assert_eq!(trace_n(&a, &one).unwrap(), Quaternion::J);
        assert_eq!(trace_n(&a, &i).unwrap(), -Quaternion::J);
        assert_eq!(real_trace(&a).unwrap(), 0.0);
    }

    #[test]
    fn incomplete_basis_is_rejected() {
        let a = Matrix::identity(3, Algebra::Real);
        let short = OrthonormalBasis::standard(2, Algebra::Real);
        assert!(matches!(
            trace_n(&a, &short),
            Err(LabError::IncompleteBasis { .. })
        ));
    }

    #[test]
    fn hermitian_quaternionic_trace_is_basis_free() {
        let mut rng = LabRng::seed_from(52);
        let a = rng.hermitian(4, Algebra::Quaternion);
        let reference = trace_n(&a, &OrthonormalBasis::standard(4, Algebra::Quaternion)).unwrap();
        for _ in 0..20 {
            let t = trace_n(&a, &rng.basis(4, Algebra::Quaternion)).unwrap();
            assert!(t.approx_eq(reference, 1e-9));
        }
        // a generic non-Hermitian matrix moves
        let b = rng.matrix(4, 4, Algebra::Quaternion);
        let traces: Vec<Quaternion> = (0..20)
            .map(|_| trace_n(&b, &rng.basis(4, Algebra::Quaternion)).unwrap())
            .collect();
        let spread = traces
            .iter()
            .map(|t| (*t - traces[0]).norm())
            .fold(0.0, f64::max);
        assert!(spread > 1e-3);
        for t in &traces {
            assert!((t.re() - real_trace(&b).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn trace_norm_examples() {
        let mut rng = LabRng::seed_from(53);
        for alg in Algebra::ALL {
            let vs: Vec<Vector> = (0..2).map(|_| rng.vector(5, alg)).collect();
            let p = projector_onto(&vs).unwrap().into_matrix();
            assert!((trace_norm(&p).unwrap() - 2.0).abs() < 1e-12);
            let a = rng.matrix(5, 5, alg);
            let (u, v) = (rng.unitary(5, alg), rng.unitary(5, alg));
            let t = trace_norm(&a).unwrap();
            assert!((trace_norm(&(&(&u * &a) * &v)).unwrap() - t).abs() < 1e-9);
            assert!((t - trace_norm_oracle(&a)).abs() < 1e-9);
            // Σ_u ⟨u| |A| u⟩ over two random bases
            let abs = spectral::abs_op(&a).unwrap();
            for _ in 0..2 {
                let s = trace_n(&abs, &rng.basis(5, alg)).unwrap();
                assert!((s.re() - t).abs() < 1e-9 && s.im().norm() < 1e-9);
            }
        }
        assert!((trace_norm(&witness::antisymmetric_blocks(1)).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn norm_inequality_examples() {
        let id = Matrix::identity(3, Algebra::Complex);
        let r = check_norm_inequalities(&id, &id).unwrap();
        assert!(r.product_right.abs() < 1e-12 && r.holds(1e-12));
        let mut rng = LabRng::seed_from(54);
        let p = projector_onto(&[rng.vector(3, Algebra::Quaternion)])
            .unwrap()
            .into_matrix();
        let u = rng.unitary(3, Algebra::Quaternion);
        assert!(trace_norm(&(&p * &u)).unwrap() <= 1.0 + 1e-12);
        assert!(check_norm_inequalities(&p, &u).unwrap().holds(1e-9));
        assert!(check_norm_inequalities(&p, &Matrix::identity(2, Algebra::Real)).is_err());
    }

    #[test]
    fn noncyclic_pair() {
        let (a, b) = witness::noncyclic_pair();
        assert_eq!((&a * &b).diagonal_sum(), Quaternion::K);
        assert_eq!((&b * &a).diagonal_sum(), -Quaternion::K);
        assert!((full_trace_cyclic_gap(&a, &b).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(real_trace_cyclic_gap(&a, &b).unwrap(), 0.0);
        let id = Matrix::identity(2, Algebra::Quaternion);
        assert_eq!(real_trace_cyclic_gap(&a, &id).unwrap(), 0.0);
    }

    #[test]
    fn trace_formula_examples() {
        // A = j on H¹ with ı = i: J = j, N = {(i + j)/√2}, tr_N(A) = i
        let a = witness::left_j();
        let r = quaternionic_trace_formula_check(&a, Quaternion::I).unwrap();
        assert!(r.pass);
        assert!(Quaternion::new(
            r.basis_trace[0],
            r.basis_trace[1],
            r.basis_trace[2],
            r.basis_trace[3]
        )
        .approx_eq(Quaternion::I, 1e-12));
        let u = Vector::from_scalars(&[Quaternion::new(0.0, 1.0, 1.0, 0.0) / 2f64.sqrt()]);
        assert!(u
            .inner(&a.apply(&u).unwrap())
            .unwrap()
            .approx_eq(Quaternion::I, 1e-15));

        let mut rng = LabRng::seed_from(55);
        let h = rng.hermitian(3, Algebra::Quaternion);
        let r = quaternionic_trace_formula_check(&h, rng.unit_imaginary()).unwrap();
        assert!(r.pass && r.basis_trace[1..].iter().all(|x| x.abs() < 1e-9));
        for n in [2, 3, 5] {
            let a = rng.matrix(n, n, Algebra::Quaternion);
            for t in [Quaternion::I, Quaternion::J, rng.unit_imaginary()] {
                let r = quaternionic_trace_formula_check(&a, t).unwrap();
                assert!(r.pass, "n={n} residual {}", r.residual);
            }
        }
    }

    #[test]
    fn trace_formula_survives_change_of_j_on_kernel() {
        // A - A* of rank 2 in H⁴; J' differs from J only on the kernel
        let mut rng = LabRng::seed_from(56);
        let alg = Algebra::Quaternion;
        let x = rng.vector(4, alg);
        let y = rng.vector(4, alg);
        let a = &rng.hermitian(4, alg) + &Matrix::outer(&x, &y);
        let d = &a - &a.adjoint();
        let (u, corange) = spectral::polar_with_corange(&d).unwrap();
        assert_eq!(corange.len(), 2);
        let full = OrthonormalBasis::complete(corange, 4, alg).unwrap();
        let mut j2 = u;
        for k in &full.vectors()[2..] {
            let t = rng.unit_imaginary();
            j2 = &j2 + &Matrix::outer(&k.mul_right(t), k);
        }
        let j1 = make_j(&a).unwrap();
        assert!(j1.distance(&j2) > 1e-3);
        for t in [Quaternion::I, Quaternion::K, rng.unit_imaginary()] {
            let r1 = quaternionic_trace_formula_check_with(&a, &j1, t).unwrap();
            let r2 =
                quaternionic_trace_formula_check_with(&a, &j2.anti_hermitian_part(), t).unwrap();
            assert!(r1.pass && r2.pass);
        }
    }

    #[test]
    fn realification_examples() {
        let id = Matrix::identity(1, Algebra::Quaternion);
        let r = realification_check(&id).unwrap();
        assert!((r.trace_norm - 1.0).abs() < 1e-14 && (r.realified_trace_norm - 4.0).abs() < 1e-13);
        let rj = realify(&witness::left_j());
        assert!(!rj.is_hermitian(0.0) && (&rj + &rj.adjoint()).norm_fro() == 0.0);
        assert_eq!(rj.diagonal_sum().re(), 0.0);
        let mut rng = LabRng::seed_from(57);
        for n in 1..=4 {
            let a = rng.matrix(n, n, Algebra::Quaternion);
            let r = realification_check(&a).unwrap();
            assert!(r.residual() < 1e-9);
            assert!((0.25 * trace_norm_oracle(&realify(&a)) - r.trace_norm).abs() < 1e-9);
            // realify is a *-homomorphism
            let b = rng.matrix(n, n, Algebra::Quaternion);
            assert!(realify(&(&a * &b)).approx_eq(&(&realify(&a) * &realify(&b)), 1e-12));
            assert!(realify(&a.adjoint()).approx_eq(&realify(&a).adjoint(), 0.0));
        }
    }

    #[test]
    fn antisymmetric_witness_defeats_absolute_sums() {
        let mut rng = LabRng::seed_from(58);
        for m in 1..=4 {
            let a = witness::antisymmetric_blocks(m);
            assert!((&a * &a).approx_eq(&Matrix::identity(2 * m, Algebra::Real).scale(-1.0), 0.0));
            assert!(spectral::abs_op(&a)
                .unwrap()
                .approx_eq(&Matrix::identity(2 * m, Algebra::Real), 1e-13));
            assert!((trace_norm(&a).unwrap() - 2.0 * m as f64).abs() < 1e-12);
            for _ in 0..5 {
                assert!(
                    absolute_diagonal_sum(&a, &rng.basis(2 * m, Algebra::Real)).unwrap() < 1e-12
                );
            }
        }
    }

    #[test]
    fn report_json() {
        let r = TraceReport::new(
            &witness::left_j(),
            &OrthonormalBasis::standard(1, Algebra::Quaternion),
            "standard",
        )
        .unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(
            r#"{"basis":"standard","trace":[0.0,0.0,1.0,0.0],"real_trace":0.0,"trace_norm":"#
        ));
        assert!((r.trace_norm - 1.0).abs() < 1e-14);
        assert_eq!(serde_json::from_str::<TraceReport>(&s).unwrap(), r);
        assert!(r.trace.decode().norm() <= r.trace_norm + 1e-12);
    }

    fn algebra() -> impl Strategy<Value = Algebra> {
        prop::sample::select(Algebra::ALL.to_vec())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn trace_is_basis_free_over_r_and_c(seed in any::<u64>(), n in 1usize..6, complex in any::<bool>()) {
            let alg = if complex { Algebra::Complex } else { Algebra::Real };
            let mut rng = LabRng::seed_from(seed);
            let a = rng.matrix(n, n, alg);
            let t1 = trace_n(&a, &rng.basis(n, alg)).unwrap();
            let t2 = trace_n(&a, &rng.basis(n, alg)).unwrap();
            prop_assert!(t1.approx_eq(t2, 1e-9));
        }

        #[test]
        fn real_trace_is_basis_free_and_reorderable(seed in any::<u64>(), n in 1usize..6, alg in algebra()) {
            let mut rng = LabRng::seed_from(seed);
            let a = rng.matrix(n, n, alg);
            let basis = rng.basis(n, alg);
            let perm = rng.permutation(n);
            let t = trace_n(&a, &basis).unwrap();
            prop_assert!((t.re() - real_trace(&a).unwrap()).abs() < 1e-9);
            prop_assert!(trace_n(&a, &basis.permuted(&perm)).unwrap().approx_eq(t, 1e-12));
        }

        #[test]
        fn real_trace_is_linear_and_star_invariant(seed in any::<u64>(), n in 1usize..6, alg in algebra()) {
            let mut rng = LabRng::seed_from(seed);
            let (a, b) = (rng.matrix(n, n, alg), rng.matrix(n, n, alg));
            let (x, y) = (rng.gaussian(), rng.gaussian());
            let lhs = real_trace(&(&a.scale(x) + &b.scale(y))).unwrap();
            let rhs = x * real_trace(&a).unwrap() + y * real_trace(&b).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()));
            prop_assert!((real_trace(&a.adjoint()).unwrap() - real_trace(&a).unwrap()).abs() < 1e-10);
        }

        #[test]
        fn real_trace_is_positive_and_monotone(seed in any::<u64>(), n in 1usize..6, alg in algebra()) {
            let mut rng = LabRng::seed_from(seed);
            let c = rng.matrix(n, n, alg);
            let p = &c.adjoint() * &c;
            prop_assert!(is_positive(&p).unwrap());
            prop_assert!(real_trace(&p).unwrap() >= -1e-10);
            let b = rng.hermitian(n, alg);
            let a = &b + &p;
            prop_assert!(real_trace(&a).unwrap() >= real_trace(&b).unwrap() - 1e-10);
        }

        #[test]
        fn real_trace_is_cyclic(seed in any::<u64>(), n in 1usize..6, alg in algebra()) {
            let mut rng = LabRng::seed_from(seed);
            let (a, b) = (rng.matrix(n, n, alg), rng.matrix(n, n, alg));
            let bound = trace_norm(&a).unwrap() * spectral::operator_norm(&b).unwrap();
            prop_assert!(real_trace_cyclic_gap(&a, &b).unwrap() <= 1e-9 * bound.max(1.0));
        }

        #[test]
        fn eigenbasis_makes_trace_cyclic(seed in any::<u64>(), n in 1usize..6, alg in algebra()) {
            let mut rng = LabRng::seed_from(seed);
            let a = rng.hermitian(n, alg);
            let basis = eig_hermitian(&a).unwrap().basis().clone();
            let b = rng.matrix(n, n, alg);
            let ab = trace_n(&(&a * &b), &basis).unwrap();
            let ba = trace_n(&(&b * &a), &basis).unwrap();
            prop_assert!(ab.approx_eq(ba, 1e-9));
            let h = rng.hermitian(n, alg);
            prop_assert!(trace_n(&(&a * &h), &basis).unwrap().im().norm() < 1e-9);
        }

        #[test]
        fn projector_sandwich(seed in any::<u64>(), n in 2usize..6, alg in algebra()) {
            let mut rng = LabRng::seed_from(seed);
            let k = rng.int_in(1, n - 1);
            let vs: Vec<Vector> = (0..k).map(|_| rng.vector(n, alg)).collect();
            let p = projector_onto(&vs).unwrap().into_matrix();
            let a = rng.hermitian(n, alg);
            let pap = &(&p * &a) * &p;
            prop_assert!(pap.is_hermitian(1e-12));
            let t = trace_n(&pap, &rng.basis(n, alg)).unwrap();
            let r = real_trace(&(&p * &a)).unwrap();
            prop_assert!((r - real_trace(&pap).unwrap()).abs() < 1e-9);
            prop_assert!((r - t.re()).abs() < 1e-9 && t.im().norm() < 1e-9);
        }

        #[test]
        fn absolute_sum_is_bounded_over_c_and_h(seed in any::<u64>(), n in 1usize..6, quaternionic in any::<bool>()) {
            let alg = if quaternionic { Algebra::Quaternion } else { Algebra::Complex };
            let mut rng = LabRng::seed_from(seed);
            let a = rng.matrix(n, n, alg);
            let bound = trace_norm(&a).unwrap();
            prop_assert!(absolute_diagonal_sum(&a, &rng.basis(n, alg)).unwrap() <= bound + 1e-9);
        }

        #[test]
        fn norm_inequalities(seed in any::<u64>(), n in 1usize..6, alg in algebra()) {
            let mut rng = LabRng::seed_from(seed);
            let (a, b) = (rng.matrix(n, n, alg), rng.matrix(n, n, alg));
            prop_assert!(check_norm_inequalities(&a, &b).unwrap().holds(1e-9));
        }

        #[test]
        fn adapted_trace_formula(seed in any::<u64>(), n in 1usize..6) {
            // n = 1 reduces to q = re q + ı |im q| on the adapted vector
            let mut rng = LabRng::seed_from(seed);
            let a = rng.matrix(n, n, Algebra::Quaternion);
            let r = quaternionic_trace_formula_check(&a, rng.unit_imaginary()).unwrap();
            prop_assert!(r.pass, "residual {:e} > {:e}", r.residual, r.tolerance);
            // imaginary length against an independent |A - A*|_1 / 2 from √eig(D*D)
            let skew = &a - &a.adjoint();
            let sv: f64 = trace_norm_oracle(&skew);
            let im = Quaternion::new(0.0, r.basis_trace[1], r.basis_trace[2], r.basis_trace[3]).norm();
            prop_assert!((im - 0.5 * sv).abs() <= r.tolerance);
        }
    }
}
