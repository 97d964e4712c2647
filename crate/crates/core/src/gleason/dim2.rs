//! A σ-additive probability measure on the projectors of a two-dimensional
//! space that no density operator induces.
//!
//! In dimension two every rank-one projector has exactly one orthogonal
//! partner, whose Bloch vector is antipodal, so any odd function of the Bloch
//! vector is additive. `μ(P) = (1 + n_z³)/2` is such a function and is not
//! affine in `P`, while every `tr^R(P T)` is.

use serde::{Deserialize, Serialize};

use super::{reconstruct_state, LatticeMeasure};
use crate::linalg::{LabRng, Matrix, Projector, Vector};
use crate::scalar::{Algebra, Quaternion};
use crate::spectral::eig_hermitian;

const PROBES: usize = 200;
const PAIRS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dim2Certificate {
    pub algebra: Algebra,
    /// `max |μ(P) + μ(I - P) - 1|` over random rank-one `P`.
    pub max_additivity_error: f64,
    pub additivity_pairs: usize,
    pub identity_value: f64,
    /// Least-squares coefficients of the best affine trace form.
    pub fit_coefficients: Vec<f64>,
    /// `max |μ(P) - tr^R(P T_fit)|` over the probes.
    pub fit_max_error: f64,
    pub fit_probes: usize,
    /// Error returned when reconstructing a state from the measure.
    pub reconstruction_error: Option<String>,
}

/// The measure over `C²` with its certificate.
pub fn dim2_counterexample() -> (LatticeMeasure, Dim2Certificate) {
    dim2_counterexample_in(Algebra::Complex)
}

pub fn dim2_counterexample_in(algebra: Algebra) -> (LatticeMeasure, Dim2Certificate) {
    let mu = LatticeMeasure::from_oracle(2, algebra, |p: &Projector| match p.rank() {
        0 => 0.0,
        1 => {
            let nz = 2.0 * p.matrix()[(0, 0)].re() - 1.0;
            0.5 * (1.0 + nz * nz * nz)
        }
        _ => 1.0,
    });
    let mut rng = LabRng::seed_from(0xB10C);

    let mut max_additivity_error: f64 = 0.0;
    for _ in 0..PAIRS {
        let p = Projector::from_orthonormal(&[rng.unit_vector(2, algebra)], 2, algebra);
        max_additivity_error =
            max_additivity_error.max((mu.evaluate(&p) + mu.evaluate(&p.complement()) - 1.0).abs());
    }
    let identity_value = mu.evaluate(&Projector::identity(2, algebra));

    // poles, the equator and random points of the Bloch sphere
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut probes = vec![Vector::unit(2, 0, algebra), Vector::unit(2, 1, algebra)];
    for &q in algebra.units() {
        probes.push(Vector::from_quaternions(
            algebra,
            vec![Quaternion::real(h), q.scale(h)],
        ));
    }
    while probes.len() < PROBES {
        probes.push(rng.unit_vector(2, algebra));
    }
    let features: Vec<Vec<f64>> = probes.iter().map(|x| bloch_features(x, algebra)).collect();
    let values: Vec<f64> = probes
        .iter()
        .map(|x| {
            mu.evaluate(&Projector::from_orthonormal(
                std::slice::from_ref(x),
                2,
                algebra,
            ))
        })
        .collect();
    let fit_coefficients = least_squares(&features, &values);
    let fit_max_error = features
        .iter()
        .zip(&values)
        .map(|(f, v)| (dot(f, &fit_coefficients) - v).abs())
        .fold(0.0, f64::max);

    let reconstruction_error = reconstruct_state(&mu.frame_function(), 2, algebra)
        .err()
        .map(|e| e.to_string());

    let certificate = Dim2Certificate {
        algebra,
        max_additivity_error,
        additivity_pairs: PAIRS,
        identity_value,
        fit_coefficients,
        fit_max_error,
        fit_probes: probes.len(),
        reconstruction_error,
    };
    (mu, certificate)
}

/// `(1, P₀₀ - P₁₁, components of 2 P₀₁)` for `P = x⟨x|`; `tr^R(P T)` is affine in these.
fn bloch_features(x: &Vector, algebra: Algebra) -> Vec<f64> {
    let p01 = x[0] * x[1].conj();
    let mut f = vec![1.0, x[0].norm_sqr() - x[1].norm_sqr()];
    f.extend(
        p01.components()[..algebra.real_dim()]
            .iter()
            .map(|c| 2.0 * c),
    );
    f
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimize `|X c - y|` through the normal equations, solved spectrally.
fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let d = rows[0].len();
    let gram = Matrix::from_fn(d, d, Algebra::Real, |r, c| {
        Quaternion::real(rows.iter().map(|x| x[r] * x[c]).sum())
    });
    let rhs: Vec<f64> = (0..d)
        .map(|r| rows.iter().zip(y).map(|(x, v)| x[r] * v).sum())
        .collect();
    let eig = eig_hermitian(&gram).expect("Gram matrices are symmetric");
    let mut c = vec![0.0; d];
    for (u, s) in eig.pairs() {
        let u: Vec<f64> = u.iter().map(|q| q.a).collect();
        let w = dot(&u, &rhs) / s;
        c.iter_mut().zip(&u).for_each(|(ci, ui)| *ci += w * ui);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::LabError;
    use crate::gleason::reconstruct_state;

    #[test]
    fn pole_and_partner_values() {
        let (mu, _) = dim2_counterexample();
        let e1 = Projector::from_orthonormal(
            &[Vector::unit(2, 0, Algebra::Complex)],
            2,
            Algebra::Complex,
        );
        assert_eq!(mu.evaluate(&e1), 1.0);
        assert_eq!(mu.evaluate(&e1.complement()), 0.0);
        let mut rng = LabRng::seed_from(81);
        for _ in 0..100 {
            let p = Projector::from_orthonormal(
                &[rng.unit_vector(2, Algebra::Complex)],
                2,
                Algebra::Complex,
            );
            assert!((mu.evaluate(&p) + mu.evaluate(&p.complement()) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn certificate_in_every_algebra() {
        for alg in Algebra::ALL {
            let (mu, cert) = dim2_counterexample_in(alg);
            assert!(cert.max_additivity_error < 1e-12);
            assert_eq!(cert.identity_value, 1.0);
            assert!(cert.fit_max_error > 0.05, "{alg}: {}", cert.fit_max_error);
            assert!(cert.reconstruction_error.is_some());
            let err = reconstruct_state(&mu.frame_function(), 2, alg).unwrap_err();
            assert!(matches!(err, LabError::NotAFrameFunction(_)));
        }
    }

    #[test]
    fn fit_matches_analytic_projection() {
        // on the uniform sphere the L2 projection of z³ onto z is 3z/5, so the
        // best fit is close to 1/2 + 3 n_z/10 and misses the poles by ~0.2
        let (_, cert) = dim2_counterexample();
        assert!((cert.fit_coefficients[0] - 0.5).abs() < 0.05);
        assert!((cert.fit_coefficients[1] - 0.3).abs() < 0.05);
        assert!((cert.fit_max_error - 0.2).abs() < 0.05);
    }

    #[test]
    fn least_squares_recovers_affine_data() {
        let rows: Vec<Vec<f64>> = (0..10)
            .map(|k| vec![1.0, k as f64, (k * k) as f64 * 0.1])
            .collect();
        let y: Vec<f64> = rows.iter().map(|r| 2.0 - 0.5 * r[1] + 3.0 * r[2]).collect();
        let c = least_squares(&rows, &y);
        for (a, b) in c.iter().zip([2.0, -0.5, 3.0]) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}
