//! Cyclic Jacobi sweeps for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq = r e^{iφ}` with
//! `D = diag(1, e^{-iφ})`, then applies the real rotation that annihilates
//! the resulting real symmetric 2x2 block. Real symmetric input stays real.

use num_complex::Complex64;

use crate::error::{LabError, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (unsorted) and, if requested, eigenvectors stored column-major:
/// `vectors[k]` is the k-th eigenvector.
pub(crate) struct JacobiOutput {
    pub values: Vec<f64>,
    pub vectors: Option<Vec<Vec<Complex64>>>,
}

/// `a` is row-major `n x n` and must be Hermitian; only the values it holds
/// are used, the matrix is not re-symmetrized here.
pub(crate) fn jacobi_hermitian(
    mut a: Vec<Complex64>,
    n: usize,
    want_vectors: bool,
) -> Result<JacobiOutput> {
    debug_assert_eq!(a.len(), n * n);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut w: Option<Vec<Complex64>> = want_vectors.then(|| {
        let mut w = vec![zero; n * n];
        for k in 0..n {
            w[k * n + k] = one;
        }
        w
    });
    for k in 0..n {
        a[k * n + k].im = 0.0;
    }

    let frob: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = 1e-15 * frob;
    let off = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += a[p * n + q].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut prev_off = f64::INFINITY;
    loop {
        let off_norm = off(&a);
        // stop at the target, or once rounding stalls progress near it
        if off_norm <= threshold
            || frob == 0.0
            || (off_norm >= prev_off && off_norm <= 1e-12 * frob)
        {
            break;
        }
        prev_off = off_norm;
        if sweeps == MAX_SWEEPS {
            return Err(LabError::ConvergenceFailure {
                sweeps,
                off_diagonal: off_norm,
            });
        }
        sweeps += 1;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r <= 1e-300 || r < 1e-18 * frob {
                    continue;
                }
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // V = D R with R = [[c, s], [-s, c]]
                let em = phase.conj();
                let v_pp = Complex64::new(c, 0.0);
                let v_pq = Complex64::new(s, 0.0);
                let v_qp = -em * s;
                let v_qq = em * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * v_pp + akq * v_qp;
                    a[k * n + q] = akp * v_pq + akq * v_qq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = v_pp.conj() * apk + v_qp.conj() * aqk;
                    a[q * n + k] = v_pq.conj() * apk + v_qq.conj() * aqk;
                }
                a[p * n + q] = zero;
                a[q * n + p] = zero;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;

                if let Some(w) = w.as_mut() {
                    for k in 0..n {
                        let wkp = w[k * n + p];
                        let wkq = w[k * n + q];
                        w[k * n + p] = wkp * v_pp + wkq * v_qp;
                        w[k * n + q] = wkp * v_pq + wkq * v_qq;
                    }
                }
            }
        }
    }

    let values = (0..n).map(|k| a[k * n + k].re).collect();
    let vectors = w.map(|w| {
        (0..n)
            .map(|col| (0..n).map(|row| w[row * n + col]).collect())
            .collect()
    });
    Ok(JacobiOutput { values, vectors })
}
