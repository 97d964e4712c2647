//! Seeded instance generation.
//!
//! The generator is SplitMix64 (64-bit state, Steele/Lea/Flood 2014) and
//! Gaussian draws come from `rand_distr::StandardNormal`. Every scalar
//! component of a random vector or matrix is an independent standard normal.

use rand::{Rng, RngCore, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::SplitMix64;

use super::basis::{orthonormalize, OrthonormalBasis};
use super::{Matrix, Vector};
use crate::scalar::{Algebra, Quaternion};

#[derive(Debug, Clone)]
pub struct LabRng(SplitMix64);

impl LabRng {
    pub fn seed_from(seed: u64) -> Self {
        LabRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn gaussian(&mut self) -> f64 {
        self.0.sample(StandardNormal)
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.0.random()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: usize, hi: usize) -> usize {
        self.0.random_range(lo..=hi)
    }

    pub fn scalar(&mut self, algebra: Algebra) -> Quaternion {
        let mut c = [0.0; 4];
        for x in c.iter_mut().take(algebra.real_dim()) {
            *x = self.gaussian();
        }
        Quaternion::new(c[0], c[1], c[2], c[3])
    }

    /// Uniformly distributed unit scalar (a sign over R, a phase over C and H).
    pub fn unit_scalar(&mut self, algebra: Algebra) -> Quaternion {
        loop {
            let q = self.scalar(algebra);
            let n = q.norm();
            if n > 1e-6 {
                return q / n;
            }
        }
    }

    /// Uniformly distributed unit imaginary quaternion.
    pub fn unit_imaginary(&mut self) -> Quaternion {
        loop {
            let q = Quaternion::new(0.0, self.gaussian(), self.gaussian(), self.gaussian());
            let n = q.norm();
            if n > 1e-6 {
                return q / n;
            }
        }
    }

    pub fn vector(&mut self, n: usize, algebra: Algebra) -> Vector {
        Vector::from_quaternions(algebra, (0..n).map(|_| self.scalar(algebra)).collect())
    }

    pub fn unit_vector(&mut self, n: usize, algebra: Algebra) -> Vector {
        loop {
            if let Some(v) = self.vector(n, algebra).normalized() {
                return v;
            }
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, algebra: Algebra) -> Matrix {
        Matrix::from_fn(rows, cols, algebra, |_, _| self.scalar(algebra))
    }

    /// `(G + G*) / 2` for a Gaussian `G`.
    pub fn hermitian(&mut self, n: usize, algebra: Algebra) -> Matrix {
        self.matrix(n, n, algebra).hermitian_part()
    }

    /// Haar-distributed unitary: Gram-Schmidt applied to Gaussian columns.
    pub fn unitary(&mut self, n: usize, algebra: Algebra) -> Matrix {
        self.basis(n, algebra).to_matrix()
    }

    pub fn basis(&mut self, n: usize, algebra: Algebra) -> OrthonormalBasis {
        loop {
            let cols: Vec<Vector> = (0..n).map(|_| self.vector(n, algebra)).collect();
            let family = orthonormalize(&cols, 1e-8);
            if family.len() == n {
                return OrthonormalBasis::from_orthonormal(family);
            }
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.int_in(0, i);
            p.swap(i, j);
        }
        p
    }
}

impl RngCore for LabRng {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}

/// Deterministic Haar unitary for a given seed.
pub fn random_unitary(n: usize, algebra: Algebra, seed: u64) -> Matrix {
    LabRng::seed_from(seed).unitary(n, algebra)
}
