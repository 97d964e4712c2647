use std::ops::{Add, Index, Sub};

use crate::error::{LabError, Result};
use crate::scalar::{Algebra, Quaternion, Scalar};

/// Column vector over an algebra. Scalars act from the right: `(x q)_m = x_m q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    algebra: Algebra,
    data: Vec<Quaternion>,
}

impl Vector {
    pub fn zeros(n: usize, algebra: Algebra) -> Self {
        Vector {
            algebra,
            data: vec![Quaternion::ZERO; n],
        }
    }

    /// Standard basis vector `e_k`.
    pub fn unit(n: usize, k: usize, algebra: Algebra) -> Self {
        let mut v = Vector::zeros(n, algebra);
        v.data[k] = Quaternion::ONE;
        v
    }

    pub fn from_scalars<S: Scalar>(xs: &[S]) -> Self {
        Vector {
            algebra: S::ALGEBRA,
            data: xs.iter().map(|x| x.to_quaternion()).collect(),
        }
    }

    /// Entries are projected onto `algebra`.
    pub fn from_quaternions(algebra: Algebra, data: Vec<Quaternion>) -> Self {
        let data = data.into_iter().map(|q| algebra.project(q)).collect();
        Vector { algebra, data }
    }

    pub(crate) fn from_raw(algebra: Algebra, data: Vec<Quaternion>) -> Self {
        Vector { algebra, data }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quaternion> {
        self.data.iter()
    }

    /// Right scalar multiplication `x q`.
    pub fn mul_right(&self, q: Quaternion) -> Vector {
        Vector {
            algebra: self.algebra.join(algebra_of(q)),
            data: self.data.iter().map(|&x| x * q).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector {
            algebra: self.algebra,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    /// `⟨self|other⟩ = Σ conj(x_m) y_m`, right-linear in `other`.
    pub fn inner(&self, other: &Vector) -> Result<Quaternion> {
        if self.len() != other.len() {
            return Err(LabError::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self.dot(other))
    }

    pub(crate) fn dot(&self, other: &Vector) -> Quaternion {
        debug_assert_eq!(self.len(), other.len());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&x, &y)| x.conj() * y)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `self / |self|`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }

    /// `self - u⟨u|self⟩` for a unit vector `u`.
    pub(crate) fn remove_component(&mut self, u: &Vector) {
        let c = u.dot(self);
        for (x, &ux) in self.data.iter_mut().zip(&u.data) {
            *x -= ux * c;
        }
    }

    pub fn approx_eq(&self, other: &Vector, tol: f64) -> bool {
        self.len() == other.len() && (self - other).norm() <= tol
    }

    /// Widen the algebra tag (entries are unchanged).
    pub fn lift(&self, algebra: Algebra) -> Vector {
        Vector {
            algebra: self.algebra.join(algebra),
            data: self.data.clone(),
        }
    }
}

/// Smallest algebra containing `q`.
pub(crate) fn algebra_of(q: Quaternion) -> Algebra {
    if q.c != 0.0 || q.d != 0.0 {
        Algebra::Quaternion
    } else if q.b != 0.0 {
        Algebra::Complex
    } else {
        Algebra::Real
    }
}

impl Index<usize> for Vector {
    type Output = Quaternion;
    fn index(&self, i: usize) -> &Quaternion {
        &self.data[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, o: &Vector) -> Vector {
        assert_eq!(self.len(), o.len(), "vector length mismatch");
        Vector {
            algebra: self.algebra.join(o.algebra),
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, o: &Vector) -> Vector {
        assert_eq!(self.len(), o.len(), "vector length mismatch");
        Vector {
            algebra: self.algebra.join(o.algebra),
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}
