//! Scalars over the three real associative division algebras.
//!
//! Everything downstream stores entries as [`Quaternion`]s and carries an
//! [`Algebra`] tag saying which subalgebra the entries live in. Real numbers
//! are quaternions with `b = c = d = 0`, complex numbers have `c = d = 0`.
//! Both subalgebras are closed under the Hamilton product, so one
//! implementation serves all three cases.
//!
//! The [`Scalar`] trait is the generic entry point for callers that hold
//! `f64`, [`Complex64`] or [`Quaternion`] values.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default absolute tolerance for scalar comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Which division algebra a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algebra {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
    #[serde(rename = "H")]
    Quaternion,
}

impl Algebra {
    pub const ALL: [Algebra; 3] = [Algebra::Real, Algebra::Complex, Algebra::Quaternion];

    /// Smallest algebra containing both.
    pub fn join(self, other: Algebra) -> Algebra {
        self.max(other)
    }

    /// Real dimension of the algebra (1, 2 or 4).
    pub fn real_dim(self) -> usize {
        match self {
            Algebra::Real => 1,
            Algebra::Complex => 2,
            Algebra::Quaternion => 4,
        }
    }

    /// Imaginary units available in the algebra.
    pub fn imaginary_units(self) -> &'static [Quaternion] {
        match self {
            Algebra::Real => &[],
            Algebra::Complex => &[Quaternion::I],
            Algebra::Quaternion => &[Quaternion::I, Quaternion::J, Quaternion::K],
        }
    }

    /// Real basis of the algebra: `1` followed by its imaginary units.
    pub fn units(self) -> &'static [Quaternion] {
        match self {
            Algebra::Real => &[Quaternion::ONE],
            Algebra::Complex => &[Quaternion::ONE, Quaternion::I],
            Algebra::Quaternion => &[Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K],
        }
    }

    /// Whether `q` lies in this algebra (components outside it are exactly zero).
    pub fn contains(self, q: Quaternion) -> bool {
        match self {
            Algebra::Real => q.b == 0.0 && q.c == 0.0 && q.d == 0.0,
            Algebra::Complex => q.c == 0.0 && q.d == 0.0,
            Algebra::Quaternion => true,
        }
    }

    /// Zero the components of `q` that fall outside this algebra.
    pub fn project(self, q: Quaternion) -> Quaternion {
        match self {
            Algebra::Real => Quaternion::real(q.a),
            Algebra::Complex => Quaternion::new(q.a, q.b, 0.0, 0.0),
            Algebra::Quaternion => q,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Algebra::Real => "R",
            Algebra::Complex => "C",
            Algebra::Quaternion => "H",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Algebra> {
        match s {
            "R" | "r" | "real" => Some(Algebra::Real),
            "C" | "c" | "complex" => Some(Algebra::Complex),
            "H" | "h" | "quaternion" => Some(Algebra::Quaternion),
            _ => None,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `a + b i + c j + d k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quaternion { a, b, c, d }
    }

    pub const fn real(a: f64) -> Self {
        Quaternion::new(a, 0.0, 0.0, 0.0)
    }

    pub const fn complex(re: f64, im: f64) -> Self {
        Quaternion::new(re, im, 0.0, 0.0)
    }

    /// `a - b i - c j - d k`.
    pub fn conj(self) -> Self {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn re(self) -> f64 {
        self.a
    }

    /// Imaginary part `b i + c j + d k`.
    pub fn im(self) -> Quaternion {
        Quaternion::new(0.0, self.b, self.c, self.d)
    }

    pub fn norm_sqr(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(self) -> f64 {
        // hypot chain keeps tiny and huge components from under/overflowing
        self.a.hypot(self.b).hypot(self.c.hypot(self.d))
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        (n2 > 0.0).then(|| self.conj() / n2)
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn is_zero(self) -> bool {
        self == Quaternion::ZERO
    }

    pub fn approx_eq(self, other: Quaternion, tol: f64) -> bool {
        (self - other).norm() <= tol
    }

    /// Split `z1 + z2 j` with `z1 = a + b i`, `z2 = c + d i`.
    pub fn to_complex_pair(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.a, self.b),
            Complex64::new(self.c, self.d),
        )
    }

    /// Inverse of [`Quaternion::to_complex_pair`].
    pub fn from_complex_pair(z1: Complex64, z2: Complex64) -> Self {
        Quaternion::new(z1.re, z1.im, z2.re, z2.im)
    }

    pub fn components(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        for (v, unit) in [(self.b, "i"), (self.c, "j"), (self.d, "k")] {
            if v != 0.0 {
                if v < 0.0 {
                    write!(f, " - {}{unit}", -v)?;
                } else {
                    write!(f, " + {v}{unit}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

/// Hamilton product: `i² = j² = k² = ijk = -1`.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (o.a, o.b, o.c, o.d);
        // paired so that conj(pq) = conj(q)conj(p) holds bit for bit
        Quaternion::new(
            (a1 * a2 - b1 * b2) - (c1 * c2 + d1 * d2),
            (a1 * b2 + b1 * a2) + (c1 * d2 - d1 * c2),
            (a1 * c2 + c1 * a2) + (d1 * b2 - b1 * d2),
            (a1 * d2 + d1 * a2) + (b1 * c2 - c1 * b2),
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, o: Quaternion) {
        *self = *self * o;
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |acc, q| acc + q)
    }
}

impl From<f64> for Quaternion {
    fn from(a: f64) -> Self {
        Quaternion::real(a)
    }
}

impl From<Complex64> for Quaternion {
    fn from(z: Complex64) -> Self {
        Quaternion::complex(z.re, z.im)
    }
}

/// Common interface of `f64`, [`Complex64`] and [`Quaternion`].
pub trait Scalar:
    Copy
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const ALGEBRA: Algebra;

    fn zero() -> Self;
    fn one() -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn norm_sqr(self) -> f64;

    fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// True when multiplication is commutative and conjugation trivial.
    fn is_real_algebra() -> bool {
        Self::ALGEBRA == Algebra::Real
    }

    fn to_quaternion(self) -> Quaternion;

    /// Exact inverse of the embedding; `None` if `q` has components outside the algebra.
    fn from_quaternion(q: Quaternion) -> Option<Self>;
}

impl Scalar for f64 {
    const ALGEBRA: Algebra = Algebra::Real;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn conj(self) -> Self {
        self
    }
    fn re(self) -> f64 {
        self
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn norm(self) -> f64 {
        self.abs()
    }
    fn to_quaternion(self) -> Quaternion {
        Quaternion::real(self)
    }
    fn from_quaternion(q: Quaternion) -> Option<Self> {
        Algebra::Real.contains(q).then_some(q.a)
    }
}

impl Scalar for Complex64 {
    const ALGEBRA: Algebra = Algebra::Complex;
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
    fn to_quaternion(self) -> Quaternion {
        Quaternion::from(self)
    }
    fn from_quaternion(q: Quaternion) -> Option<Self> {
        Algebra::Complex
            .contains(q)
            .then(|| Complex64::new(q.a, q.b))
    }
}

impl Scalar for Quaternion {
    const ALGEBRA: Algebra = Algebra::Quaternion;
    fn zero() -> Self {
        Quaternion::ZERO
    }
    fn one() -> Self {
        Quaternion::ONE
    }
    fn conj(self) -> Self {
        Quaternion::conj(self)
    }
    fn re(self) -> f64 {
        self.a
    }
    fn norm_sqr(self) -> f64 {
        Quaternion::norm_sqr(self)
    }
    fn norm(self) -> f64 {
        Quaternion::norm(self)
    }
    fn to_quaternion(self) -> Quaternion {
        self
    }
    fn from_quaternion(q: Quaternion) -> Option<Self> {
        Some(q)
    }
}

/// JSON form of a scalar: a bare number over R, `[a, b]` over C, `[a, b, c, d]` over H.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Real(f64),
    Complex([f64; 2]),
    Quaternion([f64; 4]),
}

impl ScalarRepr {
    /// Encode `q` in the format of `algebra`, dropping components outside it.
    pub fn encode(q: Quaternion, algebra: Algebra) -> Self {
        match algebra {
            Algebra::Real => ScalarRepr::Real(q.a),
            Algebra::Complex => ScalarRepr::Complex([q.a, q.b]),
            Algebra::Quaternion => ScalarRepr::Quaternion(q.components()),
        }
    }

    pub fn algebra(&self) -> Algebra {
        match self {
            ScalarRepr::Real(_) => Algebra::Real,
            ScalarRepr::Complex(_) => Algebra::Complex,
            ScalarRepr::Quaternion(_) => Algebra::Quaternion,
        }
    }

    pub fn decode(self) -> Quaternion {
        match self {
            ScalarRepr::Real(a) => Quaternion::real(a),
            ScalarRepr::Complex([a, b]) => Quaternion::complex(a, b),
            ScalarRepr::Quaternion([a, b, c, d]) => Quaternion::new(a, b, c, d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q1: Quaternion = Quaternion::new(1.0, 1.0, 1.0, 1.0);

    fn quat() -> impl Strategy<Value = Quaternion> {
        (
            -10.0..10.0f64,
            -10.0..10.0f64,
            -10.0..10.0f64,
            -10.0..10.0f64,
        )
            .prop_map(|(a, b, c, d)| Quaternion::new(a, b, c, d))
    }

    fn rel_close(x: Quaternion, y: Quaternion, scale: f64) -> bool {
        (x - y).norm() <= 1e-13 * scale.max(1.0)
    }

    #[test]
    fn unit_products() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::J * Q::I, -Q::K);
        for u in [Q::I, Q::J, Q::K] {
            assert_eq!(u * u, -Q::ONE);
        }
        assert_eq!(Q::I * Q::J * Q::K, -Q::ONE);
    }

    #[test]
    fn product_examples() {
        let q = Quaternion::new(0.3, -2.0, 5.5, 1.25);
        assert_eq!(q * Quaternion::ONE, q);
        let p = (Quaternion::ONE + Quaternion::I) * (Quaternion::ONE + Quaternion::J);
        assert_eq!(p, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn conj_re_norm_examples() {
        assert_eq!(Quaternion::I.conj(), -Quaternion::I);
        assert_eq!(Quaternion::real(2.0).conj(), Quaternion::real(2.0));
        assert_eq!(Q1.conj(), Quaternion::new(1.0, -1.0, -1.0, -1.0));
        assert_eq!(Quaternion::new(3.0, 0.0, 4.0, 0.0).re(), 3.0);
        assert_eq!(Quaternion::I.re(), 0.0);
        assert_eq!(Q1.norm(), 2.0);
        assert_eq!(Quaternion::ZERO.norm(), 0.0);
    }

    #[test]
    fn inverse() {
        assert!(Quaternion::ZERO.inv().is_none());
        let q = Quaternion::new(1.0, -2.0, 0.5, 3.0);
        assert!((q * q.inv().unwrap()).approx_eq(Quaternion::ONE, 1e-15));
        assert!((q.inv().unwrap() * q).approx_eq(Quaternion::ONE, 1e-15));
    }

    #[test]
    fn complex_pair_split() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let (z1, z2) = q.to_complex_pair();
        // z2 j = (c + d i) j = c j + d k
        let rebuilt = Quaternion::from(z1) + Quaternion::from(z2) * Quaternion::J;
        assert_eq!(rebuilt, q);
        assert_eq!(Quaternion::from_complex_pair(z1, z2), q);
    }

    #[test]
    fn scalar_trait_embeddings() {
        assert_eq!(<f64 as Scalar>::from_quaternion(Quaternion::I), None);
        assert_eq!(
            <f64 as Scalar>::from_quaternion(Quaternion::real(2.5)),
            Some(2.5)
        );
        assert_eq!(
            <Complex64 as Scalar>::from_quaternion(Quaternion::complex(1.0, -1.0)),
            Some(Complex64::new(1.0, -1.0))
        );
        assert_eq!(<Complex64 as Scalar>::from_quaternion(Quaternion::J), None);
        assert!(f64::is_real_algebra());
        assert!(!Quaternion::is_real_algebra());
    }

    #[test]
    fn scalar_json() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let enc = |alg| serde_json::to_string(&ScalarRepr::encode(q, alg)).unwrap();
        assert_eq!(enc(Algebra::Real), "1.0");
        assert_eq!(enc(Algebra::Complex), "[1.0,2.0]");
        assert_eq!(enc(Algebra::Quaternion), "[1.0,2.0,3.0,4.0]");
        let back: ScalarRepr = serde_json::from_str("[1.0,2.0,3.0,4.0]").unwrap();
        assert_eq!(back.decode(), q);
        assert_eq!(back.algebra(), Algebra::Quaternion);
        let back: ScalarRepr = serde_json::from_str("[0.5,-1]").unwrap();
        assert_eq!(back.algebra(), Algebra::Complex);
    }

    #[test]
    fn algebra_tags() {
        assert_eq!(Algebra::Real.join(Algebra::Quaternion), Algebra::Quaternion);
        assert_eq!(Algebra::Complex.join(Algebra::Real), Algebra::Complex);
        assert!(Algebra::Complex.contains(Quaternion::I));
        assert!(!Algebra::Complex.contains(Quaternion::K));
        assert_eq!(
            serde_json::to_string(&Algebra::Quaternion).unwrap(),
            "\"H\""
        );
        for a in Algebra::ALL {
            assert_eq!(Algebra::from_symbol(a.symbol()), Some(a));
            assert_eq!(a.units().len(), a.real_dim());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn norm_is_multiplicative(p in quat(), q in quat()) {
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-13 * rhs.max(1.0));
        }

        #[test]
        fn conj_reverses_products(p in quat(), q in quat()) {
            prop_assert_eq!((p * q).conj(), q.conj() * p.conj());
        }

        #[test]
        fn real_part_is_cyclic(p in quat(), q in quat()) {
            prop_assert!(((p * q).re() - (q * p).re()).abs() <= 1e-13 * (p.norm() * q.norm()).max(1.0));
        }

        #[test]
        fn associative_and_distributive(p in quat(), q in quat(), r in quat()) {
            let scale = p.norm() * q.norm() * r.norm();
            prop_assert!(rel_close((p * q) * r, p * (q * r), scale));
            let scale = p.norm() * (q.norm() + r.norm());
            prop_assert!(rel_close(p * (q + r), p * q + p * r, scale));
            prop_assert!(rel_close((q + r) * p, q * p + r * p, scale));
        }

        #[test]
        fn norm_squared_is_real_part_of_conj_product(q in quat()) {
            let n2 = q.norm() * q.norm();
            prop_assert!((n2 - (q.conj() * q).re()).abs() <= 1e-13 * n2.max(1.0));
            prop_assert!((q.conj() * q).im().norm() <= 1e-13 * n2.max(1.0));
        }

        #[test]
        fn conj_is_involution(q in quat()) {
            prop_assert_eq!(q.conj().conj(), q);
        }

        #[test]
        fn complex_embedding_commutes(a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64, d in -5.0..5.0f64) {
            let (z, w) = (Complex64::new(a, b), Complex64::new(c, d));
            let embedded = Quaternion::from(z) * Quaternion::from(w);
            prop_assert!(embedded.approx_eq(Quaternion::from(z * w), 1e-13));
            prop_assert!(Algebra::Complex.contains(embedded));
            prop_assert_eq!(Quaternion::from(Scalar::conj(z)), Quaternion::from(z).conj());
            prop_assert!((Scalar::norm(z) - Quaternion::from(z).norm()).abs() <= 1e-13);
            let (x, y) = (Quaternion::real(a), Quaternion::real(c));
            prop_assert_eq!(x * y, Quaternion::real(a * c));
        }
    }
}
