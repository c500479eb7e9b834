//! Quaternions in the basis (1, i, j, k) and their left/right multiplication matrices.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Vector3};
use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::exact::{QMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion<T = f64> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

pub type QuatQ = Quaternion<Rational>;

impl<T> Quaternion<T> {
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }
}

impl<T: Clone + Num + Neg<Output = T>> Quaternion<T> {
    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn imaginary(x: T, y: T, z: T) -> Self {
        Self::new(T::zero(), x, y, z)
    }

    pub fn coeffs(&self) -> [T; 4] {
        [self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn from_coeffs(c: [T; 4]) -> Self {
        let [w, x, y, z] = c;
        Self::new(w, x, y, z)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    pub fn norm_sqr(&self) -> T {
        self.w.clone() * self.w.clone() + self.x.clone() * self.x.clone() + self.y.clone() * self.y.clone() + self.z.clone() * self.z.clone()
    }

    pub fn dot(&self, o: &Self) -> T {
        self.w.clone() * o.w.clone() + self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone() + self.z.clone() * o.z.clone()
    }

    pub fn is_imaginary(&self) -> bool {
        self.w.is_zero()
    }

    pub fn scale(&self, c: T) -> Self {
        Self::new(self.w.clone() * c.clone(), self.x.clone() * c.clone(), self.y.clone() * c.clone(), self.z.clone() * c)
    }

    /// `None` for the zero quaternion.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Self::new(c.w / n.clone(), c.x / n.clone(), c.y / n.clone(), c.z / n))
    }

    /// Entries of x ↦ q·x, row-major.
    pub fn left_entries(&self) -> [[T; 4]; 4] {
        let (w, x, y, z) = (self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone());
        [
            [w.clone(), -x.clone(), -y.clone(), -z.clone()],
            [x.clone(), w.clone(), -z.clone(), y.clone()],
            [y.clone(), z.clone(), w.clone(), -x.clone()],
            [z, -y, x, w],
        ]
    }

    /// Entries of x ↦ x·q, row-major.
    pub fn right_entries(&self) -> [[T; 4]; 4] {
        let (w, x, y, z) = (self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone());
        [
            [w.clone(), -x.clone(), -y.clone(), -z.clone()],
            [x.clone(), w.clone(), z.clone(), -y.clone()],
            [y.clone(), -z.clone(), w.clone(), x.clone()],
            [z, y, -x, w],
        ]
    }
}

impl<T: Clone + Num + Neg<Output = T>> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (o.w, o.x, o.y, o.z);
        Self::new(
            a1.clone() * a2.clone() - b1.clone() * b2.clone() - c1.clone() * c2.clone() - d1.clone() * d2.clone(),
            a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone() - d1.clone() * c2.clone(),
            a1.clone() * c2.clone() - b1.clone() * d2.clone() + c1.clone() * a2.clone() + d1.clone() * b2.clone(),
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl<T: Clone + Num + Neg<Output = T>> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Clone + Num + Neg<Output = T>> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Clone + Num + Neg<Output = T>> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Quaternion<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&self) -> Self {
        self.scale(1.0 / self.norm())
    }

    pub fn im(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn from_im(v: &Vector3<f64>) -> Self {
        Self::new(0.0, v.x, v.y, v.z)
    }

    pub fn from_slice(s: &[f64]) -> Self {
        Self::new(s[0], s[1], s[2], s[3])
    }

    pub fn to_rational(&self) -> Option<QuatQ> {
        let c = |v: f64| Rational::from_float(v);
        Some(Quaternion::new(c(self.w)?, c(self.x)?, c(self.y)?, c(self.z)?))
    }
}

impl QuatQ {
    pub fn to_f64(&self) -> Quaternion<f64> {
        use crate::exact::to_f64;
        Quaternion::new(to_f64(&self.w), to_f64(&self.x), to_f64(&self.y), to_f64(&self.z))
    }
}

fn to_dmatrix<T: Clone + nalgebra::Scalar>(e: [[T; 4]; 4]) -> DMatrix<T> {
    DMatrix::from_fn(4, 4, |i, j| e[i][j].clone())
}

/// Matrix of x ↦ q·x.
pub fn left_mult_matrix(q: &Quaternion<f64>) -> DMatrix<f64> {
    to_dmatrix(q.left_entries())
}

/// Matrix of x ↦ x·q.
pub fn right_mult_matrix(q: &Quaternion<f64>) -> DMatrix<f64> {
    to_dmatrix(q.right_entries())
}

pub fn left_mult_exact(q: &QuatQ) -> QMatrix {
    to_dmatrix(q.left_entries())
}

pub fn right_mult_exact(q: &QuatQ) -> QMatrix {
    to_dmatrix(q.right_entries())
}

/// Recovers q from a 4×4 matrix of the form L_q (q is the image of 1).
pub fn quaternion_of_left(m: &DMatrix<f64>) -> Quaternion<f64> {
    Quaternion::new(m[(0, 0)], m[(1, 0)], m[(2, 0)], m[(3, 0)])
}

/// Unit imaginary quaternion orthogonal to the imaginary quaternions `a` and `b`.
///
/// Among the two (or, when `a` and `b` are parallel, the circle of) candidates this picks a
/// deterministic one: the normalized cross product with its first nonzero coefficient positive,
/// falling back to the smallest standard basis direction orthogonal to the nonzero input.
pub fn unit_orthogonal_imaginary(a: &Vector3<f64>, b: &Vector3<f64>) -> Vector3<f64> {
    let c = a.cross(b);
    let scale = a.norm().max(b.norm()).max(1.0);
    if c.norm() > 1e-12 * scale * scale {
        return canonical_sign(c.normalize());
    }
    let base = if a.norm() >= b.norm() { *a } else { *b };
    if base.norm() < 1e-14 {
        return Vector3::x();
    }
    // first basis direction not parallel to `base`, projected off it
    for e in [Vector3::x(), Vector3::y(), Vector3::z()] {
        let r = e - base * (base.dot(&e) / base.norm_squared());
        if r.norm() > 1e-8 {
            return canonical_sign(r.normalize());
        }
    }
    unreachable!("some basis direction is independent of a nonzero vector")
}

pub fn canonical_sign(v: Vector3<f64>) -> Vector3<f64> {
    match v.iter().find(|c| c.abs() > 1e-12) {
        Some(c) if *c < 0.0 => -v,
        _ => v,
    }
}
