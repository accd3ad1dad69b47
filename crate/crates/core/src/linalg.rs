//! Points and linear maps of the plane.
//!
//! Every worst-case instance lives in two dimensions, so everything here is
//! closed form: inverses by Cramer's rule, eigenvalues of symmetric parts and
//! singular values from the explicit 2×2 formulas.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x1: f64,
    pub x2: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x1: 0.0, x2: 0.0 };

    pub const fn new(x1: f64, x2: f64) -> Self {
        Vec2 { x1, x2 }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    /// Component-wise product, used by diagonal maps.
    pub fn hadamard(self, other: Vec2) -> Vec2 {
        Vec2::new(self.x1 * other.x1, self.x2 * other.x2)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x1 += rhs.x1;
        self.x2 += rhs.x2;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x1, -self.x2)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x1 * rhs, self.x2 * rhs)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        rhs * self
    }
}

/// A 2×2 real matrix, row major.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);
    /// The quarter-turn generator `[[0, -1], [1, 0]]`.
    pub const SKEW: Mat2 = Mat2::new(0.0, -1.0, 1.0, 0.0);

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub const fn diag(d1: f64, d2: f64) -> Self {
        Mat2::new(d1, 0.0, 0.0, d2)
    }

    pub fn scalar(s: f64) -> Self {
        Mat2::diag(s, s)
    }

    /// Counter-clockwise rotation `[[cos a, -sin a], [sin a, cos a]]`.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Mat2::new(c, -s, s, c)
    }

    /// Build the matrix whose columns are the images of the unit vectors.
    pub fn from_columns(col1: Vec2, col2: Vec2) -> Self {
        Mat2::new(col1.x1, col2.x1, col1.x2, col2.x2)
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.a11 * v.x1 + self.a12 * v.x2,
            self.a21 * v.x1 + self.a22 * v.x2,
        )
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    /// Inverse by Cramer's rule; `None` when the determinant is zero or not finite.
    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let inv = 1.0 / det;
        Some(Mat2::new(
            self.a22 * inv,
            -self.a12 * inv,
            -self.a21 * inv,
            self.a11 * inv,
        ))
    }

    /// Solve `self * u = rhs`.
    pub fn solve(&self, rhs: Vec2) -> Option<Vec2> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        Some(Vec2::new(
            (self.a22 * rhs.x1 - self.a12 * rhs.x2) / det,
            (self.a11 * rhs.x2 - self.a21 * rhs.x1) / det,
        ))
    }

    /// `(M + Mᵀ) / 2`.
    pub fn symmetric_part(&self) -> Mat2 {
        let off = 0.5 * (self.a12 + self.a21);
        Mat2::new(self.a11, off, off, self.a22)
    }

    /// `(M - Mᵀ) / 2`.
    pub fn skew_part(&self) -> Mat2 {
        let off = 0.5 * (self.a12 - self.a21);
        Mat2::new(0.0, off, -off, 0.0)
    }

    /// Smallest eigenvalue of the symmetric part; the strong monotonicity
    /// modulus of the linear map.
    pub fn min_sym_eigenvalue(&self) -> f64 {
        let s = self.symmetric_part();
        let mean = 0.5 * (s.a11 + s.a22);
        let radius = (0.5 * (s.a11 - s.a22)).hypot(s.a12);
        mean - radius
    }

    /// Largest eigenvalue of the symmetric part.
    pub fn max_sym_eigenvalue(&self) -> f64 {
        let s = self.symmetric_part();
        let mean = 0.5 * (s.a11 + s.a22);
        let radius = (0.5 * (s.a11 - s.a22)).hypot(s.a12);
        mean + radius
    }

    /// Both singular values `(largest, smallest)`.
    ///
    /// Writes the map as a sum of a scaled rotation and a scaled reflection,
    /// whose magnitudes `p` and `q` give `σ_max = p + q` and `σ_min = |p - q|`.
    pub fn singular_values(&self) -> (f64, f64) {
        let p = 0.5 * (self.a11 + self.a22).hypot(self.a21 - self.a12);
        let q = 0.5 * (self.a11 - self.a22).hypot(self.a21 + self.a12);
        (p + q, (p - q).abs())
    }

    /// Spectral norm, the Lipschitz constant of the linear map.
    pub fn spectral_norm(&self) -> f64 {
        self.singular_values().0
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (self.a11 - other.a11)
            .abs()
            .max((self.a12 - other.a12).abs())
            .max((self.a21 - other.a21).abs())
            .max((self.a22 - other.a22).abs())
    }

    pub fn is_finite(&self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 + rhs.a11,
            self.a12 + rhs.a12,
            self.a21 + rhs.a21,
            self.a22 + rhs.a22,
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 - rhs.a11,
            self.a12 - rhs.a12,
            self.a21 - rhs.a21,
            self.a22 - rhs.a22,
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a11, -self.a12, -self.a21, -self.a22)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: f64) -> Mat2 {
        Mat2::new(self.a11 * rhs, self.a12 * rhs, self.a21 * rhs, self.a22 * rhs)
    }
}

impl Mul<Mat2> for f64 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        rhs * self
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        self.mul_vec(rhs)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * rhs.a11 + self.a12 * rhs.a21,
            self.a11 * rhs.a12 + self.a12 * rhs.a22,
            self.a21 * rhs.a11 + self.a22 * rhs.a21,
            self.a21 * rhs.a12 + self.a22 * rhs.a22,
        )
    }
}
