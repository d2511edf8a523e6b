//! SU(2) as the group of unit quaternions.
//!
//! A unit quaternion `w + x i + y j + z k` corresponds to the 2×2 matrix
//!
//! ```text
//!   [  w + i x    y + i z ]
//!   [ -y + i z    w - i x ]
//! ```
//!
//! so the matrix trace is `2w` and the trace-zero elements are the pure
//! imaginary quaternions (a 2-sphere).  Tangent vectors are pure imaginary
//! quaternions and `exp(v) = cos|v| + sin|v| v/|v|`; the norm of a tangent
//! vector is therefore the half-angle of the corresponding rotation, and the
//! bi-invariant distance takes values in `[0, π]`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Neg;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::GroupError;

/// Tolerance on `|w² + x² + y² + z² − 1|` for a value to count as a group element.
pub const UNIT_TOL: f64 = 1e-12;

/// Elements whose imaginary part is at most this long are treated as ±1.
pub const CENTRAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitQuaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Element of the Lie algebra su(2), a pure imaginary quaternion.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TangentVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TangentVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// Unit vector in the same direction, `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            None
        } else {
            Some(self.scale(1.0 / n))
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl UnitQuaternion {
    /// Builds a quaternion from raw components without normalizing.
    pub const fn from_components(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    /// Builds a group element, rejecting inputs off the unit sphere.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Result<Self, GroupError> {
        let q = Self { w, x, y, z };
        let defect = (q.norm_squared() - 1.0).abs();
        if defect <= UNIT_TOL {
            Ok(q)
        } else {
            Err(GroupError::NotUnit { defect })
        }
    }

    /// Projects an arbitrary nonzero 4-vector onto the unit sphere.
    pub fn normalize(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        Self::from_components(w / n, x / n, y / n, z / n)
    }

    pub const fn identity() -> Self {
        Self::from_components(1.0, 0.0, 0.0, 0.0)
    }

    pub const fn minus_one() -> Self {
        Self::from_components(-1.0, 0.0, 0.0, 0.0)
    }

    pub const fn i() -> Self {
        Self::from_components(0.0, 1.0, 0.0, 0.0)
    }

    pub const fn j() -> Self {
        Self::from_components(0.0, 0.0, 1.0, 0.0)
    }

    pub const fn k() -> Self {
        Self::from_components(0.0, 0.0, 0.0, 1.0)
    }

    /// Pure imaginary unit quaternion with the given (nonzero) direction.
    pub fn pure(v: TangentVector) -> Self {
        let u = v.normalized().unwrap_or(TangentVector::new(1.0, 0.0, 0.0));
        Self::from_components(0.0, u.x, u.y, u.z)
    }

    pub fn norm_squared(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn vector(&self) -> TangentVector {
        TangentVector::new(self.x, self.y, self.z)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Unnormalized Hamilton product.
    fn raw_mul(&self, b: &Self) -> Self {
        let a = self;
        Self::from_components(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }

    /// Group law. The product is renormalized so that long chains of
    /// multiplications stay on the unit sphere.
    pub fn mul(&self, other: &Self) -> Self {
        let p = self.raw_mul(other);
        let n = p.norm_squared().sqrt();
        Self::from_components(p.w / n, p.x / n, p.y / n, p.z / n)
    }

    pub fn inverse(&self) -> Self {
        Self::from_components(self.w, -self.x, -self.y, -self.z)
    }

    /// Conjugation `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.mul(self).mul(&g.inverse())
    }

    /// Trace of the corresponding 2×2 matrix.
    pub fn trace(&self) -> f64 {
        2.0 * self.w
    }

    /// Euclidean inner product in R⁴; equals `cos d(self, other)`.
    pub fn dot(&self, other: &Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Rotation half-angle `θ ∈ [0, π]` with `self = cos θ + sin θ v̂`.
    pub fn angle(&self) -> f64 {
        self.vector().norm().atan2(self.w)
    }

    pub fn is_central(&self) -> bool {
        self.vector().norm() <= CENTRAL_TOL
    }

    pub fn to_matrix(&self) -> Matrix2<Complex64> {
        let c = Complex64::new;
        Matrix2::new(
            c(self.w, self.x),
            c(self.y, self.z),
            c(-self.y, self.z),
            c(self.w, -self.x),
        )
    }

    /// Inverse of [`to_matrix`](Self::to_matrix); assumes the input is in SU(2).
    pub fn from_matrix(m: &Matrix2<Complex64>) -> Self {
        let a = m[(0, 0)];
        let b = m[(0, 1)];
        Self::normalize(a.re, a.im, b.re, b.im)
    }

    /// `cos θ + sin θ î`, the diagonal maximal torus.
    pub fn diagonal(theta: f64) -> Self {
        Self::from_components(theta.cos(), theta.sin(), 0.0, 0.0)
    }
}

impl Default for UnitQuaternion {
    fn default() -> Self {
        Self::identity()
    }
}

impl Neg for UnitQuaternion {
    type Output = UnitQuaternion;

    fn neg(self) -> Self::Output {
        Self::from_components(-self.w, -self.x, -self.y, -self.z)
    }
}

impl fmt::Display for UnitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

pub fn exp_su2(v: &TangentVector) -> UnitQuaternion {
    let n = v.norm();
    if n == 0.0 {
        return UnitQuaternion::identity();
    }
    let s = n.sin() / n;
    UnitQuaternion::normalize(n.cos(), v.x * s, v.y * s, v.z * s)
}

/// Principal logarithm. Defined everywhere except the branch point `−1`.
pub fn log_su2(q: &UnitQuaternion) -> Result<TangentVector, GroupError> {
    let v = q.vector();
    let s = v.norm();
    if s <= CENTRAL_TOL && q.w < 0.0 {
        return Err(GroupError::BranchPoint);
    }
    if s == 0.0 {
        return Ok(TangentVector::default());
    }
    let theta = s.atan2(q.w);
    Ok(v.scale(theta / s))
}

/// Bi-invariant distance `|log(a⁻¹ b)|`, computed as the angle between `a`
/// and `b` on the unit 3-sphere so that antipodal points are handled.
pub fn geodesic_dist(a: &UnitQuaternion, b: &UnitQuaternion) -> f64 {
    // atan2 of |a⁻¹b| components is better conditioned than acos(dot) near 0.
    let d = a.inverse().raw_mul(b);
    d.vector().norm().atan2(d.w).clamp(0.0, PI)
}

/// Distance from the identity; the residual used for relator checks.
pub fn dist_to_identity(q: &UnitQuaternion) -> f64 {
    q.angle().clamp(0.0, PI)
}

/// Unit quaternion `g` with `g î g⁻¹ = axis` (the rotation by `g` maps the
/// x-axis to `axis`).
pub fn rotor_from_i(axis: &TangentVector) -> UnitQuaternion {
    let a = TangentVector::new(1.0, 0.0, 0.0);
    let b = axis.normalized().unwrap_or(a);
    let c = a.dot(&b);
    if c < -1.0 + 1e-14 {
        // Half-turn about ĵ maps î to −î.
        return UnitQuaternion::j();
    }
    // q = cos(φ/2) + sin(φ/2) n̂ with φ the angle between a and b; the
    // normalization of (1 + c, a × b) gives exactly that.
    let x = a.cross(&b);
    UnitQuaternion::normalize(1.0 + c, x.x, x.y, x.z)
}
