//! Elements of closed subgroups of GL(n, C) in double-precision complex arithmetic.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ExpChart, GroupElement, GroupError};

/// Residual budget for unitarity, orthogonality and determinant checks.
pub const MATRIX_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixGroupTag {
    GL,
    U,
    SU,
    O,
    SO,
}

impl MatrixGroupTag {
    fn is_unitary(self) -> bool {
        !matches!(self, MatrixGroupTag::GL)
    }

    fn is_real(self) -> bool {
        matches!(self, MatrixGroupTag::O | MatrixGroupTag::SO)
    }

    fn is_special(self) -> bool {
        matches!(self, MatrixGroupTag::SU | MatrixGroupTag::SO)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGroupElement {
    entries: DMatrix<Complex64>,
    tag: MatrixGroupTag,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl MatrixGroupElement {
    /// Validates membership in the group named by `tag`.
    pub fn new(entries: DMatrix<Complex64>, tag: MatrixGroupTag) -> Result<Self, GroupError> {
        if entries.nrows() != entries.ncols() {
            return Err(GroupError::DimensionMismatch {
                expected: entries.nrows(),
                found: entries.ncols(),
            });
        }
        let m = Self { entries, tag };
        let residual = m.membership_residual();
        if residual > MATRIX_TOL {
            return Err(GroupError::NotInGroup { tag, residual });
        }
        Ok(m)
    }

    /// Real matrix given row by row.
    pub fn from_real(n: usize, rows: &[f64], tag: MatrixGroupTag) -> Result<Self, GroupError> {
        if rows.len() != n * n {
            return Err(GroupError::DimensionMismatch {
                expected: n * n,
                found: rows.len(),
            });
        }
        Self::new(DMatrix::from_row_iterator(n, n, rows.iter().map(|&x| c(x))), tag)
    }

    pub fn identity(n: usize, tag: MatrixGroupTag) -> Self {
        Self {
            entries: DMatrix::identity(n, n),
            tag,
        }
    }

    /// Real diagonal matrix.
    pub fn diagonal(diag: &[f64], tag: MatrixGroupTag) -> Result<Self, GroupError> {
        let n = diag.len();
        let entries = DMatrix::from_fn(n, n, |r, col| if r == col { c(diag[r]) } else { c(0.0) });
        Self::new(entries, tag)
    }

    /// Rotation by `angle` in the `(p, q)` coordinate plane of R^n.
    pub fn plane_rotation(n: usize, p: usize, q: usize, angle: f64, tag: MatrixGroupTag) -> Result<Self, GroupError> {
        let mut entries = DMatrix::identity(n, n);
        entries[(p, p)] = c(angle.cos());
        entries[(q, q)] = c(angle.cos());
        entries[(p, q)] = c(-angle.sin());
        entries[(q, p)] = c(angle.sin());
        Self::new(entries, tag)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn tag(&self) -> MatrixGroupTag {
        self.tag
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn determinant(&self) -> Complex64 {
        self.entries.determinant()
    }

    /// Worst violation of the defining equations of the tagged group.
    pub fn membership_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        let det = self.determinant();
        if self.tag.is_unitary() {
            let gram = self.entries.adjoint() * &self.entries;
            worst = worst.max((gram - DMatrix::<Complex64>::identity(n, n)).norm());
        } else if det.norm() <= MATRIX_TOL {
            return f64::INFINITY;
        }
        if self.tag.is_real() {
            let imag = self.entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            worst = worst.max(imag);
            // det ∈ {±1} on O(n)
            worst = worst.max((det.re.abs() - 1.0).abs()).max(det.im.abs());
        }
        if self.tag.is_special() {
            worst = worst.max((det - c(1.0)).norm());
        }
        worst
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            entries: &self.entries * &other.entries,
            tag: self.tag,
        }
    }

    pub fn inverse(&self) -> Self {
        let entries = if self.tag.is_unitary() {
            self.entries.adjoint()
        } else {
            self.entries
                .clone()
                .try_inverse()
                .expect("group elements are invertible")
        };
        Self {
            entries,
            tag: self.tag,
        }
    }

    /// Largest singular value.
    pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
        if m.is_empty() {
            return 0.0;
        }
        m.clone()
            .svd(false, false)
            .singular_values
            .iter()
            .fold(0.0, |a: f64, &b| a.max(b))
    }

    /// Principal logarithm by inverse scaling and squaring: Denman–Beavers
    /// square roots until the matrix is close to I, then the Mercator series.
    pub fn principal_log(&self) -> Option<DMatrix<Complex64>> {
        let n = self.dim();
        let id = DMatrix::<Complex64>::identity(n, n);
        let mut x = self.entries.clone();
        let mut doublings = 0u32;
        while (&x - &id).norm() > 0.25 {
            x = sqrt_denman_beavers(&x)?;
            doublings += 1;
            if doublings > 60 {
                return None;
            }
        }
        let a = &x - &id;
        let mut term = a.clone();
        let mut sum = a.clone();
        for k in 2..200 {
            term = &term * &a;
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            let contrib = &term * c(sign / k as f64);
            sum += &contrib;
            if contrib.norm() < 1e-18 {
                break;
            }
        }
        Some(sum * c(2f64.powi(doublings as i32)))
    }
}

fn sqrt_denman_beavers(a: &DMatrix<Complex64>) -> Option<DMatrix<Complex64>> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = DMatrix::<Complex64>::identity(n, n);
    for _ in 0..100 {
        let y_inv = y.clone().try_inverse()?;
        let z_inv = z.clone().try_inverse()?;
        let y_next = (&y + z_inv) * c(0.5);
        let z_next = (&z + y_inv) * c(0.5);
        let delta = (&y_next - &y).norm();
        y = y_next;
        z = z_next;
        if delta <= 1e-15 * y.norm().max(1.0) {
            return Some(y);
        }
    }
    if y.iter().all(|v| v.is_finite()) {
        Some(y)
    } else {
        None
    }
}

impl GroupElement for MatrixGroupElement {
    fn identity_like(&self) -> Self {
        Self::identity(self.dim(), self.tag)
    }

    fn compose(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn inverse_element(&self) -> Self {
        self.inverse()
    }

    /// Frobenius distance to the identity.
    fn identity_residual(&self) -> f64 {
        let n = self.dim();
        (&self.entries - DMatrix::<Complex64>::identity(n, n)).norm()
    }
}

impl ExpChart for MatrixGroupElement {
    type Tangent = DMatrix<Complex64>;

    fn chart_log(&self) -> Option<DMatrix<Complex64>> {
        self.principal_log()
    }

    fn tangent_norm(v: &DMatrix<Complex64>) -> f64 {
        Self::operator_norm(v)
    }

    fn chart_exp(&self, v: &DMatrix<Complex64>, scale: f64) -> Self {
        Self {
            entries: (v * c(scale)).exp(),
            tag: self.tag,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_membership() {
        let refl = MatrixGroupElement::diagonal(&[-1.0, 1.0], MatrixGroupTag::O).unwrap();
        assert!((refl.determinant().re + 1.0).abs() < 1e-15);
        assert!(MatrixGroupElement::diagonal(&[-1.0, 1.0], MatrixGroupTag::SO).is_err());
        assert!(MatrixGroupElement::diagonal(&[2.0, 1.0], MatrixGroupTag::O).is_err());
        let rot = MatrixGroupElement::plane_rotation(3, 0, 1, 0.7, MatrixGroupTag::SO).unwrap();
        assert!(rot.membership_residual() < 1e-15);
    }

    #[test]
    fn general_linear_needs_invertibility() {
        assert!(MatrixGroupElement::from_real(2, &[1.0, 2.0, 2.0, 4.0], MatrixGroupTag::GL).is_err());
        let g = MatrixGroupElement::from_real(2, &[1.0, 2.0, 0.0, 3.0], MatrixGroupTag::GL).unwrap();
        let prod = g.mul(&g.inverse());
        assert!(prod.identity_residual() < 1e-14);
    }

    #[test]
    fn log_inverts_exp() {
        let v = DMatrix::from_row_slice(
            3,
            3,
            &[c(0.0), c(-0.4), c(0.1), c(0.4), c(0.0), c(-0.3), c(-0.1), c(0.3), c(0.0)],
        );
        let g = MatrixGroupElement::identity(3, MatrixGroupTag::SO).chart_exp(&v, 1.0);
        assert!(g.membership_residual() < 1e-12);
        let back = g.principal_log().unwrap();
        assert!((back - &v).norm() < 1e-12);
    }

    #[test]
    fn log_of_identity_is_zero() {
        let g = MatrixGroupElement::identity(4, MatrixGroupTag::U);
        assert!(g.principal_log().unwrap().norm() == 0.0);
    }
}
