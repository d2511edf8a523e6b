//! Group elements: SU(2) as unit quaternions and closed matrix groups.

mod matrix;
mod quaternion;
mod torus;

pub use matrix::{MatrixGroupElement, MatrixGroupTag, MATRIX_TOL};
pub use quaternion::{
    dist_to_identity, exp_su2, geodesic_dist, log_su2, rotor_from_i, TangentVector,
    UnitQuaternion, CENTRAL_TOL, UNIT_TOL,
};
pub use torus::{sim_diagonalize, torus_through, Diagonalization, TorusAxis};

use std::fmt::Debug;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("quaternion is not a unit quaternion (|norm² − 1| = {defect:e})")]
    NotUnit { defect: f64 },
    #[error("logarithm is undefined at the branch point −1")]
    BranchPoint,
    #[error("elements do not commute (commutator residual {residual:e})")]
    NotCommuting { residual: f64 },
    #[error("central element has no unique maximal torus")]
    CentralElement,
    #[error("matrix fails the {tag:?} membership test (residual {residual:e})")]
    NotInGroup { tag: MatrixGroupTag, residual: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Minimal group interface shared by quaternions and matrix groups.
pub trait GroupElement: Clone + Debug + Send + Sync {
    /// Identity of the group this element lives in.
    fn identity_like(&self) -> Self;
    fn compose(&self, rhs: &Self) -> Self;
    fn inverse_element(&self) -> Self;
    /// Distance to the identity, used as the residual for relator checks.
    fn identity_residual(&self) -> f64;
}

/// Groups with a principal logarithm near the identity, as needed by the
/// exp-ball NDR construction.
pub trait ExpChart: GroupElement {
    type Tangent: Clone + Debug;

    /// Principal logarithm, `None` where it is undefined.
    fn chart_log(&self) -> Option<Self::Tangent>;
    fn tangent_norm(v: &Self::Tangent) -> f64;
    /// `exp(scale · v)`; `self` only fixes the ambient group.
    fn chart_exp(&self, v: &Self::Tangent, scale: f64) -> Self;
}

impl GroupElement for UnitQuaternion {
    fn identity_like(&self) -> Self {
        UnitQuaternion::identity()
    }

    fn compose(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn inverse_element(&self) -> Self {
        self.inverse()
    }

    fn identity_residual(&self) -> f64 {
        dist_to_identity(self)
    }
}

impl ExpChart for UnitQuaternion {
    type Tangent = TangentVector;

    fn chart_log(&self) -> Option<TangentVector> {
        log_su2(self).ok()
    }

    fn tangent_norm(v: &TangentVector) -> f64 {
        v.norm()
    }

    fn chart_exp(&self, v: &TangentVector, scale: f64) -> Self {
        exp_su2(&v.scale(scale))
    }
}

/// `a b a⁻¹ b⁻¹`.
pub fn commutator<G: GroupElement>(a: &G, b: &G) -> G {
    a.compose(b)
        .compose(&a.inverse_element())
        .compose(&b.inverse_element())
}

/// Distance of the commutator from the identity.
pub fn commutator_residual<G: GroupElement>(a: &G, b: &G) -> f64 {
    commutator(a, b).identity_residual()
}

pub fn commutes<G: GroupElement>(a: &G, b: &G, tol: f64) -> bool {
    commutator_residual(a, b) <= tol
}

/// Largest pairwise commutator residual of a tuple.
pub fn max_pairwise_commutator<G: GroupElement>(tuple: &[G]) -> f64 {
    let mut worst = 0.0f64;
    for (a_idx, a) in tuple.iter().enumerate() {
        for b in &tuple[a_idx + 1..] {
            worst = worst.max(commutator_residual(a, b));
        }
    }
    worst
}
