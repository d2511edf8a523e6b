//! Maximal tori of SU(2) and simultaneous diagonalization of commuting tuples.

use serde::{Deserialize, Serialize};

use super::quaternion::{geodesic_dist, rotor_from_i, TangentVector, UnitQuaternion, CENTRAL_TOL};
use super::{max_pairwise_commutator, GroupError};

/// An entry this far from the center fixes the torus for the whole tuple.
const PIVOT_TOL: f64 = 1e-6;

/// Reconstruction error budget of a diagonalization.
const RECONSTRUCTION_TOL: f64 = 1e-9;

/// The maximal torus `{exp(s · axis)}` through a regular element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusAxis {
    pub axis: TangentVector,
}

impl TorusAxis {
    pub fn point(&self, s: f64) -> UnitQuaternion {
        UnitQuaternion::normalize(s.cos(), self.axis.x * s.sin(), self.axis.y * s.sin(), self.axis.z * s.sin())
    }

    /// Geodesic distance from `q` to the circle, i.e. the angle between `q`
    /// and the 2-plane spanned by `1` and the axis.
    pub fn distance(&self, q: &UnitQuaternion) -> f64 {
        let v = q.vector();
        let along = v.dot(&self.axis);
        let proj = (q.w * q.w + along * along).sqrt();
        let perp = v.cross(&self.axis).norm();
        perp.atan2(proj)
    }
}

/// `tuple[k] = g · exp(angles[k] î) · g⁻¹`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagonalization {
    pub conjugator: UnitQuaternion,
    pub angles: Vec<f64>,
}

impl Diagonalization {
    /// The tuple at parameter `t`, i.e. with every angle scaled by `t`.
    pub fn at(&self, t: f64) -> Vec<UnitQuaternion> {
        let g = self.conjugator;
        self.angles
            .iter()
            .map(|&a| UnitQuaternion::diagonal(t * a).conjugate_by(&g))
            .collect()
    }

    pub fn reconstruct(&self) -> Vec<UnitQuaternion> {
        self.at(1.0)
    }
}

/// The torus through a non-central element.
pub fn torus_through(q: &UnitQuaternion) -> Result<TorusAxis, GroupError> {
    let v = q.vector();
    if v.norm() <= CENTRAL_TOL {
        return Err(GroupError::CentralElement);
    }
    Ok(TorusAxis {
        axis: v.normalized().ok_or(GroupError::CentralElement)?,
    })
}

/// Conjugates a commuting tuple into the diagonal torus.
///
/// The conjugator is taken from the first entry that is not (numerically)
/// central, oriented so that its axis maps to `+î`; that entry then gets an
/// angle in `(0, π)`. An all-central tuple gets the identity conjugator.
pub fn sim_diagonalize(tuple: &[UnitQuaternion], tol: f64) -> Result<Diagonalization, GroupError> {
    let residual = max_pairwise_commutator(tuple);
    if residual > tol {
        return Err(GroupError::NotCommuting { residual });
    }

    let pivot = tuple
        .iter()
        .find(|q| q.vector().norm() >= PIVOT_TOL)
        .or_else(|| {
            tuple
                .iter()
                .filter(|q| q.vector().norm() > CENTRAL_TOL)
                .max_by(|a, b| a.vector().norm().total_cmp(&b.vector().norm()))
        });

    let conjugator = match pivot {
        Some(p) => rotor_from_i(&p.vector()),
        None => UnitQuaternion::identity(),
    };
    let inv = conjugator.inverse();
    let angles: Vec<f64> = tuple
        .iter()
        .map(|q| {
            let c = q.conjugate_by(&inv);
            c.x.atan2(c.w)
        })
        .collect();

    let diag = Diagonalization { conjugator, angles };
    let worst = diag
        .reconstruct()
        .iter()
        .zip(tuple)
        .map(|(a, b)| geodesic_dist(a, b))
        .fold(0.0, f64::max);
    if worst > RECONSTRUCTION_TOL {
        return Err(GroupError::NotCommuting { residual: worst });
    }
    Ok(diag)
}
