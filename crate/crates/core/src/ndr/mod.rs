//! NDR data for the pair (G, {1}) built from the exponential chart, and the
//! product, fat-wedge and filtration constructions on tuples.

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod suite;

pub use suite::{property_suite, SuiteConfig, SuiteReport, Tally};

use crate::group::{commutes, ExpChart, GroupElement, MatrixGroupElement, MatrixGroupTag, UnitQuaternion};

/// Tolerance for treating a coordinate as the identity.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Tolerance of the commutation tests in the centralizer check.
pub const CENTRALIZER_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NdrError {
    #[error("epsilon must lie in (0, π), got {0}")]
    BadEpsilon(f64),
    #[error("invalid index set: {0}")]
    BadIndexSet(String),
    #[error("need 1 <= r <= n, got r = {r}, n = {n}")]
    BadArity { r: usize, n: usize },
    #[error("tuple has {identities} identity coordinates, at least {required} required")]
    NotInStratum { identities: usize, required: usize },
}

/// The maps `u, s: G → [0, 1]` and `h: [0, 1] × G → G` on the
/// exponential image of the ε-ball around 0 in the Lie algebra.
#[derive(Debug, Clone)]
pub struct NdrRepresentation<G> {
    epsilon: f64,
    identity: G,
}

impl NdrRepresentation<UnitQuaternion> {
    pub fn su2() -> Self {
        Self {
            epsilon: std::f64::consts::FRAC_PI_2,
            identity: UnitQuaternion::identity(),
        }
    }
}

impl NdrRepresentation<MatrixGroupElement> {
    /// Default radius ln 2 in operator norm.
    pub fn matrix(n: usize, tag: MatrixGroupTag) -> Self {
        Self {
            epsilon: std::f64::consts::LN_2,
            identity: MatrixGroupElement::identity(n, tag),
        }
    }
}

impl<G: ExpChart> NdrRepresentation<G> {
    /// `exp` is injective on the open ball of radius π (in operator norm
    /// for matrices), so any smaller ε is admissible.
    pub fn new(identity: G, epsilon: f64) -> Result<Self, NdrError> {
        if !(epsilon > 0.0 && epsilon < std::f64::consts::PI) {
            return Err(NdrError::BadEpsilon(epsilon));
        }
        Ok(Self { epsilon, identity })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn identity(&self) -> &G {
        &self.identity
    }

    /// `(y, |y|)` for `g = exp(y)` inside the ε-ball.
    fn chart(&self, g: &G) -> Option<(G::Tangent, f64)> {
        let y = g.chart_log()?;
        let r = G::tangent_norm(&y);
        (r <= self.epsilon).then_some((y, r))
    }

    pub fn u(&self, g: &G) -> f64 {
        match self.chart(g) {
            Some((_, r)) if r <= self.epsilon / 2.0 => 2.0 * r / self.epsilon,
            _ => 1.0,
        }
    }

    pub fn s(&self, g: &G) -> f64 {
        match self.chart(g) {
            Some((_, r)) if r <= self.epsilon / 2.0 => 1.0,
            Some((_, r)) => 2.0 - 2.0 * r / self.epsilon,
            None => 0.0,
        }
    }

    pub fn h(&self, t: f64, g: &G) -> G {
        if t == 0.0 {
            return g.clone();
        }
        match self.chart(g) {
            Some((y, r)) if r <= self.epsilon / 2.0 => self.identity.chart_exp(&y, 1.0 - t),
            Some((y, r)) => {
                let s = 2.0 - 2.0 * r / self.epsilon;
                self.identity.chart_exp(&y, 1.0 - s * t)
            }
            None => g.clone(),
        }
    }

    /// For every probe `b`: `b` commutes with `g` iff it commutes with `h(t, g)`.
    pub fn check_centralizer_preservation(&self, g: &G, t: f64, probes: &[G]) -> bool {
        let moved = self.h(t, g);
        probes
            .iter()
            .all(|b| commutes(b, g, CENTRALIZER_TOL) == commutes(b, &moved, CENTRALIZER_TOL))
    }

    /// Coordinatewise `h(t_i, x_i)` with the fat-wedge time rescaling.
    pub fn fat_wedge_h(&self, t: f64, tuple: &[G]) -> Vec<G> {
        let us: Vec<f64> = tuple.iter().map(|x| self.u(x)).collect();
        fat_wedge_times(&us, t)
            .into_iter()
            .zip(tuple)
            .map(|(ti, x)| self.h(ti, x))
            .collect()
    }

    pub fn fat_wedge_u(&self, tuple: &[G], r: usize) -> Result<f64, NdrError> {
        let us: Vec<f64> = tuple.iter().map(|x| self.u(x)).collect();
        fat_wedge_u(&us, r)
    }
}

/// Which formula of the product homotopy applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProductBranch {
    /// `v(y) > u(x)`: `(h(t, x), j((u/v) t, y))`.
    SecondSlowed,
    /// `u(x) > v(y)`: `(h((v/u) t, x), j(t, y))`.
    FirstSlowed,
    /// `u(x) = v(y)`, where both formulas give `(h(t, x), j(t, y))`.
    Tie,
}

/// Product NDR data: returns `(k(t, x, y), w(x, y), branch)` with
/// `w = min(u, v)`.
pub fn product_ndr<X, Y>(
    u_x: f64,
    v_y: f64,
    t: f64,
    h: impl Fn(f64) -> X,
    j: impl Fn(f64) -> Y,
) -> ((X, Y), f64, ProductBranch) {
    let w = u_x.min(v_y);
    if v_y > u_x {
        ((h(t), j(u_x / v_y * t)), w, ProductBranch::SecondSlowed)
    } else if u_x > v_y {
        ((h(v_y / u_x * t), j(t)), w, ProductBranch::FirstSlowed)
    } else {
        ((h(t), j(t)), w, ProductBranch::Tie)
    }
}

/// `(1/r) · min` over r-subsets of the subset sum, i.e. the mean of the
/// r smallest values.
pub fn fat_wedge_u(values: &[f64], r: usize) -> Result<f64, NdrError> {
    if r == 0 || r > values.len() {
        return Err(NdrError::BadArity { r, n: values.len() });
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted[..r].iter().sum::<f64>() / r as f64)
}

/// `t_i = t · min_{m≠i} u_m / u_i` when some `u_m < u_i`, else `t`.
pub fn fat_wedge_times(us: &[f64], t: f64) -> Vec<f64> {
    us.iter()
        .enumerate()
        .map(|(i, &ui)| {
            let smallest_other = us
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != i)
                .map(|(_, &um)| um)
                .fold(f64::INFINITY, f64::min);
            if smallest_other < ui {
                t * (smallest_other / ui)
            } else {
                t
            }
        })
        .collect()
}

/// Number of coordinates within [`IDENTITY_TOL`] of the identity.
pub fn filtration_level<G: GroupElement>(tuple: &[G]) -> usize {
    tuple.iter().filter(|g| g.identity_residual() <= IDENTITY_TOL).count()
}

fn check_index_set(indices: &[usize], n: usize) -> Result<(), NdrError> {
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(NdrError::BadIndexSet(format!("{indices:?} is not strictly increasing")));
    }
    if let Some(&last) = indices.last() {
        if last >= n {
            return Err(NdrError::BadIndexSet(format!("index {last} out of range for length {n}")));
        }
    }
    Ok(())
}

/// `P_I`: the coordinates listed in `indices` (0-based, increasing).
pub fn project_pi<G: Clone>(tuple: &[G], indices: &[usize]) -> Result<Vec<G>, NdrError> {
    check_index_set(indices, tuple.len())?;
    Ok(indices.iter().map(|&i| tuple[i].clone()).collect())
}

/// `S_I`: places `tuple` at `indices` of an n-tuple and the identity elsewhere.
pub fn insert_si<G: GroupElement>(tuple: &[G], indices: &[usize], n: usize, identity: &G) -> Result<Vec<G>, NdrError> {
    check_index_set(indices, n)?;
    if indices.len() != tuple.len() {
        return Err(NdrError::BadIndexSet(format!(
            "{} indices for a tuple of length {}",
            indices.len(),
            tuple.len()
        )));
    }
    let mut out = vec![identity.clone(); n];
    for (&i, g) in indices.iter().zip(tuple) {
        out[i] = g.clone();
    }
    Ok(out)
}

/// Position of a tuple in the wedge of `C(n, q)` copies of the q-fold quotient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum WedgeCoords<G> {
    Basepoint,
    Summand { subset: Vec<usize>, tuple: Vec<G> },
}

pub fn wedge_quotient_coords<G: GroupElement>(tuple: &[G], q: usize) -> Result<WedgeCoords<G>, NdrError> {
    let n = tuple.len();
    if q > n {
        return Err(NdrError::BadArity { r: q, n });
    }
    let level = filtration_level(tuple);
    if level < n - q {
        return Err(NdrError::NotInStratum {
            identities: level,
            required: n - q,
        });
    }
    if level > n - q {
        return Ok(WedgeCoords::Basepoint);
    }
    let subset: Vec<usize> = (0..n).filter(|&i| tuple[i].identity_residual() > IDENTITY_TOL).collect();
    let reduced = subset.iter().map(|&i| tuple[i].clone()).collect();
    Ok(WedgeCoords::Summand { subset, tuple: reduced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{commutator_residual, exp_su2, geodesic_dist, TangentVector};
    use std::f64::consts::PI;

    fn ex(a: f64) -> UnitQuaternion {
        exp_su2(&TangentVector::new(a, 0.0, 0.0))
    }

    #[test]
    fn u_and_s_values() {
        let rep = NdrRepresentation::su2();
        let one = UnitQuaternion::identity();
        assert_eq!(rep.u(&one), 0.0);
        assert!((rep.u(&ex(PI / 8.0)) - 0.5).abs() < 1e-12);
        assert_eq!(rep.u(&UnitQuaternion::minus_one()), 1.0);
        assert_eq!(rep.s(&one), 1.0);
        assert!((rep.s(&ex(3.0 * PI / 8.0)) - 0.5).abs() < 1e-12);
        assert_eq!(rep.s(&UnitQuaternion::minus_one()), 0.0);
    }

    #[test]
    fn homotopy_values() {
        let rep = NdrRepresentation::su2();
        let g = ex(PI / 8.0);
        assert!(geodesic_dist(&rep.h(0.5, &g), &ex(PI / 16.0)) < 1e-12);
        assert!(geodesic_dist(&rep.h(1.0, &g), &UnitQuaternion::identity()) < 1e-12);
        for t in [0.0, 0.3, 1.0] {
            assert_eq!(rep.h(t, &UnitQuaternion::minus_one()), UnitQuaternion::minus_one());
        }
        // on the annulus h(1, g) moves part way and stays continuous
        let g = ex(3.0 * PI / 8.0);
        assert!(geodesic_dist(&rep.h(1.0, &g), &ex(3.0 * PI / 16.0)) < 1e-12);
    }

    #[test]
    fn matrix_representation() {
        let rep = NdrRepresentation::matrix(3, MatrixGroupTag::SO);
        let id = rep.identity().clone();
        assert_eq!(rep.u(&id), 0.0);
        let g = MatrixGroupElement::plane_rotation(3, 0, 1, 0.2, MatrixGroupTag::SO).unwrap();
        assert!((rep.u(&g) - 0.4 / std::f64::consts::LN_2).abs() < 1e-9);
        assert!(rep.h(1.0, &g).identity_residual() < 1e-12);
        let far = MatrixGroupElement::plane_rotation(3, 0, 1, 2.0, MatrixGroupTag::SO).unwrap();
        assert_eq!(rep.u(&far), 1.0);
        assert_eq!(rep.h(0.7, &far), far);
        assert!(NdrRepresentation::new(id, 4.0).is_err());
    }

    #[test]
    fn centralizers() {
        let rep = NdrRepresentation::su2();
        let probes = [ex(1.2), UnitQuaternion::j()];
        assert!(rep.check_centralizer_preservation(&ex(0.4), 0.9, &probes));
        assert!(rep.check_centralizer_preservation(&UnitQuaternion::minus_one(), 0.5, &probes));
    }

    #[test]
    fn product_branches() {
        let h = |s: f64| s;
        let j = |s: f64| s;
        let ((a, b), w, br) = product_ndr(0.5, 0.25, 0.8, h, j);
        assert_eq!(w, 0.25);
        assert_eq!(br, ProductBranch::FirstSlowed);
        assert!((a - 0.4).abs() < 1e-15 && b == 0.8);
        let ((a, b), _, br) = product_ndr(0.3, 0.3, 0.8, h, j);
        assert_eq!((a, b, br), (0.8, 0.8, ProductBranch::Tie));
        let (_, w, br) = product_ndr(0.0, 0.0, 0.8, h, j);
        assert_eq!((w, br), (0.0, ProductBranch::Tie));
        let ((a, b), w, _) = product_ndr(0.0, 0.5, 0.8, h, j);
        assert_eq!((a, b, w), (0.8, 0.0, 0.0));
    }

    #[test]
    fn fat_wedge() {
        assert!((fat_wedge_u(&[0.0, 0.4, 0.6], 2).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(fat_wedge_u(&[0.0, 0.0, 0.9], 2).unwrap(), 0.0);
        assert_eq!(fat_wedge_u(&[0.6, 0.0, 0.4], 2).unwrap(), fat_wedge_u(&[0.0, 0.4, 0.6], 2).unwrap());
        assert!(fat_wedge_u(&[0.1], 2).is_err());
        assert_eq!(fat_wedge_times(&[0.2, 0.4], 0.6), vec![0.6, 0.3]);

        let rep = NdrRepresentation::su2();
        let tuple = [ex(0.3), ex(1.1)];
        for t in [0.0, 0.25, 0.5, 1.0] {
            let out = rep.fat_wedge_h(t, &tuple);
            assert!(commutator_residual(&out[0], &out[1]) <= 1e-10);
        }
        let ones = vec![UnitQuaternion::identity(); 3];
        assert_eq!(rep.fat_wedge_h(0.7, &ones), ones);
    }

    #[test]
    fn filtration_and_coordinates() {
        let one = UnitQuaternion::identity();
        let (a, b, c) = (ex(0.3), ex(1.1), ex(2.0));
        assert_eq!(filtration_level(&[one, a, one]), 2);
        assert_eq!(filtration_level(&[one, one, one]), 3);
        assert_eq!(project_pi(&[a, b, c], &[0, 2]).unwrap(), vec![a, c]);
        assert_eq!(insert_si(&[a], &[1], 3, &one).unwrap(), vec![one, a, one]);
        assert!(project_pi(&[a, b], &[1, 0]).is_err());
        assert!(insert_si(&[a], &[3], 3, &one).is_err());
        assert_eq!(
            wedge_quotient_coords(&[one, a, b], 2).unwrap(),
            WedgeCoords::Summand {
                subset: vec![1, 2],
                tuple: vec![a, b]
            }
        );
        assert_eq!(wedge_quotient_coords(&[one, one, b], 2).unwrap(), WedgeCoords::Basepoint);
        assert!(matches!(
            wedge_quotient_coords(&[a, b, c], 2),
            Err(NdrError::NotInStratum { .. })
        ));
    }
}
