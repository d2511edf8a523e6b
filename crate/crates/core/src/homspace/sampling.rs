//! Seeded samplers for Hom(Z^m, SU(2)), its complement strata and R₋.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{HomError, HomPoint, HOM_TOL};
use crate::group::{
    commutator_residual, max_pairwise_commutator, sim_diagonalize, torus_through, Diagonalization,
    UnitQuaternion,
};
use crate::rng::{gaussian3, haar_su2, seeded, unit_vector3, SeededRng};

/// Default commutator gap for the non-commuting strata, in radians.
pub const DEFAULT_GAP: f64 = 0.1;

/// Rejection sampling gives up once this many attempts have been made
/// at an acceptance rate below [`MIN_ACCEPTANCE_RATE`].
pub const MIN_ATTEMPTS_FOR_RATE: u64 = 100_000;
pub const MIN_ACCEPTANCE_RATE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stratum {
    /// Some pair fails to commute by at least the gap.
    Any,
    /// The given (0-based) pair fails to commute by at least the gap.
    Pair(usize, usize),
    /// Each of the first three entries pairwise.
    Triple123,
}

impl Stratum {
    fn validate(self, m: usize) -> Result<(), HomError> {
        match self {
            Stratum::Any => Ok(()),
            Stratum::Pair(j, k) if j != k && j < m && k < m => Ok(()),
            Stratum::Pair(j, k) => Err(HomError::BadStratum(format!("pair ({j}, {k}) for m = {m}"))),
            Stratum::Triple123 if m >= 3 => Ok(()),
            Stratum::Triple123 => Err(HomError::BadStratum(format!("triple stratum needs m >= 3, got {m}"))),
        }
    }

    fn accepts(self, tuple: &[UnitQuaternion], gap: f64) -> bool {
        let far = |a: usize, b: usize| commutator_residual(&tuple[a], &tuple[b]) >= gap;
        match self {
            Stratum::Any => max_pairwise_commutator(tuple) >= gap,
            Stratum::Pair(j, k) => far(j, k),
            Stratum::Triple123 => far(0, 1) && far(0, 2) && far(1, 2),
        }
    }
}

fn rejection_sample<T>(
    rng: &mut SeededRng,
    count: usize,
    mut draw: impl FnMut(&mut SeededRng) -> T,
    accept: impl Fn(&T) -> bool,
) -> Result<Vec<T>, HomError> {
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0u64;
    while out.len() < count {
        let candidate = draw(rng);
        attempts += 1;
        if accept(&candidate) {
            out.push(candidate);
        }
        if attempts >= MIN_ATTEMPTS_FOR_RATE {
            let rate = out.len() as f64 / attempts as f64;
            if rate < MIN_ACCEPTANCE_RATE {
                return Err(HomError::GapTooLarge { rate, attempts });
            }
        }
    }
    Ok(out)
}

/// The tuple `(g exp(θ₁î) g⁻¹, …)` as a point of Hom(Zⁿ, SU(2)).
pub fn hom_point_from_torus(g: &UnitQuaternion, angles: &[f64]) -> HomPoint<UnitQuaternion> {
    let images = Diagonalization {
        conjugator: *g,
        angles: angles.to_vec(),
    }
    .reconstruct();
    let residual = max_pairwise_commutator(&images);
    HomPoint { images, residual }
}

pub fn sample_hom_zn_su2(n: usize, count: usize, seed: u64) -> Result<Vec<HomPoint<UnitQuaternion>>, HomError> {
    if n == 0 {
        return Err(HomError::BadArgument("n must be at least 1".into()));
    }
    let mut rng = seeded(seed);
    let tau = std::f64::consts::TAU;
    Ok((0..count)
        .map(|_| {
            let g = haar_su2(&mut rng);
            let angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..tau)).collect();
            hom_point_from_torus(&g, &angles)
        })
        .collect())
}

/// Pairs of orthogonal pure unit quaternions, uniformly distributed on R₋.
pub fn sample_rminus(count: usize, seed: u64) -> Vec<(UnitQuaternion, UnitQuaternion)> {
    let mut rng = seeded(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = unit_vector3(&mut rng);
        let v = gaussian3(&mut rng);
        let b = v.sub(&a.scale(v.dot(&a)));
        if b.norm() < 1e-8 {
            continue;
        }
        let b = b.scale(1.0 / b.norm());
        // one more pass against the rounding in the first projection
        let b = b.sub(&a.scale(b.dot(&a)));
        let b = b.scale(1.0 / b.norm());
        out.push((UnitQuaternion::pure(a), UnitQuaternion::pure(b)));
    }
    out
}

/// Haar-uniform m-tuples in the requested stratum, by rejection.
pub fn sample_noncommuting(
    m: usize,
    stratum: Stratum,
    count: usize,
    seed: u64,
    gap: f64,
) -> Result<Vec<Vec<UnitQuaternion>>, HomError> {
    if m < 2 {
        return Err(HomError::BadArgument("m must be at least 2".into()));
    }
    if !(gap > 0.0) {
        return Err(HomError::BadArgument("gap must be positive".into()));
    }
    stratum.validate(m)?;
    let mut rng = seeded(seed);
    rejection_sample(
        &mut rng,
        count,
        |r| (0..m).map(|_| haar_su2(r)).collect::<Vec<_>>(),
        |t| stratum.accepts(t, gap),
    )
}

/// Haar samples at distance at least `delta` from the tori through `zj` and `zk`.
pub fn sample_fiber_ei(
    zj: &UnitQuaternion,
    zk: &UnitQuaternion,
    delta: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<UnitQuaternion>, HomError> {
    let tj = torus_through(zj)?;
    let tk = torus_through(zk)?;
    if commutator_residual(zj, zk) <= HOM_TOL {
        return Err(HomError::BadArgument("fiber needs non-commuting elements".into()));
    }
    let mut rng = seeded(seed);
    rejection_sample(&mut rng, count, haar_su2, |q| {
        tj.distance(q) >= delta && tk.distance(q) >= delta
    })
}

/// Path from the trivial homomorphism to `hp` inside a single maximal torus.
pub fn path_to_identity(
    hp: &HomPoint<UnitQuaternion>,
    steps: usize,
) -> Result<Vec<HomPoint<UnitQuaternion>>, HomError> {
    if steps == 0 {
        return Err(HomError::BadArgument("steps must be at least 1".into()));
    }
    if !hp.is_valid() {
        return Err(HomError::InvalidHom { residual: hp.residual });
    }
    let diag = sim_diagonalize(&hp.images, HOM_TOL)?;
    Ok((0..=steps)
        .map(|s| {
            if s == 0 {
                return HomPoint {
                    images: vec![UnitQuaternion::identity(); hp.images.len()],
                    residual: 0.0,
                };
            }
            let images = diag.at(s as f64 / steps as f64);
            let residual = max_pairwise_commutator(&images);
            HomPoint { images, residual }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{commutator, geodesic_dist};

    #[test]
    fn torus_samples_commute() {
        let pts = sample_hom_zn_su2(3, 500, 7).unwrap();
        assert!(pts.iter().all(|p| p.residual <= 1e-11 && p.images.len() == 3));
        assert_eq!(pts, sample_hom_zn_su2(3, 500, 7).unwrap());
        assert_ne!(pts, sample_hom_zn_su2(3, 500, 8).unwrap());
    }

    #[test]
    fn zero_angles_give_the_trivial_tuple() {
        let g = UnitQuaternion::normalize(0.2, 0.5, -0.4, 0.7);
        let hp = hom_point_from_torus(&g, &[0.0, 0.0, 0.0]);
        for q in &hp.images {
            assert!(geodesic_dist(q, &UnitQuaternion::identity()) < 1e-15);
        }
    }

    #[test]
    fn rminus_samples_anticommute() {
        for (a, b) in sample_rminus(2000, 3) {
            assert!(a.trace().abs() <= 1e-11 && b.trace().abs() <= 1e-11);
            assert!(a.vector().dot(&b.vector()).abs() <= 1e-11);
            assert!(geodesic_dist(&commutator(&a, &b), &UnitQuaternion::minus_one()) <= 1e-11);
        }
    }

    #[test]
    fn strata_respect_the_gap() {
        let pairs = sample_noncommuting(2, Stratum::Any, 300, 1, 0.1).unwrap();
        assert!(pairs.iter().all(|t| commutator_residual(&t[0], &t[1]) >= 0.1));
        let triples = sample_noncommuting(3, Stratum::Triple123, 300, 2, 0.1).unwrap();
        for t in &triples {
            assert!(commutator_residual(&t[0], &t[1]) >= 0.1);
            assert!(commutator_residual(&t[0], &t[2]) >= 0.1);
            assert!(commutator_residual(&t[1], &t[2]) >= 0.1);
        }
        let pair = sample_noncommuting(3, Stratum::Pair(0, 2), 300, 2, 0.5).unwrap();
        assert!(pair.iter().all(|t| commutator_residual(&t[0], &t[2]) >= 0.5));
    }

    #[test]
    fn impossible_gap_is_reported() {
        let r = sample_noncommuting(2, Stratum::Any, 10, 1, 3.2);
        assert!(matches!(r, Err(HomError::GapTooLarge { .. })));
    }

    #[test]
    fn bad_strata() {
        assert!(sample_noncommuting(2, Stratum::Triple123, 1, 0, 0.1).is_err());
        assert!(sample_noncommuting(2, Stratum::Pair(0, 2), 1, 0, 0.1).is_err());
        assert!(sample_noncommuting(2, Stratum::Pair(1, 1), 1, 0, 0.1).is_err());
        assert!(sample_noncommuting(1, Stratum::Any, 1, 0, 0.1).is_err());
        assert!(sample_noncommuting(2, Stratum::Any, 1, 0, 0.0).is_err());
    }

    #[test]
    fn fiber_samples_avoid_both_circles() {
        let (i, j) = (UnitQuaternion::i(), UnitQuaternion::j());
        let pts = sample_fiber_ei(&i, &j, 0.15, 500, 4).unwrap();
        let (ti, tj) = (torus_through(&i).unwrap(), torus_through(&j).unwrap());
        assert!(pts.iter().all(|q| ti.distance(q) >= 0.15 && tj.distance(q) >= 0.15));
        assert!(sample_fiber_ei(&i, &i, 0.15, 5, 4).is_err());
        assert!(sample_fiber_ei(&UnitQuaternion::identity(), &j, 0.15, 5, 4).is_err());
    }

    #[test]
    fn paths_to_identity() {
        let trivial = hom_point_from_torus(&UnitQuaternion::identity(), &[0.0, 0.0]);
        let path = path_to_identity(&trivial, 8).unwrap();
        assert!(path.iter().all(|p| p.images == trivial.images));

        for hp in sample_hom_zn_su2(3, 50, 11).unwrap() {
            let path = path_to_identity(&hp, 64).unwrap();
            assert_eq!(path.len(), 65);
            assert!(path[0].images.iter().all(|q| *q == UnitQuaternion::identity()));
            assert!(path.iter().all(|p| p.residual <= 1e-11));
            for (a, b) in path[64].images.iter().zip(&hp.images) {
                assert!(geodesic_dist(a, b) <= 1e-9);
            }
        }

        let bad = HomPoint {
            images: vec![UnitQuaternion::i(), UnitQuaternion::j()],
            residual: 0.0,
        };
        assert!(matches!(
            path_to_identity(&bad, 4),
            Err(HomError::Group(crate::group::GroupError::NotCommuting { .. }))
        ));
    }
}
