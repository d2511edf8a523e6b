//! SU(2) arithmetic, sampling of Hom spaces and paths to the trivial
//! homomorphism.

use commtop::group::{
    commutator, commutator_residual, exp_su2, geodesic_dist, log_su2, sim_diagonalize, torus_through, TangentVector,
    UnitQuaternion,
};
use commtop::homspace::{
    is_hom, path_to_identity, sample_fiber_ei, sample_hom_zn_su2, sample_noncommuting, sample_rminus,
    GroupPresentation, HomError, Stratum,
};
use proptest::prelude::*;

const PATH_TOL: f64 = 1e-11;

fn quaternion() -> impl Strategy<Value = UnitQuaternion> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("away from zero", |(w, x, y, z)| w * w + x * x + y * y + z * z > 1e-3)
        .prop_map(|(w, x, y, z)| UnitQuaternion::normalize(w, x, y, z))
}

fn small_vector() -> impl Strategy<Value = TangentVector> {
    (-1.5f64..1.5, -1.5f64..1.5, -1.5f64..1.5).prop_map(|(x, y, z)| TangentVector::new(x, y, z))
}

proptest! {
    #[test]
    fn metric_is_bi_invariant(a in quaternion(), b in quaternion(), g in quaternion()) {
        let d = geodesic_dist(&a, &b);
        prop_assert!((geodesic_dist(&g.mul(&a), &g.mul(&b)) - d).abs() < 1e-9);
        prop_assert!((geodesic_dist(&a.mul(&g), &b.mul(&g)) - d).abs() < 1e-9);
        prop_assert!((geodesic_dist(&a.inverse(), &b.inverse()) - d).abs() < 1e-9);
        prop_assert!(d <= std::f64::consts::PI + 1e-12);
    }

    #[test]
    fn triangle_inequality(a in quaternion(), b in quaternion(), c in quaternion()) {
        prop_assert!(geodesic_dist(&a, &c) <= geodesic_dist(&a, &b) + geodesic_dist(&b, &c) + 1e-9);
    }

    #[test]
    fn log_inverts_exp(v in small_vector()) {
        let back = log_su2(&exp_su2(&v)).unwrap();
        prop_assert!(back.sub(&v).norm() < 1e-9);
    }

    #[test]
    fn commutator_of_inverses(a in quaternion(), b in quaternion()) {
        // [a, b]⁻¹ = [b, a]
        let lhs = commutator(&a, &b).inverse();
        prop_assert!(geodesic_dist(&lhs, &commutator(&b, &a)) < 1e-9);
        prop_assert!(commutator_residual(&a, &a) < 1e-12);
    }

    #[test]
    fn torus_tuples_diagonalize(g in quaternion(), angles in prop::collection::vec(-3.0f64..3.0, 1..5)) {
        let tuple: Vec<UnitQuaternion> =
            angles.iter().map(|&t| exp_su2(&TangentVector::new(t, 0.0, 0.0)).conjugate_by(&g)).collect();
        let diag = sim_diagonalize(&tuple, 1e-9).unwrap();
        for (a, b) in diag.reconstruct().iter().zip(&tuple) {
            prop_assert!(geodesic_dist(a, b) < 1e-9);
        }
    }

    #[test]
    fn torus_contains_its_element(g in quaternion()) {
        prop_assume!(g.vector().norm() > 1e-6);
        prop_assert!(torus_through(&g).unwrap().distance(&g) < 1e-9);
    }
}

#[test]
fn paths_to_identity_stay_in_hom() {
    for n in [2, 3] {
        let presentation = GroupPresentation::free_abelian(n).unwrap();
        let points = sample_hom_zn_su2(n, 1000, 40 + n as u64).unwrap();
        let mut worst: f64 = 0.0;
        for p in &points {
            let path = path_to_identity(p, 16).unwrap();
            assert!(path[0].images.iter().all(|q| *q == UnitQuaternion::identity()));
            for (a, b) in path.last().unwrap().images.iter().zip(&p.images) {
                assert!(geodesic_dist(a, b) < 1e-9);
            }
            for step in &path {
                let (ok, residual) = is_hom(&presentation, &step.images).unwrap();
                assert!(ok && residual <= PATH_TOL, "residual {residual}");
                worst = worst.max(residual);
            }
        }
        assert!(worst <= PATH_TOL);
    }
}

#[test]
fn samplers_respect_their_loci() {
    let z2 = GroupPresentation::free_abelian(2).unwrap();
    for p in sample_hom_zn_su2(2, 200, 1).unwrap() {
        assert!(is_hom(&z2, &p.images).unwrap().0);
    }
    for t in sample_noncommuting(2, Stratum::Pair(0, 1), 200, 2, 0.1).unwrap() {
        let (ok, residual) = is_hom(&z2, &t).unwrap();
        assert!(!ok && residual >= 0.1);
    }
    for (a, b) in sample_rminus(200, 3) {
        assert!(geodesic_dist(&commutator(&a, &b), &UnitQuaternion::minus_one()) < 1e-9);
    }
    let (zj, zk) = (UnitQuaternion::j(), UnitQuaternion::k());
    let (tj, tk) = (torus_through(&zj).unwrap(), torus_through(&zk).unwrap());
    for q in sample_fiber_ei(&zj, &zk, 0.6, 200, 4).unwrap() {
        assert!(tj.distance(&q) >= 0.6 && tk.distance(&q) >= 0.6);
    }
}

#[test]
fn fiber_sampler_refuses_covering_neighbourhoods() {
    let (zj, zk) = (UnitQuaternion::j(), UnitQuaternion::k());
    assert!(matches!(sample_fiber_ei(&zj, &zk, 1.55, 10, 1), Err(HomError::GapTooLarge { .. })));
}
