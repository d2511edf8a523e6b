//! Randomized checks of the NDR data on SU(2).

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{filtration_level, insert_si, project_pi, NdrRepresentation, IDENTITY_TOL};
use crate::group::{exp_su2, geodesic_dist, max_pairwise_commutator, GroupElement, UnitQuaternion};
use crate::homspace::hom_point_from_torus;
use crate::rng::{haar_su2, seeded, unit_vector3, SeededRng};

/// Bound on the pairwise commutators of a fat-wedge image of a commuting tuple.
pub const COMMUTING_TOL: f64 = 1e-10;

/// Perturbation size for the continuity checks and the allowed amplification.
pub const CONTINUITY_STEP: f64 = 1e-6;
pub const CONTINUITY_FACTOR: f64 = 10.0;

const PROBES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub axiom_trials: usize,
    pub centralizer_trials: usize,
    pub fat_wedge_trials: usize,
    pub equivariance_trials: usize,
    pub seed: u64,
}

impl SuiteConfig {
    /// `trials` axiom checks, a tenth as many centralizer and fat-wedge
    /// trials and a hundredth as many exact checks.
    pub fn scaled(trials: usize, seed: u64) -> Self {
        Self {
            axiom_trials: trials,
            centralizer_trials: (trials / 10).max(1),
            fat_wedge_trials: (trials / 10).max(1),
            equivariance_trials: (trials / 100).max(1),
            seed,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Tally {
    pub trials: usize,
    pub failures: usize,
    /// Largest residual seen, for checks that measure one.
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, residual: f64, describe: impl FnOnce() -> String) {
        self.trials += 1;
        self.max_residual = self.max_residual.max(residual);
        if !ok {
            self.failures += 1;
            self.first_failure.get_or_insert_with(describe);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub epsilon: f64,
    pub checks: BTreeMap<String, Tally>,
    pub failures: usize,
}

/// `exp(v)` with `|v|` uniform on `[0, radius]`.
fn ball_element(rng: &mut SeededRng, radius: f64) -> UnitQuaternion {
    let r = rng.random_range(0.0..=radius);
    exp_su2(&unit_vector3(rng).scale(r))
}

/// The identity, points just off it, Haar samples and points of the inner
/// ball and of the annulus where the homotopy moves things.
fn mixed_element(rng: &mut SeededRng, eps: f64) -> UnitQuaternion {
    match rng.random_range(0..8) {
        0 => UnitQuaternion::identity(),
        1 => exp_su2(&unit_vector3(rng).scale(1e-10)),
        2 | 3 => haar_su2(rng),
        4 | 5 => ball_element(rng, eps / 2.0),
        _ => {
            let r = rng.random_range(eps / 2.0..=eps);
            exp_su2(&unit_vector3(rng).scale(r))
        }
    }
}

/// A commuting n-tuple on a random torus with some coordinates forced to 1.
fn commuting_tuple(rng: &mut SeededRng, n: usize, eps: f64) -> Vec<UnitQuaternion> {
    let g = haar_su2(rng);
    let angles: Vec<f64> = (0..n)
        .map(|_| match rng.random_range(0..4) {
            0 => 0.0,
            1 => rng.random_range(-eps..eps),
            _ => rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
        })
        .collect();
    hom_point_from_torus(&g, &angles).images
}

fn dist_to_one(g: &UnitQuaternion) -> f64 {
    g.identity_residual()
}

pub fn property_suite(config: &SuiteConfig) -> SuiteReport {
    let rep = NdrRepresentation::su2();
    let eps = rep.epsilon();
    let one = UnitQuaternion::identity();
    let mut rng = seeded(config.seed);

    let mut axioms_zero = Tally::default();
    let mut axioms_start = Tally::default();
    let mut axioms_fix = Tally::default();
    let mut axioms_end = Tally::default();
    for _ in 0..config.axiom_trials {
        let g = mixed_element(&mut rng, eps);
        let t: f64 = rng.random_range(0.0..=1.0);
        let u = rep.u(&g);
        let d = dist_to_one(&g);
        axioms_zero.record(u != 0.0 || d <= IDENTITY_TOL, if u == 0.0 { d } else { 0.0 }, || {
            format!("u({g}) = 0 at distance {d:e} from 1")
        });
        let r0 = geodesic_dist(&rep.h(0.0, &g), &g);
        axioms_start.record(r0 <= IDENTITY_TOL, r0, || format!("h(0, {g}) moved by {r0:e}"));
        let r1 = dist_to_one(&rep.h(t, &one));
        axioms_fix.record(r1 <= IDENTITY_TOL, r1, || format!("h({t}, 1) at {r1:e} from 1"));
        if u < 1.0 {
            let r2 = dist_to_one(&rep.h(1.0, &g));
            axioms_end.record(r2 <= IDENTITY_TOL, r2, || format!("h(1, {g}) at {r2:e} from 1 with u = {u}"));
        }
    }

    let mut centralizer = Tally::default();
    for _ in 0..config.centralizer_trials {
        // the identity has all of SU(2) as centralizer, nothing to probe
        let g = loop {
            let g = mixed_element(&mut rng, eps);
            if dist_to_one(&g) > IDENTITY_TOL {
                break g;
            }
        };
        let t: f64 = rng.random_range(0.0..1.0);
        // half the probes on the torus through g, half Haar
        let axis = g.vector().normalized();
        let probes: Vec<UnitQuaternion> = (0..PROBES)
            .map(|k| match axis {
                Some(a) if k % 2 == 0 => exp_su2(&a.scale(rng.random_range(-3.0..3.0))),
                _ => haar_su2(&mut rng),
            })
            .collect();
        let ok = rep.check_centralizer_preservation(&g, t, &probes);
        centralizer.record(ok, 0.0, || format!("centralizer changes at g = {g}, t = {t}"));
    }

    let mut commuting = Tally::default();
    let mut strata = Tally::default();
    for _ in 0..config.fat_wedge_trials {
        let n = rng.random_range(2..=4);
        let tuple = commuting_tuple(&mut rng, n, eps);
        let t: f64 = rng.random_range(0.0..=1.0);
        let out = rep.fat_wedge_h(t, &tuple);
        let res = max_pairwise_commutator(&out);
        commuting.record(res <= COMMUTING_TOL, res, || format!("fat wedge at t = {t} breaks commutation: {res:e}"));
        let (before, after) = (filtration_level(&tuple), filtration_level(&out));
        strata.record(after >= before, 0.0, || {
            format!("fat wedge at t = {t} lowers the filtration level from {before} to {after}")
        });
    }

    let mut equivariance = Tally::default();
    let mut retract = Tally::default();
    let mut continuity = Tally::default();
    for _ in 0..config.equivariance_trials {
        let n = rng.random_range(2..=5);
        let tuple = commuting_tuple(&mut rng, n, eps);
        let t: f64 = rng.random_range(0.0..=1.0);
        let r = rng.random_range(1..=n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let permuted: Vec<UnitQuaternion> = perm.iter().map(|&i| tuple[i]).collect();
        let image = rep.fat_wedge_h(t, &tuple);
        let image_of_permuted = rep.fat_wedge_h(t, &permuted);
        let h_ok = perm.iter().enumerate().all(|(k, &i)| image_of_permuted[k] == image[i]);
        let u_ok = rep.fat_wedge_u(&tuple, r) == rep.fat_wedge_u(&permuted, r);
        equivariance.record(h_ok && u_ok, 0.0, || format!("permutation {perm:?} at t = {t} is not equivariant"));

        let mut indices: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if indices.is_empty() {
            indices.push(rng.random_range(0..n));
        }
        let sub: Vec<UnitQuaternion> = indices.iter().map(|&i| tuple[i]).collect();
        let ok = match insert_si(&sub, &indices, n, &one) {
            Ok(inserted) => {
                let res = max_pairwise_commutator(&inserted);
                project_pi(&inserted, &indices).is_ok_and(|back| back == sub) && res <= COMMUTING_TOL
            }
            Err(_) => false,
        };
        retract.record(ok, 0.0, || format!("P_I S_I fails for I = {indices:?}"));

        // across the shells |y| = ε/2 and |y| = ε
        let shell = if rng.random_bool(0.5) { eps / 2.0 } else { eps };
        let axis = unit_vector3(&mut rng);
        let a = exp_su2(&axis.scale(shell - CONTINUITY_STEP / 2.0));
        let b = exp_su2(&axis.scale(shell + CONTINUITY_STEP / 2.0));
        let input = geodesic_dist(&a, &b);
        let du = (rep.u(&a) - rep.u(&b)).abs();
        let ds = (rep.s(&a) - rep.s(&b)).abs();
        let dh = geodesic_dist(&rep.h(t, &a), &rep.h(t, &b));
        let worst = du.max(ds).max(dh) / input;
        continuity.record(worst <= CONTINUITY_FACTOR, worst, || {
            format!("jump of {worst} times the input at |y| = {shell}, t = {t}")
        });
    }

    let mut checks = BTreeMap::new();
    checks.insert("axiom_u_zero_only_at_identity".into(), axioms_zero);
    checks.insert("axiom_h0_identity_map".into(), axioms_start);
    checks.insert("axiom_h_fixes_identity".into(), axioms_fix);
    checks.insert("axiom_h1_retracts".into(), axioms_end);
    checks.insert("centralizer_preservation".into(), centralizer);
    checks.insert("fat_wedge_commuting".into(), commuting);
    checks.insert("fat_wedge_strata".into(), strata);
    checks.insert("permutation_equivariance".into(), equivariance);
    checks.insert("projection_after_insertion".into(), retract);
    checks.insert("shell_continuity".into(), continuity);
    let failures = checks.values().map(|c| c.failures).sum();
    SuiteReport {
        config: *config,
        epsilon: eps,
        checks,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let r = property_suite(&SuiteConfig::scaled(2000, 3));
        assert_eq!(r.failures, 0, "{r:#?}");
        assert_eq!(r.checks["axiom_h0_identity_map"].trials, 2000);
        assert!(r.checks["axiom_h1_retracts"].trials > 500);
        assert_eq!(r.checks["permutation_equivariance"].trials, 20);
        assert_eq!(r.checks["centralizer_preservation"].trials, 200);
        assert_eq!(r, property_suite(&SuiteConfig::scaled(2000, 3)));
    }
}
