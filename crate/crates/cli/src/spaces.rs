//! Point clouds for `persist` and their default persistence settings.

use std::fmt;
use std::str::FromStr;

use commtop::group::UnitQuaternion;
use commtop::homspace::{sample_fiber_ei, sample_hom_zn_su2, sample_rminus, HomError};
use commtop::persistence::{Filtration, PersistConfig, PointCloud, DEFAULT_BUDGET};
use commtop::rng::{haar_su2, seeded};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    /// Haar samples of SU(2) = S³.
    Su2,
    /// Pairs of orthogonal trace-zero elements, a copy of SO(3).
    Rminus,
    /// SU(2) minus neighbourhoods of the circles through i and j.
    EiFiber,
    /// Commuting n-tuples.
    HomZn,
}

impl Space {
    pub const ALL: [Space; 4] = [Space::Su2, Space::Rminus, Space::EiFiber, Space::HomZn];

    pub fn name(self) -> &'static str {
        match self {
            Space::Su2 => "su2",
            Space::Rminus => "rminus",
            Space::EiFiber => "ei-fiber",
            Space::HomZn => "hom-zn",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Space::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown space {s:?}, expected one of su2, rminus, ei-fiber, hom-zn"))
    }
}

/// Sampling and persistence settings for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceRun {
    pub space: Space,
    pub points: usize,
    /// Distance kept from the two circles, for `ei-fiber`.
    pub delta: f64,
    /// Tuple length, for `hom-zn`.
    pub n: usize,
    pub persist: PersistConfig,
}

/// Fibre of the commutator map sampled away from the circles through these.
pub fn fiber_axes() -> (UnitQuaternion, UnitQuaternion) {
    (UnitQuaternion::i(), UnitQuaternion::j())
}

pub const FIBER_DELTA: f64 = 0.6;

/// Settings under which the plateau Betti numbers are stable across seeds.
pub fn defaults(space: Space, seed: u64) -> SpaceRun {
    let (points, landmarks, max_scale, max_dim) = match space {
        Space::Su2 => (2000, 120, 0.9, 3),
        Space::Rminus => (3000, 200, 1.0, 3),
        Space::EiFiber => (3000, 200, 0.9, 2),
        Space::HomZn => (3000, 200, 1.0, 3),
    };
    SpaceRun {
        space,
        points,
        delta: FIBER_DELTA,
        n: 2,
        persist: PersistConfig {
            landmarks,
            filtration: Filtration::Witness { nu: 0 },
            max_scale,
            max_dim,
            fields: vec![2, 3],
            budget: DEFAULT_BUDGET,
            seed,
        },
    }
}

pub fn sample(run: &SpaceRun) -> Result<PointCloud, String> {
    let seed = run.persist.seed;
    let points: Vec<Vec<UnitQuaternion>> = match run.space {
        Space::Su2 => {
            let mut rng = seeded(seed);
            (0..run.points).map(|_| vec![haar_su2(&mut rng)]).collect()
        }
        Space::Rminus => sample_rminus(run.points, seed).into_iter().map(|(a, b)| vec![a, b]).collect(),
        Space::EiFiber => {
            let (zj, zk) = fiber_axes();
            sample_fiber_ei(&zj, &zk, run.delta, run.points, seed)
                .map_err(|e: HomError| e.to_string())?
                .into_iter()
                .map(|q| vec![q])
                .collect()
        }
        Space::HomZn => sample_hom_zn_su2(run.n, run.points, seed)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|p| p.images)
            .collect(),
    };
    let mut cloud = PointCloud::new(points, run.space.name(), seed).map_err(|e| e.to_string())?;
    match run.space {
        Space::EiFiber => cloud = cloud.with_parameter("delta", run.delta),
        Space::HomZn => cloud = cloud.with_parameter("n", run.n as f64),
        _ => {}
    }
    Ok(cloud)
}
