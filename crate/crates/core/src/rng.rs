//! Seeded randomness shared by the samplers and property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::group::{TangentVector, UnitQuaternion};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-random element of SU(2): a normalized standard Gaussian in R⁴.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> UnitQuaternion {
    loop {
        let v: [f64; 4] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-24 {
            return UnitQuaternion::normalize(v[0], v[1], v[2], v[3]);
        }
    }
}

/// Uniform point on the unit 2-sphere.
pub fn unit_vector3<R: Rng + ?Sized>(rng: &mut R) -> TangentVector {
    loop {
        let v = gaussian3(rng);
        if let Some(u) = v.normalized() {
            if v.norm() > 1e-12 {
                return u;
            }
        }
    }
}

pub fn gaussian3<R: Rng + ?Sized>(rng: &mut R) -> TangentVector {
    TangentVector::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}
