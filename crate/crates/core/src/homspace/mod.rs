//! Finitely presented groups and spaces of homomorphisms into compact Lie groups.

mod export;
mod presentation;
mod sampling;
mod sectors;

pub use export::{cloud_to_csv, cloud_to_json, CloudMetadata};
pub use presentation::{evaluate_word, free_product_assemble, is_hom, GroupPresentation, HomPoint, Word};
pub use sampling::{
    hom_point_from_torus, path_to_identity, sample_fiber_ei, sample_hom_zn_su2, sample_noncommuting,
    sample_rminus, Stratum, DEFAULT_GAP, MIN_ACCEPTANCE_RATE, MIN_ATTEMPTS_FOR_RATE,
};
pub use sectors::{enumerate_sectors, sector, sector_section, SectorLabel};

use thiserror::Error;

use crate::group::GroupError;

/// A candidate homomorphism is accepted when every relator evaluates
/// within this geodesic distance of the identity.
pub const HOM_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HomError {
    #[error("expected {expected} generator images, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("presentation must have at least one generator")]
    NoGenerators,
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("not a homomorphism (relator residual {residual:e})")]
    InvalidHom { residual: f64 },
    #[error("sector label violates a relator parity")]
    InconsistentLabel,
    #[error("acceptance rate {rate:e} after {attempts} attempts is below the rejection-sampling floor")]
    GapTooLarge { rate: f64, attempts: u64 },
    #[error("invalid stratum: {0}")]
    BadStratum(String),
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
