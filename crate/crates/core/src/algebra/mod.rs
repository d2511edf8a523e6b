//! Exact integral algebra: Smith normal form, homology of chain complexes,
//! long exact sequences, duality, products and Poincaré series.

mod chain;
mod group;
mod les;
mod matrix;
mod mvss;
mod ops;
mod poincare;
mod snf;

pub use chain::{chain_betti_mod_p, chain_betti_rational, chain_homology, rp3_cellular, ChainComplex};
pub use group::{subquotient, z_and_2, AbelianGroup, GradedAbelianGroup, Homomorphism};
pub use les::{
    resolve_extension, solve_pair_sequence, ExactSequence, Extension, MapDescriptor, PairDegree,
    PairSequenceReport, SlotSolution, Term,
};
pub use matrix::IntegerMatrix;
pub use mvss::{mv_spectral_sequence, mv_spectral_sequence_columns, MvResult};
pub use ops::{
    cohomology_from_homology, homology_from_cohomology, kunneth, lefschetz_dual, point,
    product_of_three_spheres, smash, so3, sphere, suspend, sw_dual, torus, wedge, wedge_all,
};
pub use poincare::{complement_torus_series, Field, PoincarePolynomial, Variance};
pub use snf::{kernel_lattice, smith_normal_form, Lattice, SmithForm};

pub(crate) use matrix::mod_inverse;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("boundary maps do not square to zero at degree {degree}")]
    NotAComplex { degree: i32 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix does not define a homomorphism between the given groups")]
    NotWellDefined,
    #[error("inconsistent map data: {0}")]
    InconsistentMap(String),
    #[error("underdetermined: {0}")]
    Underdetermined(String),
    #[error("extension in degree {degree} is not determined; candidates {candidates:?}")]
    AmbiguousExtension { degree: i32, candidates: Vec<String> },
    #[error("spectral sequence has {columns} columns, at most 3 are supported")]
    ColumnsExceeded { columns: usize },
    #[error("invariant factor does not fit in 64 bits")]
    Overflow,
}
