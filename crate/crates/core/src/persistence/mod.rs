//! Persistent homology over prime fields for point clouds in SU(2)^m.

mod cloud;
mod complex;
mod plateau;
mod reduce;

pub use cloud::{maxmin_landmarks, product_metric, tuple_distance, witness_matrix, DistanceMatrix, Landmarks, PointCloud};
pub use complex::{rips_complex, truncated_rips, FilteredComplex, DEFAULT_BUDGET, MAX_DIM};
pub use plateau::{betti_at_plateau, connectivity_scale, torsion_detect, DegreeComparison, Plateau, TorsionReport, PLATEAU_FACTOR};
pub use reduce::{reduce, Bar, Barcode};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PersistenceError {
    #[error("invalid point cloud: {0}")]
    InvalidCloud(String),
    #[error("invalid filtered complex: {0}")]
    InvalidComplex(String),
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error("complex needs at least {simplices} simplices, budget is {budget}")]
    Budget { simplices: u64, budget: u64 },
    #[error("no stable plateau in degree {degree}: longest window {length} against median bar length {median}")]
    Unstable { degree: usize, length: f64, median: f64 },
}

/// How landmark pairs are weighted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Filtration {
    /// Distances between landmarks.
    Rips,
    /// Lazy witness values with the given ν, see [`witness_matrix`].
    Witness { nu: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistConfig {
    pub landmarks: usize,
    pub filtration: Filtration,
    /// Simplices of dimension ≥ 2 stop here; edges are all kept.
    pub max_scale: f64,
    /// Homology is reported in degrees below this.
    pub max_dim: usize,
    pub fields: Vec<u64>,
    pub budget: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistReport {
    pub config: PersistConfig,
    pub space: String,
    pub points: usize,
    pub covering_radius: f64,
    pub simplices: usize,
    pub barcodes: Vec<Barcode>,
    pub torsion: TorsionReport,
}

impl PersistReport {
    /// Plateau Betti numbers of the reference field by degree.
    pub fn betti(&self) -> Vec<usize> {
        self.torsion.degrees.iter().map(|d| d.plateau.betti).collect()
    }
}

/// Landmarks, flag complex on the landmarks, one barcode per field and the
/// field comparison in degrees `0..max_dim`.
pub fn run_persistence(cloud: &PointCloud, config: &PersistConfig) -> Result<PersistReport, PersistenceError> {
    if config.fields.is_empty() {
        return Err(PersistenceError::BadArgument("no fields given".into()));
    }
    if config.max_dim == 0 {
        return Err(PersistenceError::BadArgument("max_dim must be at least 1".into()));
    }
    // every landmark pair becomes an edge, so this is a lower bound
    let k = config.landmarks as u64;
    let floor = k + k * k.saturating_sub(1) / 2;
    if floor > config.budget {
        return Err(PersistenceError::Budget {
            simplices: floor,
            budget: config.budget,
        });
    }
    let landmarks = maxmin_landmarks(cloud, config.landmarks, config.seed)?;
    let weights = match config.filtration {
        Filtration::Rips => product_metric(&cloud.select(&landmarks.indices)),
        Filtration::Witness { nu } => witness_matrix(cloud, &landmarks.indices, nu)?,
    };
    let edge_scale = (0..weights.len())
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| weights.get(i, j))
        .fold(config.max_scale, f64::max);
    let complex = truncated_rips(&weights, edge_scale, config.max_scale, config.max_dim, config.budget)?;
    let mut barcodes = Vec::new();
    for &p in &config.fields {
        let mut b = reduce(&complex, p)?;
        b.truncate(1, config.max_scale);
        // degrees at the truncation dimension see only a skeleton
        b.bars.retain(|&d, _| d < config.max_dim);
        b.exact_until.retain(|&d, _| d < config.max_dim);
        b.max_degree = config.max_dim - 1;
        barcodes.push(b);
    }
    let degrees: Vec<usize> = (0..config.max_dim).collect();
    let torsion = torsion_detect(&barcodes, &degrees)?;
    Ok(PersistReport {
        config: config.clone(),
        space: cloud.space.clone(),
        points: cloud.len(),
        covering_radius: landmarks.covering_radius,
        simplices: complex.len(),
        barcodes,
        torsion,
    })
}
