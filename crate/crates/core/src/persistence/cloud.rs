//! Point clouds in SU(2)^m, the max-coordinate metric and landmark selection.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::PersistenceError;
use crate::group::{geodesic_dist, UnitQuaternion, UNIT_TOL};
use crate::rng::seeded;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    points: Vec<Vec<UnitQuaternion>>,
    pub space: String,
    pub seed: u64,
    pub parameters: BTreeMap<String, f64>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<UnitQuaternion>>, space: impl Into<String>, seed: u64) -> Result<Self, PersistenceError> {
        let arity = points.first().map_or(0, Vec::len);
        for (i, p) in points.iter().enumerate() {
            if p.len() != arity {
                return Err(PersistenceError::InvalidCloud(format!(
                    "point {i} has arity {}, expected {arity}",
                    p.len()
                )));
            }
            if let Some(q) = p.iter().find(|q| (q.norm_squared() - 1.0).abs() > UNIT_TOL) {
                return Err(PersistenceError::InvalidCloud(format!("point {i} has non-unit entry {q}")));
            }
        }
        Ok(Self {
            points,
            space: space.into(),
            seed,
            parameters: BTreeMap::new(),
        })
    }

    pub fn with_parameter(mut self, key: &str, value: f64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn points(&self) -> &[Vec<UnitQuaternion>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        tuple_distance(&self.points[a], &self.points[b])
    }

    /// Sub-cloud on the given indices, in that order.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self {
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            space: self.space.clone(),
            seed: self.seed,
            parameters: self.parameters.clone(),
        }
    }
}

/// Max over coordinates of the geodesic distance.
pub fn tuple_distance(a: &[UnitQuaternion], b: &[UnitQuaternion]) -> f64 {
    a.iter().zip(b).map(|(x, y)| geodesic_dist(x, y)).fold(0.0, f64::max)
}

/// Dense symmetric distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64 + Sync) -> Self {
        let mut data = vec![0.0; n * n];
        data.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, row)| {
            for (j, slot) in row.iter_mut().enumerate() {
                if i != j {
                    // evaluate with the smaller index first so both halves agree bitwise
                    *slot = if i < j { f(i, j) } else { f(j, i) };
                }
            }
        });
        Self { n, data }
    }

    /// From a full square table; must be symmetric with zero diagonal.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, PersistenceError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n || r[i] != 0.0 {
                return Err(PersistenceError::InvalidCloud(format!("row {i} is not a distance row")));
            }
            data.extend_from_slice(r);
        }
        let m = Self { n, data };
        for i in 0..n {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) || m.get(i, j) < 0.0 {
                    return Err(PersistenceError::InvalidCloud(format!("entries ({i}, {j}) are not symmetric")));
                }
            }
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }
}

pub fn product_metric(cloud: &PointCloud) -> DistanceMatrix {
    DistanceMatrix::from_fn(cloud.len(), |i, j| cloud.distance(i, j))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Landmarks {
    pub indices: Vec<usize>,
    /// Largest distance from a cloud point to its nearest landmark.
    pub covering_radius: f64,
}

/// Greedy maxmin selection. The first landmark is drawn from `seed`; ties
/// go to the smallest index.
pub fn maxmin_landmarks(cloud: &PointCloud, k: usize, seed: u64) -> Result<Landmarks, PersistenceError> {
    let n = cloud.len();
    if k > n {
        return Err(PersistenceError::BadArgument(format!("{k} landmarks requested from {n} points")));
    }
    if k == 0 {
        return Ok(Landmarks {
            indices: vec![],
            covering_radius: f64::INFINITY,
        });
    }
    let first = seeded(seed).random_range(0..n);
    let mut indices = vec![first];
    let mut nearest: Vec<f64> = (0..n).into_par_iter().map(|i| cloud.distance(first, i)).collect();
    while indices.len() < k {
        let (next, _) = nearest
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &d)| if d > best.1 { (i, d) } else { best });
        indices.push(next);
        nearest.par_iter_mut().enumerate().for_each(|(i, d)| {
            *d = d.min(cloud.distance(next, i));
        });
    }
    let covering_radius = nearest.iter().copied().fold(0.0, f64::max);
    Ok(Landmarks {
        indices,
        covering_radius,
    })
}

/// Lazy witness filtration on the landmarks: the pair `(a, b)` enters at
/// `min_w max(d(w, a), d(w, b)) − m_w(ν)` over all cloud points `w`, where
/// `m_w(ν)` is the distance from `w` to its ν-th nearest landmark (0 for ν = 0).
pub fn witness_matrix(cloud: &PointCloud, landmarks: &[usize], nu: usize) -> Result<DistanceMatrix, PersistenceError> {
    let k = landmarks.len();
    if nu > k {
        return Err(PersistenceError::BadArgument(format!("nu = {nu} exceeds {k} landmarks")));
    }
    let to_landmarks: Vec<Vec<f64>> = (0..cloud.len())
        .into_par_iter()
        .map(|w| landmarks.iter().map(|&l| cloud.distance(w, l)).collect())
        .collect();
    let offsets: Vec<f64> = to_landmarks
        .iter()
        .map(|row| {
            if nu == 0 {
                return 0.0;
            }
            let mut sorted = row.clone();
            sorted.sort_by(f64::total_cmp);
            sorted[nu - 1]
        })
        .collect();
    Ok(DistanceMatrix::from_fn(k, |a, b| {
        to_landmarks
            .iter()
            .zip(&offsets)
            .map(|(row, m)| (row[a].max(row[b]) - m).max(0.0))
            .fold(f64::INFINITY, f64::min)
    }))
}
