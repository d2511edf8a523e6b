//! Homology of finite free chain complexes over Z and over F_p.

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::group::{AbelianGroup, GradedAbelianGroup};
use super::matrix::IntegerMatrix;
use super::snf::smith_normal_form;
use super::AlgebraError;

/// `C_0 ← C_1 ← …` with `boundaries[k]` the map `∂_{k+1}: C_{k+1} → C_k`,
/// a `dims[k] × dims[k+1]` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self, AlgebraError> {
        if boundaries.len() != dims.len().saturating_sub(1) {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} chain groups need {} boundary maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.rows() != dims[k] || d.cols() != dims[k + 1] {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "boundary {} is {}x{}, expected {}x{}",
                    k + 1,
                    d.rows(),
                    d.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
                return Err(AlgebraError::NotAComplex { degree: k as i32 + 1 });
            }
        }
        Ok(Self { dims, boundaries })
    }

    /// Dimensions inferred from the boundary matrices.
    pub fn from_boundaries(boundaries: Vec<IntegerMatrix>) -> Result<Self, AlgebraError> {
        let Some(first) = boundaries.first() else {
            return Self::new(vec![], vec![]);
        };
        let mut dims = vec![first.rows()];
        dims.extend(boundaries.iter().map(IntegerMatrix::cols));
        Self::new(dims, boundaries)
    }

    /// Simplicial chain complex of a list of simplices.
    /// Every face of a listed simplex must be listed too.
    pub fn simplicial(simplices: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            let d = s.len().checked_sub(1).ok_or_else(|| AlgebraError::ShapeMismatch("empty simplex".into()))?;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        for level in &mut by_dim {
            level.sort();
            level.dedup();
        }
        let dims: Vec<usize> = by_dim.iter().map(Vec::len).collect();
        let mut boundaries = Vec::new();
        for d in 1..by_dim.len() {
            let mut m = IntegerMatrix::zeros(dims[d - 1], dims[d]);
            for (j, s) in by_dim[d].iter().enumerate() {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let row = by_dim[d - 1].binary_search(&face).map_err(|_| {
                        AlgebraError::ShapeMismatch(format!("face {face:?} of {s:?} missing"))
                    })?;
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m.set(row, j, sign.into());
                }
            }
            boundaries.push(m);
        }
        Self::new(dims, boundaries)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundaries(&self) -> &[IntegerMatrix] {
        &self.boundaries
    }
}

/// `H_k = ker ∂_k / im ∂_{k+1}` over Z.
pub fn chain_homology(c: &ChainComplex) -> Result<GradedAbelianGroup, AlgebraError> {
    let snfs: Vec<_> = c.boundaries.iter().map(smith_normal_form).collect();
    let mut out = GradedAbelianGroup::new();
    for (k, &dim) in c.dims.iter().enumerate() {
        let rank_out = if k == 0 { 0 } else { snfs[k - 1].rank() };
        let (rank_in, torsion) = match snfs.get(k) {
            Some(s) => {
                let torsion = s
                    .diagonal
                    .iter()
                    .filter(|d| !d.is_zero() && !d.is_one())
                    .map(|d| d.to_u64().ok_or(AlgebraError::Overflow))
                    .collect::<Result<Vec<_>, _>>()?;
                (s.rank(), torsion)
            }
            None => (0, vec![]),
        };
        out.set(k as i32, AbelianGroup::new(dim - rank_out - rank_in, &torsion));
    }
    Ok(out)
}

/// Betti numbers over F_p (`p` prime).
pub fn chain_betti_mod_p(c: &ChainComplex, p: u64) -> Vec<usize> {
    let ranks: Vec<usize> = c.boundaries.iter().map(|d| d.rank_mod_p(p)).collect();
    c.dims
        .iter()
        .enumerate()
        .map(|(k, &dim)| {
            let out = if k == 0 { 0 } else { ranks[k - 1] };
            let inn = ranks.get(k).copied().unwrap_or(0);
            dim - out - inn
        })
        .collect()
}

/// Betti numbers over Q.
pub fn chain_betti_rational(c: &ChainComplex) -> Vec<usize> {
    let ranks: Vec<usize> = c.boundaries.iter().map(|d| smith_normal_form(d).rank()).collect();
    c.dims
        .iter()
        .enumerate()
        .map(|(k, &dim)| {
            let out = if k == 0 { 0 } else { ranks[k - 1] };
            let inn = ranks.get(k).copied().unwrap_or(0);
            dim - out - inn
        })
        .collect()
}

/// Minimal cellular complex of RP³: one cell per dimension with
/// boundaries 0, 2, 0.
pub fn rp3_cellular() -> ChainComplex {
    ChainComplex::from_boundaries(vec![
        IntegerMatrix::from_rows(&[vec![0]]),
        IntegerMatrix::from_rows(&[vec![2]]),
        IntegerMatrix::from_rows(&[vec![0]]),
    ])
    .expect("valid complex")
}
