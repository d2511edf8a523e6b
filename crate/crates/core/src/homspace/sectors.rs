//! Determinant sectors of Hom(π, O(n)), indexed by H¹(π; F₂).

use serde::{Deserialize, Serialize};

use super::{is_hom, GroupPresentation, HomError, HomPoint, HOM_TOL};
use crate::group::{MatrixGroupElement, MatrixGroupTag};

/// Largest H¹(π; F₂) dimension `enumerate_sectors` will list exhaustively.
const MAX_ENUMERATED_DIM: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SectorLabel {
    pub bits: Vec<u8>,
}

impl SectorLabel {
    pub fn new(p: &GroupPresentation, bits: Vec<u8>) -> Result<Self, HomError> {
        let label = Self { bits };
        if label.is_consistent(p) {
            Ok(label)
        } else {
            Err(HomError::InconsistentLabel)
        }
    }

    /// Every relator has even total weight under the label.
    pub fn is_consistent(&self, p: &GroupPresentation) -> bool {
        if self.bits.len() != p.generator_count() || self.bits.iter().any(|&b| b > 1) {
            return false;
        }
        p.relators().iter().all(|w| {
            let parity = w.parity(p.generator_count());
            parity.iter().zip(&self.bits).fold(0u8, |acc, (a, b)| acc ^ (a & b)) == 0
        })
    }
}

/// `bits[k] = 1` exactly when `det f(x_k) = −1`.
pub fn sector(p: &GroupPresentation, f: &HomPoint<MatrixGroupElement>) -> Result<SectorLabel, HomError> {
    let (_, residual) = is_hom(p, &f.images)?;
    if residual > HOM_TOL {
        return Err(HomError::InvalidHom { residual });
    }
    let mut bits = Vec::with_capacity(f.images.len());
    for m in &f.images {
        // revalidate as an orthogonal matrix whatever the tag says
        let o = MatrixGroupElement::new(m.entries().clone(), MatrixGroupTag::O)?;
        bits.push(u8::from(o.determinant().re < 0.0));
    }
    Ok(SectorLabel { bits })
}

/// The diagonal homomorphism `x_k ↦ diag(±1, 1, …, 1)` in sector `w`.
pub fn sector_section(
    p: &GroupPresentation,
    w: &SectorLabel,
    n: usize,
) -> Result<HomPoint<MatrixGroupElement>, HomError> {
    if n == 0 {
        return Err(HomError::BadArgument("matrix size must be at least 1".into()));
    }
    if w.bits.len() != p.generator_count() {
        return Err(HomError::LengthMismatch {
            expected: p.generator_count(),
            found: w.bits.len(),
        });
    }
    if !w.is_consistent(p) {
        return Err(HomError::InconsistentLabel);
    }
    let images = w
        .bits
        .iter()
        .map(|&b| {
            let mut d = vec![1.0; n];
            if b == 1 {
                d[0] = -1.0;
            }
            MatrixGroupElement::diagonal(&d, MatrixGroupTag::O)
        })
        .collect::<Result<Vec<_>, _>>()?;
    HomPoint::new(p, images)
}

/// All relator-consistent labels, i.e. the kernel of the relator parity
/// matrix over F₂, in lexicographic order.
pub fn enumerate_sectors(p: &GroupPresentation) -> Result<Vec<SectorLabel>, HomError> {
    let n = p.generator_count();
    let mut rows: Vec<Vec<u8>> = p.relators().iter().map(|w| w.parity(n)).collect();

    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] == 1) else {
            continue;
        };
        rows.swap(r, found);
        for i in 0..rows.len() {
            if i != r && rows[i][col] == 1 {
                let pivot_row = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(pivot_row) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }

    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() > MAX_ENUMERATED_DIM {
        return Err(HomError::BadArgument(format!(
            "H^1 with F_2 coefficients has dimension {}, too many sectors to list",
            free.len()
        )));
    }
    let basis: Vec<Vec<u8>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u8; n];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[row][f];
            }
            v
        })
        .collect();

    let mut labels: Vec<SectorLabel> = (0u64..1 << basis.len())
        .map(|mask| {
            let mut bits = vec![0u8; n];
            for (b, v) in basis.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    for (x, y) in bits.iter_mut().zip(v) {
                        *x ^= y;
                    }
                }
            }
            SectorLabel { bits }
        })
        .collect();
    labels.sort();
    Ok(labels)
}
