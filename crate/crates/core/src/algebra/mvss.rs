//! Mayer–Vietoris spectral sequence of a cover by at most three pieces.
//!
//! `E₁^{p,q}` is column `p` in degree `q`: the q-th cohomology of the
//! pieces (p = 0), of the pairwise intersections (p = 1) and of the triple
//! intersection (p = 2); `d₁^{p,q}: E₁^{p,q} → E₁^{p+1,q}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::group::{subquotient, AbelianGroup, GradedAbelianGroup, Homomorphism};
use super::les::MapDescriptor;
use super::AlgebraError;

const MAX_COLUMNS: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MvResult {
    /// Nonzero `E₂^{p,q}` terms keyed by `(p, q)`.
    pub e2: BTreeMap<(usize, i32), AbelianGroup>,
    /// Total cohomology assembled as `⊕_{p+q=n} E₂^{p,q}`.
    pub total: GradedAbelianGroup,
    /// Whether every `d₁^{1,q}` is onto.
    pub column1_epi: bool,
    pub warnings: Vec<String>,
}

impl MvResult {
    /// Serializable view of `e2` with `"p,q"` keys.
    pub fn e2_table(&self) -> BTreeMap<String, AbelianGroup> {
        self.e2.iter().map(|(&(p, q), g)| (format!("{p},{q}"), g.clone())).collect()
    }
}

fn descriptor<'a>(d1: &'a BTreeMap<(usize, i32), MapDescriptor>, p: usize, q: i32) -> &'a MapDescriptor {
    static ZERO: MapDescriptor = MapDescriptor::Zero;
    d1.get(&(p, q)).unwrap_or(&ZERO)
}

fn as_hom(d: &MapDescriptor, a: &AbelianGroup, b: &AbelianGroup) -> Result<Option<Homomorphism>, AlgebraError> {
    match d {
        MapDescriptor::Zero => Ok(Some(Homomorphism::zero(a.clone(), b.clone()))),
        MapDescriptor::Matrix { matrix } => Ok(Some(Homomorphism::new(a.clone(), b.clone(), matrix.clone())?)),
        _ => Ok(None),
    }
}

/// `ker(g) / im(f)` for `a --f--> b --g--> c` given by descriptors.
fn middle_homology(
    f: &MapDescriptor,
    g: &MapDescriptor,
    a: &AbelianGroup,
    b: &AbelianGroup,
    c: &AbelianGroup,
) -> Result<AbelianGroup, AlgebraError> {
    if let (Some(fh), Some(gh)) = (as_hom(f, a, b)?, as_hom(g, b, c)?) {
        return subquotient(&fh, &gh);
    }
    let (_, coker_f) = f.kernel_cokernel(a, b)?;
    let (ker_g, _) = g.kernel_cokernel(b, c)?;
    match (f, g) {
        (MapDescriptor::Zero, _) => Ok(ker_g),
        (_, MapDescriptor::Zero) => Ok(coker_f),
        (MapDescriptor::Iso, _) | (_, MapDescriptor::Iso) => Ok(AbelianGroup::zero()),
        (MapDescriptor::Rank { k: kf, .. }, MapDescriptor::Rank { .. }) => {
            // coker f is free, so ker g / im f is free of the remaining rank
            let r = ker_g
                .rank()
                .checked_sub(*kf)
                .ok_or_else(|| AlgebraError::InconsistentMap("d1 composite is not zero".into()))?;
            Ok(AbelianGroup::free(r))
        }
        _ => Err(AlgebraError::Underdetermined(
            "mixing RANK and MATRIX descriptors on one E1 row".into(),
        )),
    }
}

/// `E₂` and the assembled total cohomology from `E₁` columns and `d₁`.
pub fn mv_spectral_sequence_columns(
    columns: &[GradedAbelianGroup],
    d1: &BTreeMap<(usize, i32), MapDescriptor>,
) -> Result<MvResult, AlgebraError> {
    if columns.len() > MAX_COLUMNS {
        return Err(AlgebraError::ColumnsExceeded { columns: columns.len() });
    }
    if let Some(&(p, _)) = d1.keys().find(|&&(p, _)| p + 1 >= columns.len()) {
        return Err(AlgebraError::ShapeMismatch(format!("d1 out of column {p} has no target")));
    }
    let col = |p: usize, q: i32| columns.get(p).map(|c| c.get(q)).unwrap_or_default();
    let degrees: Vec<i32> = {
        let mut v: Vec<i32> = columns.iter().flat_map(|c| c.iter().map(|(k, _)| k)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };

    let zero = MapDescriptor::Zero;
    let mut e2 = BTreeMap::new();
    let mut column1_epi = true;
    for &q in &degrees {
        for p in 0..columns.len() {
            let incoming = if p == 0 { &zero } else { descriptor(d1, p - 1, q) };
            let outgoing = if p + 1 == columns.len() { &zero } else { descriptor(d1, p, q) };
            let a = if p == 0 { AbelianGroup::zero() } else { col(p - 1, q) };
            let c = col(p + 1, q);
            let g = middle_homology(incoming, outgoing, &a, &col(p, q), &c)?;
            if !g.is_zero() {
                e2.insert((p, q), g);
            }
        }
        if columns.len() == MAX_COLUMNS {
            let (_, coker) = descriptor(d1, 1, q).kernel_cokernel(&col(1, q), &col(2, q))?;
            column1_epi &= coker.is_zero();
        }
    }

    let mut total = GradedAbelianGroup::new();
    let mut warnings = Vec::new();
    let mut by_total: BTreeMap<i32, Vec<(usize, &AbelianGroup)>> = BTreeMap::new();
    for (&(p, q), g) in &e2 {
        total.add_to(p as i32 + q, g);
        by_total.entry(p as i32 + q).or_default().push((p, g));
    }
    if e2.keys().any(|&(p, _)| p == 2) {
        warnings.push("column 2 survives to E2: d2 and extension problems are not determined".into());
    }
    for (n, parts) in &by_total {
        // the column-0 term is the quotient of the filtration in degree n
        if parts.len() > 1 && parts.iter().any(|(p, g)| *p == 0 && !g.is_free()) {
            warnings.push(format!("possible extension problem in total degree {n}"));
        }
    }
    Ok(MvResult {
        e2,
        total,
        column1_epi,
        warnings,
    })
}

/// Three-piece version: pieces, pairwise intersections, triple intersection.
pub fn mv_spectral_sequence(
    pieces: &GradedAbelianGroup,
    pairwise: &GradedAbelianGroup,
    triple: &GradedAbelianGroup,
    d1: &BTreeMap<(usize, i32), MapDescriptor>,
) -> Result<MvResult, AlgebraError> {
    mv_spectral_sequence_columns(&[pieces.clone(), pairwise.clone(), triple.clone()], d1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::z_and_2;
    use crate::algebra::matrix::IntegerMatrix;

    #[test]
    fn disjoint_cover_is_a_direct_sum() {
        let pieces = GradedAbelianGroup::from_list(0, &[z_and_2(3, 0), z_and_2(0, 1)]);
        let r = mv_spectral_sequence(&pieces, &GradedAbelianGroup::new(), &GradedAbelianGroup::new(), &BTreeMap::new())
            .unwrap();
        assert_eq!(r.total, pieces);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn zero_differentials_keep_column_two() {
        let g = GradedAbelianGroup::from_list(0, &[z_and_2(1, 0)]);
        let r = mv_spectral_sequence(&g, &g, &g, &BTreeMap::new()).unwrap();
        assert_eq!(r.e2.len(), 3);
        assert!(!r.warnings.is_empty());
        assert!(!r.column1_epi);
    }

    #[test]
    fn nerve_of_a_triangle() {
        // three contractible pieces, contractible overlaps: a 2-simplex nerve
        let d0 = IntegerMatrix::from_rows(&[vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]]);
        let d1m = IntegerMatrix::from_rows(&[vec![1, -1, 1]]);
        let d1 = BTreeMap::from([
            ((0, 0), MapDescriptor::matrix(d0)),
            ((1, 0), MapDescriptor::matrix(d1m)),
        ]);
        let z3 = GradedAbelianGroup::from_list(0, &[z_and_2(3, 0)]);
        let z1 = GradedAbelianGroup::from_list(0, &[z_and_2(1, 0)]);
        let r = mv_spectral_sequence(&z3, &z3, &z1, &d1).unwrap();
        assert_eq!(r.total, z1);
        assert!(r.column1_epi);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn too_many_columns() {
        let g = GradedAbelianGroup::new();
        let r = mv_spectral_sequence_columns(&[g.clone(), g.clone(), g.clone(), g], &BTreeMap::new());
        assert!(matches!(r, Err(AlgebraError::ColumnsExceeded { columns: 4 })));
    }
}
