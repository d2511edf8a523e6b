//! Solving for unknown terms of long exact sequences.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::group::{AbelianGroup, GradedAbelianGroup, Homomorphism};
use super::matrix::IntegerMatrix;
use super::AlgebraError;

/// What is known about a homomorphism between two known groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MapDescriptor {
    Zero,
    Iso,
    /// A map between free groups with image of rank `k`.
    Rank { k: usize, torsion_free_coker: bool },
    /// Explicit matrix in the standard generators of domain and codomain.
    Matrix { matrix: IntegerMatrix },
}

impl MapDescriptor {
    pub fn rank(k: usize) -> Self {
        MapDescriptor::Rank {
            k,
            torsion_free_coker: true,
        }
    }

    pub fn matrix(matrix: IntegerMatrix) -> Self {
        MapDescriptor::Matrix { matrix }
    }

    /// `(kernel, cokernel)` of the described map `domain → codomain`.
    pub fn kernel_cokernel(
        &self,
        domain: &AbelianGroup,
        codomain: &AbelianGroup,
    ) -> Result<(AbelianGroup, AbelianGroup), AlgebraError> {
        match self {
            MapDescriptor::Zero => Ok((domain.clone(), codomain.clone())),
            MapDescriptor::Iso => {
                if domain != codomain {
                    return Err(AlgebraError::InconsistentMap(format!(
                        "ISO between non-isomorphic groups {domain} and {codomain}"
                    )));
                }
                Ok((AbelianGroup::zero(), AbelianGroup::zero()))
            }
            MapDescriptor::Rank { k, torsion_free_coker } => {
                if !domain.is_free() || !codomain.is_free() {
                    return Err(AlgebraError::Underdetermined(format!(
                        "RANK descriptor between {domain} and {codomain} needs free groups"
                    )));
                }
                if *k > domain.rank() || *k > codomain.rank() {
                    return Err(AlgebraError::InconsistentMap(format!(
                        "rank {k} map from {domain} to {codomain}"
                    )));
                }
                if !torsion_free_coker {
                    return Err(AlgebraError::Underdetermined(
                        "cokernel torsion of a RANK map is unknown".into(),
                    ));
                }
                Ok((AbelianGroup::free(domain.rank() - k), AbelianGroup::free(codomain.rank() - k)))
            }
            MapDescriptor::Matrix { matrix } => {
                let h = Homomorphism::new(domain.clone(), codomain.clone(), matrix.clone())?;
                Ok((h.kernel()?, h.cokernel()?))
            }
        }
    }
}

/// Outcome for a group `U` sitting in `0 → C → U → K → 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Extension {
    Resolved { group: AbelianGroup },
    /// The data do not decide between the listed candidates.
    Ambiguous { candidates: Vec<AbelianGroup> },
}

impl Extension {
    pub fn group(&self) -> Option<&AbelianGroup> {
        match self {
            Extension::Resolved { group } => Some(group),
            Extension::Ambiguous { .. } => None,
        }
    }
}

/// Resolves `0 → sub → U → quot → 0` when it is forced to split.
pub fn resolve_extension(sub: &AbelianGroup, quot: &AbelianGroup) -> Extension {
    if sub.is_zero() || quot.is_zero() || quot.is_free() {
        return Extension::Resolved {
            group: sub.direct_sum(quot),
        };
    }
    Extension::Ambiguous {
        candidates: vec![sub.direct_sum(quot), merged_extension(sub, quot)],
    }
}

/// A non-split alternative: each torsion factor of the quotient is glued
/// onto a free factor of the subgroup if one is left, otherwise onto the
/// largest remaining torsion factor.
fn merged_extension(sub: &AbelianGroup, quot: &AbelianGroup) -> AbelianGroup {
    let mut free_left = sub.rank();
    let mut sub_torsion: Vec<u64> = sub.torsion().to_vec();
    let mut orders = vec![0u64; quot.rank()];
    for &t in quot.torsion().iter().rev() {
        if free_left > 0 {
            // Z --t--> Z ↠ Z/t
            free_left -= 1;
            orders.push(0);
        } else if let Some(s) = sub_torsion.pop() {
            orders.push(s * t);
        } else {
            orders.push(t);
        }
    }
    orders.extend(std::iter::repeat_n(0, free_left));
    orders.extend(sub_torsion);
    AbelianGroup::from_cyclic_orders(&orders)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Term {
    Known(AbelianGroup),
    Unknown,
}

/// A finite exact sequence `0 → T₀ → T₁ → … → T_{n−1} → 0`.
/// `maps[i]` describes `T_i → T_{i+1}` and must be given wherever both
/// ends are known and the map is needed to pin down an unknown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactSequence {
    pub terms: Vec<Term>,
    pub maps: Vec<Option<MapDescriptor>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotSolution {
    pub index: usize,
    /// Image of the incoming map, the cokernel of the map two steps back.
    pub sub: AbelianGroup,
    /// Image of the outgoing map, the kernel of the map one step ahead.
    pub quotient: AbelianGroup,
    pub extension: Extension,
}

impl ExactSequence {
    fn known(&self, i: isize) -> Result<Option<&AbelianGroup>, AlgebraError> {
        if i < 0 || i as usize >= self.terms.len() {
            return Ok(None);
        }
        match &self.terms[i as usize] {
            Term::Known(g) => Ok(Some(g)),
            Term::Unknown => Err(AlgebraError::Underdetermined(format!(
                "term {i} is needed to solve a neighbour but is unknown"
            ))),
        }
    }

    fn map(&self, i: usize) -> Result<&MapDescriptor, AlgebraError> {
        self.maps
            .get(i)
            .and_then(Option::as_ref)
            .ok_or_else(|| AlgebraError::Underdetermined(format!("map out of term {i} is not given")))
    }

    /// Solves each unknown `U = T_i` from
    /// `0 → coker(T_{i−2} → T_{i−1}) → U → ker(T_{i+1} → T_{i+2}) → 0`.
    pub fn solve(&self) -> Result<Vec<SlotSolution>, AlgebraError> {
        if self.maps.len() + 1 != self.terms.len() && !self.terms.is_empty() {
            return Err(AlgebraError::ShapeMismatch("need one map between consecutive terms".into()));
        }
        let mut out = Vec::new();
        for (i, t) in self.terms.iter().enumerate() {
            if *t != Term::Unknown {
                continue;
            }
            let ii = i as isize;
            let sub = match (self.known(ii - 2)?, self.known(ii - 1)?) {
                (_, None) => AbelianGroup::zero(),
                (None, Some(prev)) => prev.clone(),
                (Some(pp), Some(prev)) => self.map(i - 2)?.kernel_cokernel(pp, prev)?.1,
            };
            let quotient = match (self.known(ii + 1)?, self.known(ii + 2)?) {
                (None, _) => AbelianGroup::zero(),
                (Some(next), None) => next.clone(),
                (Some(next), Some(nn)) => self.map(i + 1)?.kernel_cokernel(next, nn)?.0,
            };
            let extension = resolve_extension(&sub, &quotient);
            out.push(SlotSolution {
                index: i,
                sub,
                quotient,
                extension,
            });
        }
        Ok(out)
    }
}

/// One degree of the homology sequence of a pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDegree {
    pub degree: i32,
    pub subspace: AbelianGroup,
    pub space: AbelianGroup,
    pub inclusion: MapDescriptor,
    pub coker_inclusion: AbelianGroup,
    pub ker_previous_inclusion: AbelianGroup,
    pub extension: Extension,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSequenceReport {
    pub degrees: Vec<PairDegree>,
    /// χ(X) − χ(A) = χ(X, A), when every degree resolved.
    pub euler_consistent: Option<bool>,
}

impl PairSequenceReport {
    pub fn homology(&self) -> Result<GradedAbelianGroup, AlgebraError> {
        let mut g = GradedAbelianGroup::new();
        for d in &self.degrees {
            match &d.extension {
                Extension::Resolved { group } => g.set(d.degree, group.clone()),
                Extension::Ambiguous { candidates } => {
                    return Err(AlgebraError::AmbiguousExtension {
                        degree: d.degree,
                        candidates: candidates.iter().map(ToString::to_string).collect(),
                    })
                }
            }
        }
        Ok(g)
    }
}

/// Solves `… → H_k(A) → H_k(X) → H_k(X, A) → H_{k−1}(A) → …` for the
/// relative groups, given the maps induced by `A ⊂ X` (missing degrees
/// default to the zero map).
pub fn solve_pair_sequence(
    subspace: &GradedAbelianGroup,
    space: &GradedAbelianGroup,
    inclusion: &BTreeMap<i32, MapDescriptor>,
) -> Result<PairSequenceReport, AlgebraError> {
    let lo = subspace.min_degree().into_iter().chain(space.min_degree()).min().unwrap_or(0).min(0);
    let hi = subspace.max_degree().into_iter().chain(space.max_degree()).max().unwrap_or(0) + 1;
    let map_at = |k: i32| inclusion.get(&k).cloned().unwrap_or(MapDescriptor::Zero);

    let mut terms = Vec::new();
    let mut maps = Vec::new();
    for k in (lo..=hi).rev() {
        terms.push(Term::Known(subspace.get(k)));
        maps.push(Some(map_at(k)));
        terms.push(Term::Known(space.get(k)));
        maps.push(None);
        terms.push(Term::Unknown);
        maps.push(None);
    }
    maps.pop();
    let seq = ExactSequence { terms, maps };
    let slots = seq.solve()?;

    let mut degrees = Vec::new();
    for (slot, k) in slots.into_iter().zip((lo..=hi).rev()) {
        degrees.push(PairDegree {
            degree: k,
            subspace: subspace.get(k),
            space: space.get(k),
            inclusion: map_at(k),
            coker_inclusion: slot.sub,
            ker_previous_inclusion: slot.quotient,
            extension: slot.extension,
        });
    }
    degrees.reverse();

    let mut report = PairSequenceReport {
        degrees,
        euler_consistent: None,
    };
    if let Ok(rel) = report.homology() {
        report.euler_consistent =
            Some(space.euler_characteristic() - subspace.euler_characteristic() == rel.euler_characteristic());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::z_and_2;

    fn z(r: usize) -> AbelianGroup {
        AbelianGroup::free(r)
    }

    #[test]
    fn descriptor_kernels() {
        let (k, c) = MapDescriptor::rank(3).kernel_cokernel(&z(4), &z(3)).unwrap();
        assert_eq!((k, c), (z(1), z(0)));
        assert!(MapDescriptor::Iso.kernel_cokernel(&z(1), &z(2)).is_err());
        assert!(MapDescriptor::rank(3).kernel_cokernel(&z(2), &z(3)).is_err());
        assert!(MapDescriptor::rank(1).kernel_cokernel(&z_and_2(1, 1), &z(3)).is_err());
        let m = MapDescriptor::matrix(IntegerMatrix::from_rows(&[vec![2]]));
        assert_eq!(m.kernel_cokernel(&z(1), &z(1)).unwrap(), (z(0), AbelianGroup::cyclic(2)));
    }

    #[test]
    fn extensions() {
        let z2 = AbelianGroup::cyclic(2);
        assert_eq!(resolve_extension(&z(1), &z(2)).group(), Some(&z(3)));
        assert_eq!(resolve_extension(&z2, &z(0)).group(), Some(&z2));
        match resolve_extension(&z2, &z2) {
            Extension::Ambiguous { candidates } => {
                assert_eq!(candidates, vec![z_and_2(0, 2), AbelianGroup::cyclic(4)]);
            }
            other => panic!("expected ambiguity, got {other:?}"),
        }
        match resolve_extension(&z(1), &z2) {
            Extension::Ambiguous { candidates } => assert!(candidates.contains(&z(1))),
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }

    #[test]
    fn zero_maps_with_zero_flanks() {
        let seq = ExactSequence {
            terms: vec![Term::Known(z(0)), Term::Unknown, Term::Known(z(0))],
            maps: vec![Some(MapDescriptor::Zero), Some(MapDescriptor::Zero)],
        };
        let s = seq.solve().unwrap();
        assert_eq!(s[0].extension.group(), Some(&z(0)));
    }

    #[test]
    fn adjacent_unknowns_are_rejected() {
        let seq = ExactSequence {
            terms: vec![Term::Known(z(1)), Term::Unknown, Term::Unknown],
            maps: vec![None, None],
        };
        assert!(seq.solve().is_err());
    }

    #[test]
    fn pair_of_spheres() {
        // (S³, point)
        let x = GradedAbelianGroup::from_list(0, &[z(1), z(0), z(0), z(1)]);
        let a = GradedAbelianGroup::from_list(0, &[z(1)]);
        let maps = BTreeMap::from([(0, MapDescriptor::Iso)]);
        let r = solve_pair_sequence(&a, &x, &maps).unwrap();
        let h = r.homology().unwrap();
        assert_eq!(h, GradedAbelianGroup::from_list(3, &[z(1)]));
        assert_eq!(r.euler_consistent, Some(true));
    }
}
