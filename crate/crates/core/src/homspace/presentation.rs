use serde::{Deserialize, Serialize};

use super::{HomError, HOM_TOL};
use crate::group::GroupElement;

/// A word in the free group, as `(generator, exponent)` letters.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    pub letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn new(letters: Vec<(usize, i64)>) -> Result<Self, HomError> {
        if letters.iter().any(|&(_, e)| e == 0) {
            return Err(HomError::ZeroExponent);
        }
        Ok(Self { letters })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn power(generator: usize, exponent: i64) -> Self {
        Self {
            letters: vec![(generator, exponent)],
        }
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: usize, b: usize) -> Self {
        Self {
            letters: vec![(a, 1), (b, 1), (a, -1), (b, -1)],
        }
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Total exponent of each generator modulo 2.
    pub fn parity(&self, generator_count: usize) -> Vec<u8> {
        let mut out = vec![0u8; generator_count];
        for &(g, e) in &self.letters {
            if g < generator_count {
                out[g] ^= (e.rem_euclid(2)) as u8;
            }
        }
        out
    }

    fn shifted(&self, offset: usize) -> Self {
        Self {
            letters: self.letters.iter().map(|&(g, e)| (g + offset, e)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    #[serde(rename = "generators")]
    generator_count: usize,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self, HomError> {
        if generator_count == 0 {
            return Err(HomError::NoGenerators);
        }
        for w in &relators {
            if let Some(&(_, 0)) = w.letters.iter().find(|&&(_, e)| e == 0) {
                return Err(HomError::ZeroExponent);
            }
            if let Some(g) = w.max_generator() {
                if g >= generator_count {
                    return Err(HomError::GeneratorOutOfRange {
                        index: g,
                        count: generator_count,
                    });
                }
            }
        }
        Ok(Self {
            generator_count,
            relators,
        })
    }

    /// Parses `{"generators": k, "relators": [[[gen, exp], ...], ...]}`.
    pub fn from_json(text: &str) -> Result<Self, HomError> {
        let raw: Self = serde_json::from_str(text).map_err(|e| HomError::BadArgument(e.to_string()))?;
        Self::new(raw.generator_count, raw.relators)
    }

    pub fn free(n: usize) -> Result<Self, HomError> {
        Self::new(n, Vec::new())
    }

    /// Z^n with all commutator relators.
    pub fn free_abelian(n: usize) -> Result<Self, HomError> {
        let mut rel = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                rel.push(Word::commutator(a, b));
            }
        }
        Self::new(n, rel)
    }

    /// ⟨x | x^m⟩.
    pub fn cyclic(m: i64) -> Result<Self, HomError> {
        Self::new(1, vec![Word::power(0, m)])
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Presentation of the free product: generators and relators concatenated.
    pub fn free_product(parts: &[&GroupPresentation]) -> Result<Self, HomError> {
        let mut offset = 0;
        let mut relators = Vec::new();
        for p in parts {
            relators.extend(p.relators.iter().map(|w| w.shifted(offset)));
            offset += p.generator_count;
        }
        Self::new(offset, relators)
    }
}

/// A tuple of generator images together with its relator residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomPoint<G> {
    pub images: Vec<G>,
    pub residual: f64,
}

impl<G: GroupElement> HomPoint<G> {
    pub fn new(p: &GroupPresentation, images: Vec<G>) -> Result<Self, HomError> {
        let (_, residual) = is_hom(p, &images)?;
        Ok(Self { images, residual })
    }

    pub fn is_valid(&self) -> bool {
        self.residual <= HOM_TOL
    }
}

pub fn evaluate_word<G: GroupElement>(w: &Word, images: &[G], identity: &G) -> Result<G, HomError> {
    let mut acc = identity.clone();
    for &(g, e) in &w.letters {
        let base = images.get(g).ok_or(HomError::GeneratorOutOfRange {
            index: g,
            count: images.len(),
        })?;
        let factor = if e < 0 { base.inverse_element() } else { base.clone() };
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&factor);
        }
    }
    Ok(acc)
}

/// Returns whether `images` satisfies every relator, and the worst residual.
pub fn is_hom<G: GroupElement>(p: &GroupPresentation, images: &[G]) -> Result<(bool, f64), HomError> {
    if images.len() != p.generator_count {
        return Err(HomError::LengthMismatch {
            expected: p.generator_count,
            found: images.len(),
        });
    }
    let identity = images[0].identity_like();
    let mut residual = 0.0f64;
    for w in &p.relators {
        residual = residual.max(evaluate_word(w, images, &identity)?.identity_residual());
    }
    Ok((residual <= HOM_TOL, residual))
}

/// Hom(A * B, G) = Hom(A, G) × Hom(B, G): concatenates the parts.
///
/// A factor given with zero images stands for the trivial group ⟨x | x⟩
/// and contributes the identity on a one-generator block.
pub fn free_product_assemble<G: GroupElement>(
    parts: &[(GroupPresentation, HomPoint<G>)],
    identity: &G,
) -> Result<(GroupPresentation, HomPoint<G>), HomError> {
    let trivial = GroupPresentation::new(1, vec![Word::power(0, 1)])?;
    let mut presentations = Vec::with_capacity(parts.len());
    let mut images = Vec::new();
    for (p, hp) in parts {
        if hp.images.is_empty() {
            presentations.push(&trivial);
            images.push(identity.clone());
            continue;
        }
        if hp.images.len() != p.generator_count() {
            return Err(HomError::LengthMismatch {
                expected: p.generator_count(),
                found: hp.images.len(),
            });
        }
        presentations.push(p);
        images.extend(hp.images.iter().cloned());
    }
    let product = GroupPresentation::free_product(&presentations)?;
    let point = HomPoint::new(&product, images)?;
    Ok((product, point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{exp_su2, TangentVector, UnitQuaternion};
    use std::f64::consts::PI;

    #[test]
    fn word_evaluation() {
        let (i, j) = (UnitQuaternion::i(), UnitQuaternion::j());
        let one = UnitQuaternion::identity();
        let c = evaluate_word(&Word::commutator(0, 1), &[i, j], &one).unwrap();
        assert!((c.w + 1.0).abs() < 1e-15);
        let sq = evaluate_word(&Word::power(0, 2), &[i], &one).unwrap();
        assert!((sq.w + 1.0).abs() < 1e-15);
        assert_eq!(evaluate_word(&Word::empty(), &[i], &one).unwrap(), one);
        let inv = evaluate_word(&Word::power(0, -3), &[i], &one).unwrap();
        assert!((inv.x - 1.0).abs() < 1e-15);
    }

    #[test]
    fn membership() {
        let z2 = GroupPresentation::free_abelian(2).unwrap();
        let (ok, r) = is_hom(&z2, &[UnitQuaternion::i(), UnitQuaternion::j()]).unwrap();
        assert!(!ok);
        assert!((r - PI).abs() < 1e-12);
        let a = exp_su2(&TangentVector::new(0.3, 0.0, 0.0));
        let b = exp_su2(&TangentVector::new(1.1, 0.0, 0.0));
        assert!(is_hom(&z2, &[a, b]).unwrap().0);
        let c2 = GroupPresentation::cyclic(2).unwrap();
        assert!(is_hom(&c2, &[UnitQuaternion::minus_one()]).unwrap().0);
        assert!(matches!(
            is_hom(&c2, &[a, b]),
            Err(HomError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn presentation_validation() {
        assert!(GroupPresentation::new(0, vec![]).is_err());
        assert!(GroupPresentation::new(1, vec![Word::commutator(0, 1)]).is_err());
        let p = GroupPresentation::from_json(r#"{"generators": 2, "relators": [[[0, 1], [1, 1], [0, -1], [1, -1]]]}"#)
            .unwrap();
        assert_eq!(p, GroupPresentation::free_abelian(2).unwrap());
        assert!(GroupPresentation::from_json(r#"{"generators": 1, "relators": [[[0, 0]]]}"#).is_err());
    }

    #[test]
    fn free_products() {
        let z = GroupPresentation::free(1).unwrap();
        let one = UnitQuaternion::identity();
        let a = HomPoint::new(&z, vec![UnitQuaternion::i()]).unwrap();
        let b = HomPoint::new(&z, vec![UnitQuaternion::j()]).unwrap();
        let (p, hp) = free_product_assemble(&[(z.clone(), a.clone()), (z.clone(), b)], &one).unwrap();
        assert_eq!(p.generator_count(), 2);
        assert!(p.relators().is_empty());
        assert!(hp.is_valid());

        let z2 = GroupPresentation::free_abelian(2).unwrap();
        let pair = HomPoint::new(&z2, vec![UnitQuaternion::diagonal(0.2), UnitQuaternion::diagonal(0.9)]).unwrap();
        let (p, hp) = free_product_assemble(&[(z2, pair), (z.clone(), a)], &one).unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relators()[0], Word::commutator(0, 1));
        assert!(hp.is_valid());

        let empty = HomPoint { images: vec![], residual: 0.0 };
        let (p, hp) = free_product_assemble(
            &[(z.clone(), HomPoint::new(&z, vec![UnitQuaternion::k()]).unwrap()), (z, empty)],
            &one,
        )
        .unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(hp.images[1], one);
        assert!(hp.is_valid());
    }
}
