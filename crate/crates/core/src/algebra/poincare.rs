//! Poincaré polynomials over a field.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::{AbelianGroup, GradedAbelianGroup};
use super::les::{ExactSequence, MapDescriptor, Term};
use super::ops::{product_of_three_spheres, torus};
use super::AlgebraError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    /// F_p for a prime p.
    Prime(u64),
}

impl Field {
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// 0 for Q, otherwise a prime.
    pub fn from_characteristic(c: u64) -> Result<Self, AlgebraError> {
        match c {
            0 => Ok(Field::Rational),
            p if p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) => Ok(Field::Prime(p)),
            _ => Err(AlgebraError::InconsistentMap(format!("{c} is not a prime"))),
        }
    }

    fn torsion_count(self, g: &AbelianGroup) -> usize {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => g.p_torsion_count(p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Whether a graded group holds homology or cohomology; this decides the
/// direction of the Tor shift under change of coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    Homology,
    Cohomology,
}

/// Integer coefficients indexed by degree (degree 0 first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PoincarePolynomial {
    coeffs: Vec<i64>,
}

impl PoincarePolynomial {
    pub fn new(coeffs: Vec<i64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    /// `c · t^k`.
    pub fn monomial(k: usize, c: i64) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// Coefficients given as `(degree, coefficient)` pairs.
    pub fn from_terms(terms: &[(usize, i64)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(k, c)| acc.add(&Self::monomial(k, c)))
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c as f64)
    }

    /// Drops the constant term by one (removes one point's worth of H₀).
    pub fn reduced(&self) -> Self {
        self.sub(&Self::one())
    }

    /// Betti polynomial over `field` of an integral (co)homology table.
    pub fn from_graded(g: &GradedAbelianGroup, field: Field, variance: Variance) -> Result<Self, AlgebraError> {
        let mut out = Self::zero();
        for (k, a) in g.iter() {
            if k < 0 {
                return Err(AlgebraError::ShapeMismatch(format!("negative degree {k}")));
            }
            let k = k as usize;
            let tors = field.torsion_count(a) as i64;
            out = out.add(&Self::monomial(k, a.rank() as i64 + tors));
            // the Tor term sits one degree up for homology, one down for cohomology
            match variance {
                Variance::Homology => out = out.add(&Self::monomial(k + 1, tors)),
                Variance::Cohomology if k > 0 => out = out.add(&Self::monomial(k - 1, tors)),
                Variance::Cohomology => {}
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{a}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for PoincarePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            coefficients: &'a [i64],
            text: String,
        }
        Repr {
            coefficients: &self.coeffs,
            text: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PoincarePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            coefficients: Vec<i64>,
        }
        Ok(Self::new(Repr::deserialize(d)?.coefficients))
    }
}

/// Rational Poincaré polynomial of `SU(2)^r − T^r` for the diagonal torus.
///
/// Duality gives `H_i(G^r, G^r − T^r) ≅ H^{3r−i}(T^r)`; in the sequence of
/// that pair the map `H_i(G^r) → H_i(G^r, G^r − T^r)` vanishes except in
/// the top degree, where it is an isomorphism.
pub fn complement_torus_series(r: usize) -> Result<PoincarePolynomial, AlgebraError> {
    if r == 0 {
        return Err(AlgebraError::InconsistentMap("r must be at least 1".into()));
    }
    let top = 3 * r as i32;
    let ambient = product_of_three_spheres(r);
    let t = torus(r);
    let mut pair = GradedAbelianGroup::new();
    for (k, g) in t.iter() {
        pair.set(top - k, g.clone());
    }

    // … → H_{i+1}(G) → H_{i+1}(P) → H_i(C) → H_i(G) → H_i(P) → …
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    let mut complement_degrees = Vec::new();
    for i in (0..=top).rev() {
        terms.push(Term::Known(ambient.get(i + 1)));
        maps.push(Some(if i + 1 == top {
            MapDescriptor::Iso
        } else {
            MapDescriptor::Zero
        }));
        terms.push(Term::Known(pair.get(i + 1)));
        maps.push(None);
        terms.push(Term::Unknown);
        maps.push(None);
        complement_degrees.push(i);
    }
    terms.push(Term::Known(ambient.get(0)));
    maps.push(Some(MapDescriptor::Zero));
    terms.push(Term::Known(pair.get(0)));

    let mut series = BTreeMap::new();
    let slots = ExactSequence { terms, maps }.solve()?;
    for (slot, i) in slots.into_iter().zip(complement_degrees) {
        let g = slot.extension.group().ok_or(AlgebraError::AmbiguousExtension {
            degree: i,
            candidates: vec![],
        })?;
        series.insert(i as usize, g.rank() as i64);
    }
    Ok(PoincarePolynomial::from_terms(&series.into_iter().collect::<Vec<_>>()))
}
