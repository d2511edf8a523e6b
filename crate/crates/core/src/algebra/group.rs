//! Finitely generated abelian groups, graded groups and homomorphisms
//! between them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::IntegerMatrix;
use super::snf::{kernel_lattice, smith_normal_form, Lattice};
use super::AlgebraError;

/// `Z^rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k` with `t₁ | t₂ | … | t_k`, all `tᵢ ≥ 2`.
///
/// Its standard generators are the `rank` free generators followed by one
/// generator per torsion factor; matrices of homomorphisms refer to them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<u64>,
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: vec![] }
    }

    /// Z/n; `n = 0` gives Z and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[n])
    }

    /// Direct sum of cyclic groups, with order 0 standing for Z.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let rank = orders.iter().filter(|&&o| o == 0).count();
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &o in orders.iter().filter(|&&o| o > 1) {
            for (p, q) in prime_powers(o) {
                by_prime.entry(p).or_default().push(q);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, q) in factors.iter_mut().zip(powers.iter()) {
                *slot *= q;
            }
        }
        factors.reverse();
        Self { rank, torsion: factors }
    }

    pub fn new(rank: usize, torsion: &[u64]) -> Self {
        let mut orders = vec![0u64; rank];
        orders.extend_from_slice(torsion);
        Self::from_cyclic_orders(&orders)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of standard generators.
    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Orders of the standard generators, 0 for free ones.
    pub fn generator_orders(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.rank];
        v.extend_from_slice(&self.torsion);
        v
    }

    /// Relation matrix: column `i` is `tᵢ · e_{rank+i}`.
    pub fn relations(&self) -> IntegerMatrix {
        let n = self.generator_count();
        let mut m = IntegerMatrix::zeros(n, self.torsion.len());
        for (i, &t) in self.torsion.iter().enumerate() {
            m.set(self.rank + i, i, BigInt::from(t));
        }
        m
    }

    /// Number of cyclic summands whose order is divisible by `p`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        self.torsion.iter().filter(|&&t| t % p == 0).count()
    }

    pub fn free_part(&self) -> Self {
        Self::free(self.rank)
    }

    pub fn torsion_part(&self) -> Self {
        Self {
            rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.generator_orders();
        orders.extend(other.generator_orders());
        Self::from_cyclic_orders(&orders)
    }

    pub fn power(&self, k: usize) -> Self {
        (0..k).fold(Self::zero(), |acc, _| acc.direct_sum(self))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for &a in &self.generator_orders() {
            for &b in &other.generator_orders() {
                orders.push(a.gcd(&b));
            }
        }
        Self::from_cyclic_orders(&orders)
    }

    pub fn tor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for &a in &self.torsion {
            for &b in &other.torsion {
                orders.push(a.gcd(&b));
            }
        }
        Self::from_cyclic_orders(&orders)
    }

    /// Group presented by generators `Z^n` modulo the columns of `relations`.
    pub fn from_relations(relations: &IntegerMatrix) -> Result<Self, AlgebraError> {
        let snf = smith_normal_form(relations);
        let n = relations.rows();
        let r = snf.rank();
        let mut torsion = Vec::new();
        for d in snf.diagonal.iter().filter(|d| !d.is_zero() && !d.is_one()) {
            torsion.push(d.to_u64().ok_or(AlgebraError::Overflow)?);
        }
        Ok(Self::new(n - r, &torsion))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let k = self.torsion[i..].iter().take_while(|&&x| x == t).count();
            parts.push(if k == 1 { format!("Z/{t}") } else { format!("(Z/{t})^{k}") });
            i += k;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A homomorphism between abelian groups in their standard generators:
/// column `j` is the image of domain generator `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Homomorphism {
    pub domain: AbelianGroup,
    pub codomain: AbelianGroup,
    pub matrix: IntegerMatrix,
}

impl Homomorphism {
    pub fn new(domain: AbelianGroup, codomain: AbelianGroup, matrix: IntegerMatrix) -> Result<Self, AlgebraError> {
        if matrix.rows() != codomain.generator_count() || matrix.cols() != domain.generator_count() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "matrix is {}x{}, groups need {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.generator_count(),
                domain.generator_count()
            )));
        }
        let h = Self {
            domain,
            codomain,
            matrix,
        };
        let target = Lattice::span(&h.codomain.relations());
        let images = h.matrix.mul(&h.domain.relations());
        if target.coordinate_matrix(&images).is_none() {
            return Err(AlgebraError::NotWellDefined);
        }
        Ok(h)
    }

    pub fn zero(domain: AbelianGroup, codomain: AbelianGroup) -> Self {
        let matrix = IntegerMatrix::zeros(codomain.generator_count(), domain.generator_count());
        Self {
            domain,
            codomain,
            matrix,
        }
    }

    /// `{x : F x ∈ im R_codomain}` as a lattice in the domain generators.
    fn preimage_of_zero(&self) -> Lattice {
        let n = self.domain.generator_count();
        let stacked = self.matrix.hstack(&self.codomain.relations());
        let k = kernel_lattice(&stacked);
        Lattice::span(&k.top_rows(n))
    }

    pub fn kernel(&self) -> Result<AbelianGroup, AlgebraError> {
        quotient(&self.preimage_of_zero(), &self.domain.relations())
    }

    pub fn cokernel(&self) -> Result<AbelianGroup, AlgebraError> {
        AbelianGroup::from_relations(&self.matrix.hstack(&self.codomain.relations()))
    }

    pub fn image(&self) -> Result<AbelianGroup, AlgebraError> {
        let spanned = Lattice::span(&self.matrix.hstack(&self.codomain.relations()));
        quotient(&spanned, &self.codomain.relations())
    }

    pub fn compose(&self, first: &Homomorphism) -> Result<Homomorphism, AlgebraError> {
        if first.codomain != self.domain {
            return Err(AlgebraError::ShapeMismatch("maps do not compose".into()));
        }
        Homomorphism::new(first.domain.clone(), self.codomain.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn is_zero_map(&self) -> bool {
        let target = Lattice::span(&self.codomain.relations());
        target.coordinate_matrix(&self.matrix).is_some()
    }
}

/// `L / span(sub)` where every column of `sub` lies in `L`.
fn quotient(l: &Lattice, sub: &IntegerMatrix) -> Result<AbelianGroup, AlgebraError> {
    let coords = l
        .coordinate_matrix(sub)
        .ok_or_else(|| AlgebraError::ShapeMismatch("subgroup not contained in lattice".into()))?;
    AbelianGroup::from_relations(&coords)
}

/// Homology `ker g / im f` at the middle of `A --f--> B --g--> C`.
pub fn subquotient(f: &Homomorphism, g: &Homomorphism) -> Result<AbelianGroup, AlgebraError> {
    if f.codomain != g.domain {
        return Err(AlgebraError::ShapeMismatch("maps do not compose".into()));
    }
    if !g.compose(f)?.is_zero_map() {
        return Err(AlgebraError::NotAComplex { degree: 0 });
    }
    let ker = g.preimage_of_zero();
    let gens = f.matrix.hstack(&f.codomain.relations());
    quotient(&ker, &gens)
}

/// A Z-graded abelian group; missing degrees are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedAbelianGroup {
    groups: BTreeMap<i32, AbelianGroup>,
}

impl GradedAbelianGroup {
    pub fn new() -> Self {
        Self::default()
    }

    /// Groups in consecutive degrees starting at `start`.
    pub fn from_list(start: i32, groups: &[AbelianGroup]) -> Self {
        let mut g = Self::new();
        for (k, a) in groups.iter().enumerate() {
            g.set(start + k as i32, a.clone());
        }
        g
    }

    pub fn get(&self, degree: i32) -> AbelianGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, degree: i32, group: AbelianGroup) {
        if group.is_zero() {
            self.groups.remove(&degree);
        } else {
            self.groups.insert(degree, group);
        }
    }

    pub fn add_to(&mut self, degree: i32, group: &AbelianGroup) {
        let sum = self.get(degree).direct_sum(group);
        self.set(degree, sum);
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &AbelianGroup)> {
        self.groups.iter().map(|(&k, g)| (k, g))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.groups.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.groups.keys().next_back().copied()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, g) in other.iter() {
            out.add_to(k, g);
        }
        out
    }

    pub fn shift(&self, by: i32) -> Self {
        Self {
            groups: self.groups.iter().map(|(&k, g)| (k + by, g.clone())).collect(),
        }
    }

    /// Drops one copy of Z from degree 0.
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        let h0 = self.get(0);
        if h0.rank() > 0 {
            out.set(0, AbelianGroup::new(h0.rank() - 1, h0.torsion()));
        }
        out
    }

    /// Adds one copy of Z in degree 0.
    pub fn unreduced(&self) -> Self {
        let mut out = self.clone();
        out.add_to(0, &AbelianGroup::free(1));
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(k, g)| if k.rem_euclid(2) == 0 { g.rank() as i64 } else { -(g.rank() as i64) })
            .sum()
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(AbelianGroup::rank).sum()
    }
}

impl fmt::Display for GradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(k, g)| format!("{k}: {g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct GradedEntry {
    degree: i32,
    rank: usize,
    torsion: Vec<u64>,
}

/// Serialized as `[{"degree", "rank", "torsion"}, …]` over nonzero degrees.
impl Serialize for GradedAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<GradedEntry> = self
            .iter()
            .map(|(degree, g)| GradedEntry {
                degree,
                rank: g.rank(),
                torsion: g.torsion().to_vec(),
            })
            .collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<GradedEntry>::deserialize(d)?;
        let mut g = GradedAbelianGroup::new();
        for e in entries {
            g.add_to(e.degree, &AbelianGroup::new(e.rank, &e.torsion));
        }
        Ok(g)
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            rank: usize,
            torsion: &'a [u64],
        }
        Repr {
            rank: self.rank,
            torsion: &self.torsion,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rank: usize,
            torsion: Vec<u64>,
        }
        let r = Repr::deserialize(d)?;
        Ok(AbelianGroup::new(r.rank, &r.torsion))
    }
}

/// Shorthand for `Z^rank ⊕ (Z/2)^twos`, the only groups that occur in the
/// SU(2) tables.
pub fn z_and_2(rank: usize, twos: usize) -> AbelianGroup {
    AbelianGroup::new(rank, &vec![2; twos])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_form() {
        assert_eq!(AbelianGroup::from_cyclic_orders(&[2, 3]).torsion(), &[6]);
        assert_eq!(AbelianGroup::from_cyclic_orders(&[4, 2]).torsion(), &[2, 4]);
        assert_eq!(AbelianGroup::from_cyclic_orders(&[6, 4]).torsion(), &[2, 12]);
        assert_eq!(AbelianGroup::from_cyclic_orders(&[1, 0, 0]), AbelianGroup::free(2));
        assert!(AbelianGroup::cyclic(1).is_zero());
        assert_eq!(AbelianGroup::new(1, &[2, 2]).to_string(), "Z + (Z/2)^2");
    }

    #[test]
    fn tensor_and_tor() {
        let z = AbelianGroup::free(1);
        let z2 = AbelianGroup::cyclic(2);
        let z4 = AbelianGroup::cyclic(4);
        assert_eq!(z.tensor(&z2), z2);
        assert_eq!(z2.tensor(&z4), z2);
        assert_eq!(z2.tor(&z4), z2);
        assert!(z.tor(&z2).is_zero());
        assert_eq!(AbelianGroup::free(2).tensor(&AbelianGroup::free(3)), AbelianGroup::free(6));
    }

    #[test]
    fn homomorphism_kernels_and_cokernels() {
        // ×2 on Z
        let z = AbelianGroup::free(1);
        let f = Homomorphism::new(z.clone(), z.clone(), IntegerMatrix::from_rows(&[vec![2]])).unwrap();
        assert!(f.kernel().unwrap().is_zero());
        assert_eq!(f.cokernel().unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(f.image().unwrap(), z);

        // Z → Z/2 reduction
        let z2 = AbelianGroup::cyclic(2);
        let g = Homomorphism::new(z.clone(), z2.clone(), IntegerMatrix::from_rows(&[vec![1]])).unwrap();
        assert_eq!(g.kernel().unwrap(), z);
        assert!(g.cokernel().unwrap().is_zero());
        assert_eq!(g.image().unwrap(), z2);

        // Z/2 → Z is only the zero map
        assert!(matches!(
            Homomorphism::new(z2.clone(), z.clone(), IntegerMatrix::from_rows(&[vec![1]])),
            Err(AlgebraError::NotWellDefined)
        ));

        // Z/4 → Z/2 reduction has kernel Z/2
        let z4 = AbelianGroup::cyclic(4);
        let h = Homomorphism::new(z4, z2.clone(), IntegerMatrix::from_rows(&[vec![1]])).unwrap();
        assert_eq!(h.kernel().unwrap(), z2);
    }

    #[test]
    fn middle_homology() {
        // Z --2--> Z --0--> Z: ker/im = Z/2
        let z = AbelianGroup::free(1);
        let f = Homomorphism::new(z.clone(), z.clone(), IntegerMatrix::from_rows(&[vec![2]])).unwrap();
        let g = Homomorphism::zero(z.clone(), z.clone());
        assert_eq!(subquotient(&f, &g).unwrap(), AbelianGroup::cyclic(2));
        let id = Homomorphism::new(z.clone(), z.clone(), IntegerMatrix::identity(1)).unwrap();
        assert!(subquotient(&f, &id).is_err());
    }

    #[test]
    fn graded_json() {
        let g = GradedAbelianGroup::from_list(0, &[z_and_2(1, 0), z_and_2(0, 0), z_and_2(2, 1)]);
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(
            text,
            r#"[{"degree":0,"rank":1,"torsion":[]},{"degree":2,"rank":2,"torsion":[2]}]"#
        );
        assert_eq!(serde_json::from_str::<GradedAbelianGroup>(&text).unwrap(), g);
        assert_eq!(g.reduced().get(0), AbelianGroup::zero());
        assert_eq!(g.euler_characteristic(), 3);
    }
}
