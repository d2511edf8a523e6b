//! Filtered simplicial complexes and the Vietoris–Rips construction.

use std::collections::HashMap;

use super::cloud::DistanceMatrix;
use super::PersistenceError;

/// Largest supported simplex dimension.
pub const MAX_DIM: usize = 4;

/// Default cap on the number of simplices.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

const VERTEX_BITS: u32 = 25;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Entry {
    verts: [u32; MAX_DIM + 1],
    dim: u8,
    filtration: f64,
}

impl Entry {
    fn vertices(&self) -> &[u32] {
        &self.verts[..=self.dim as usize]
    }
}

fn key(vertices: &[u32]) -> u128 {
    vertices.iter().fold(0u128, |k, &v| (k << VERTEX_BITS) | (v as u128 + 1))
}

/// Simplices sorted by (filtration, dimension, vertices), with faces
/// never entering after their cofaces.
#[derive(Debug, Clone, Default)]
pub struct FilteredComplex {
    entries: Vec<Entry>,
    max_dim: usize,
}

impl FilteredComplex {
    /// Builds a complex from `(vertices, filtration)` pairs. Every face of
    /// every simplex must be listed with a filtration no larger than the
    /// simplex's own.
    pub fn from_simplices(simplices: &[(Vec<u32>, f64)]) -> Result<Self, PersistenceError> {
        let mut entries = Vec::with_capacity(simplices.len());
        for (verts, f) in simplices {
            let mut sorted = verts.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.is_empty() || sorted.len() != verts.len() || sorted.len() > MAX_DIM + 1 {
                return Err(PersistenceError::InvalidComplex(format!("bad simplex {verts:?}")));
            }
            if sorted.last().is_some_and(|&v| v >= 1 << VERTEX_BITS) {
                return Err(PersistenceError::InvalidComplex(format!("vertex id too large in {verts:?}")));
            }
            if !f.is_finite() {
                return Err(PersistenceError::InvalidComplex(format!("non-finite filtration on {verts:?}")));
            }
            let mut e = Entry {
                verts: [0; MAX_DIM + 1],
                dim: (sorted.len() - 1) as u8,
                filtration: *f,
            };
            e.verts[..sorted.len()].copy_from_slice(&sorted);
            entries.push(e);
        }
        let complex = Self::from_entries(entries);
        let index = complex.index();
        if index.len() != complex.len() {
            return Err(PersistenceError::InvalidComplex("duplicate simplex".into()));
        }
        for e in &complex.entries {
            for face in facets(e.vertices()) {
                match index.get(&key(&face)) {
                    Some(&i) if complex.entries[i as usize].filtration <= e.filtration => {}
                    Some(_) => {
                        return Err(PersistenceError::InvalidComplex(format!(
                            "face {face:?} enters after {:?}",
                            e.vertices()
                        )))
                    }
                    None => {
                        return Err(PersistenceError::InvalidComplex(format!(
                            "face {face:?} of {:?} is missing",
                            e.vertices()
                        )))
                    }
                }
            }
        }
        Ok(complex)
    }

    fn from_entries(mut entries: Vec<Entry>) -> Self {
        entries.sort_by(|a, b| {
            a.filtration
                .total_cmp(&b.filtration)
                .then(a.dim.cmp(&b.dim))
                .then_with(|| a.vertices().cmp(b.vertices()))
        });
        let max_dim = entries.iter().map(|e| e.dim as usize).max().unwrap_or(0);
        Self { entries, max_dim }
    }

    fn index(&self) -> HashMap<u128, u32> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| (key(e.vertices()), i as u32))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn dim(&self, i: usize) -> usize {
        self.entries[i].dim as usize
    }

    pub fn vertices(&self, i: usize) -> &[u32] {
        self.entries[i].vertices()
    }

    pub fn filtration(&self, i: usize) -> f64 {
        self.entries[i].filtration
    }

    pub fn count_in_dim(&self, d: usize) -> usize {
        self.entries.iter().filter(|e| e.dim as usize == d).count()
    }

    /// Simplices with filtration at most `scale`, keeping the order.
    pub fn sublevel(&self, scale: f64) -> Self {
        let entries: Vec<Entry> = self.entries.iter().filter(|e| e.filtration <= scale).copied().collect();
        let max_dim = entries.iter().map(|e| e.dim as usize).max().unwrap_or(0);
        Self { entries, max_dim }
    }

    /// Boundary of each simplex as `(facet index, ±1)`, facets ascending.
    pub fn boundaries(&self) -> Vec<Vec<(u32, i8)>> {
        let index = self.index();
        self.entries
            .iter()
            .map(|e| {
                if e.dim == 0 {
                    return vec![];
                }
                let mut col: Vec<(u32, i8)> = facets(e.vertices())
                    .enumerate()
                    .map(|(pos, face)| (index[&key(&face)], if pos % 2 == 0 { 1 } else { -1 }))
                    .collect();
                col.sort_unstable();
                col
            })
            .collect()
    }

    /// Transpose of [`Self::boundaries`]: cofacets of each simplex with the
    /// same signs, ascending.
    pub fn coboundaries(&self) -> Vec<Vec<(u32, i8)>> {
        let mut out = vec![Vec::new(); self.len()];
        for (j, col) in self.boundaries().into_iter().enumerate() {
            for (i, s) in col {
                out[i as usize].push((j as u32, s));
            }
        }
        out
    }
}

/// Facets in the order obtained by dropping vertex 0, 1, ….
fn facets(vertices: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let n = if vertices.len() > 1 { vertices.len() } else { 0 };
    (0..n).map(move |skip| {
        vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// Upper bound on the number of simplices of dimension ≤ `max_dim` on `n` vertices.
fn full_simplex_count(n: u64, max_dim: usize) -> u64 {
    let mut total = 0u64;
    let mut binom = 1u64;
    for i in 1..=(max_dim as u64 + 1) {
        if i > n {
            break;
        }
        binom = binom.saturating_mul(n - i + 1) / i;
        total = total.saturating_add(binom);
    }
    total
}

/// Rips complex: a simplex enters at its longest edge, edges longer than
/// `max_scale` are dropped. Aborts with `Budget` if the vertex and edge
/// count alone, or the running total, exceeds `budget`.
pub fn rips_complex(
    dist: &DistanceMatrix,
    max_scale: f64,
    max_dim: usize,
    budget: u64,
) -> Result<FilteredComplex, PersistenceError> {
    truncated_rips(dist, max_scale, max_scale, max_dim, budget)
}

/// Rips complex whose edges run up to `edge_scale` while simplices of
/// dimension ≥ 2 stop at `max_scale`. Degree 0 is then exact up to
/// `edge_scale` and higher degrees up to `max_scale`.
pub fn truncated_rips(
    dist: &DistanceMatrix,
    edge_scale: f64,
    max_scale: f64,
    max_dim: usize,
    budget: u64,
) -> Result<FilteredComplex, PersistenceError> {
    if max_dim > MAX_DIM {
        return Err(PersistenceError::BadArgument(format!("max_dim {max_dim} exceeds {MAX_DIM}")));
    }
    if edge_scale < max_scale {
        return Err(PersistenceError::BadArgument("edge scale below the simplex scale".into()));
    }
    let n = dist.len();
    if n >= 1 << VERTEX_BITS {
        return Err(PersistenceError::BadArgument(format!("{n} vertices is too many")));
    }
    let preflight = full_simplex_count(n as u64, max_dim.min(1));
    if preflight > budget {
        return Err(PersistenceError::Budget {
            simplices: preflight,
            budget,
        });
    }

    let words = n.div_ceil(64);
    let mut upper: Vec<Vec<u64>> = vec![vec![0; words]; n];
    for (i, row) in upper.iter_mut().enumerate() {
        for j in i + 1..n {
            if dist.get(i, j) <= max_scale {
                row[j / 64] |= 1 << (j % 64);
            }
        }
    }

    let mut entries = Vec::new();
    let push = |entries: &mut Vec<Entry>, verts: &[u32], f: f64| -> Result<(), PersistenceError> {
        if entries.len() as u64 >= budget {
            return Err(PersistenceError::Budget {
                simplices: entries.len() as u64 + 1,
                budget,
            });
        }
        let mut e = Entry {
            verts: [0; MAX_DIM + 1],
            dim: (verts.len() - 1) as u8,
            filtration: f,
        };
        e.verts[..verts.len()].copy_from_slice(verts);
        entries.push(e);
        Ok(())
    };

    // depth-first expansion over common upper neighbours, starting at edges
    let mut stack: Vec<(Vec<u32>, f64, Vec<u64>)> = Vec::new();
    for v in 0..n {
        push(&mut entries, &[v as u32], 0.0)?;
        if max_dim == 0 {
            continue;
        }
        for w in v + 1..n {
            let f = dist.get(v, w);
            if f > edge_scale {
                continue;
            }
            push(&mut entries, &[v as u32, w as u32], f)?;
            if f > max_scale || max_dim < 2 {
                continue;
            }
            let common: Vec<u64> = upper[v].iter().zip(&upper[w]).map(|(a, b)| a & b).collect();
            stack.push((vec![v as u32, w as u32], f, common));
            while let Some((verts, f, common)) = stack.pop() {
                for (w_idx, &word) in common.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let x = w_idx * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let fx = verts.iter().map(|&u| dist.get(u as usize, x)).fold(f, f64::max);
                        let mut next = verts.clone();
                        next.push(x as u32);
                        push(&mut entries, &next, fx)?;
                        if next.len() <= max_dim {
                            let next_common = common.iter().zip(&upper[x]).map(|(a, b)| a & b).collect();
                            stack.push((next, fx, next_common));
                        }
                    }
                }
            }
        }
    }
    Ok(FilteredComplex::from_entries(entries))
}
