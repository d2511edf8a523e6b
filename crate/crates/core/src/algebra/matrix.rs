//! Dense matrices over Z with arbitrary-precision entries.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Row-major entries.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_i64(rows.len(), cols, &flat)
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "row count mismatch in hstack");
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    /// Rows `0..k` of the matrix.
    pub fn top_rows(&self, k: usize) -> Self {
        Self {
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
        }
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[IntegerMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += k · row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * k;
            self.data[dst * self.cols + c] += v;
        }
    }

    /// `col[dst] += k · col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * k;
            self.data[r * self.cols + dst] += v;
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self.data[r * self.cols + c];
            self.data[r * self.cols + c] = v;
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -&self.data[r * self.cols + c];
            self.data[r * self.cols + c] = v;
        }
    }

    /// Rank over F_p by Gaussian elimination on residues.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let pb = BigInt::from(p);
        let mut m: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| {
                        let v = ((self.get(r, c) % &pb) + &pb) % &pb;
                        v.to_u64().expect("residue fits")
                    })
                    .collect()
            })
            .collect();
        rank_mod_p_dense(&mut m, p)
    }

    pub fn max_abs_bits(&self) -> u64 {
        self.data.iter().map(|v| v.abs().bits()).max().unwrap_or(0)
    }
}

pub(crate) fn rank_mod_p_dense(m: &mut [Vec<u64>], p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = mod_inverse(m[rank][c], p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse of `a` modulo the prime `p`.
pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// Serialized as `{"rows", "cols", "entries"}` with decimal-string entries.
impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<String>>,
        }
        Repr {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<String>>,
        }
        let repr = Repr::deserialize(d)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom("entries do not match the declared shape"));
        }
        let mut m = IntegerMatrix::zeros(repr.rows, repr.cols);
        for (r, row) in repr.entries.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.parse().map_err(D::Error::custom)?);
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_stacking() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b), IntegerMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.hstack(&b).cols(), 4);
        assert_eq!(a.transpose().get(0, 1), &BigInt::from(3));
        let bd = IntegerMatrix::block_diag(&[a.clone(), IntegerMatrix::identity(1)]);
        assert_eq!(bd.rows(), 3);
        assert_eq!(bd.get(2, 2), &BigInt::one());
        assert!(bd.get(0, 2).is_zero());
    }

    #[test]
    fn ranks_mod_p() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(m.rank_mod_p(2), 1);
        assert_eq!(m.rank_mod_p(3), 1);
        assert_eq!(m.rank_mod_p(5), 2);
    }

    #[test]
    fn json_round_trip() {
        let m = IntegerMatrix::from_rows(&[vec![1, -2, 3]]);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"rows":1,"cols":3,"entries":[["1","-2","3"]]}"#);
        assert_eq!(serde_json::from_str::<IntegerMatrix>(&text).unwrap(), m);
    }
}
