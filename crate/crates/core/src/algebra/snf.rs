//! Smith normal form and integer lattice utilities.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// `u · m · v = diag(diagonal)`, with `u`, `v` unimodular.
#[derive(Debug, Clone, PartialEq)]
pub struct SmithForm {
    /// Invariant factors along the diagonal, length `min(rows, cols)`,
    /// nonnegative, each dividing the next; zeros come last.
    pub diagonal: Vec<BigInt>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn as_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::diagonal(self.u.rows(), self.v.rows(), &self.diagonal)
    }
}

fn min_abs_entry(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -(a.get(i, t) / a.get(t, t));
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -(a.get(t, j) / a.get(t, t));
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                // a smaller remainder appeared in row or column t; make it the pivot
                let (pi, pj) = min_abs_entry_in_cross(&a, t);
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(a.get(i, j) % a.get(t, t)).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let diagonal = (0..rows.min(cols)).map(|i| a.get(i, i).clone()).collect();
    SmithForm { diagonal, u, v }
}

/// Smallest nonzero entry in row `t` or column `t` at or after the pivot.
fn min_abs_entry_in_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_val: Option<BigInt> = None;
    let mut consider = |i: usize, j: usize| {
        let v = a.get(i, j);
        if !v.is_zero() && best_val.as_ref().is_none_or(|b| v.abs() < *b) {
            best_val = Some(v.abs());
            best = (i, j);
        }
    };
    for i in t..a.rows() {
        consider(i, t);
    }
    for j in t..a.cols() {
        consider(t, j);
    }
    best
}

/// Basis of `{x ∈ Zⁿ : m x = 0}` as the columns of an `n × k` matrix.
pub fn kernel_lattice(m: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let n = m.cols();
    let cols: Vec<Vec<BigInt>> = (r..n).map(|j| snf.v.column(j)).collect();
    IntegerMatrix::from_columns(n, &cols)
}

/// A sublattice of Zⁿ in column echelon form: column `j` vanishes above
/// row `pivots[j]` and has a positive entry there.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    basis: IntegerMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    /// The lattice spanned by the columns of `gens`.
    pub fn span(gens: &IntegerMatrix) -> Self {
        let n = gens.rows();
        let mut a = gens.clone();
        let mut c = 0;
        let mut pivots = Vec::new();
        for p in 0..n {
            if c == a.cols() {
                break;
            }
            loop {
                let best = (c..a.cols())
                    .filter(|&j| !a.get(p, j).is_zero())
                    .min_by(|&x, &y| a.get(p, x).abs().cmp(&a.get(p, y).abs()));
                let Some(j) = best else { break };
                a.swap_cols(c, j);
                let mut done = true;
                for k in c + 1..a.cols() {
                    if a.get(p, k).is_zero() {
                        continue;
                    }
                    let q = -(a.get(p, k) / a.get(p, c));
                    a.add_col_multiple(k, c, &q);
                    done &= a.get(p, k).is_zero();
                }
                if done {
                    if a.get(p, c).is_negative() {
                        a.negate_col(c);
                    }
                    pivots.push(p);
                    c += 1;
                    break;
                }
            }
        }
        let cols: Vec<Vec<BigInt>> = (0..c).map(|j| a.column(j)).collect();
        Self {
            basis: IntegerMatrix::from_columns(n, &cols),
            pivots,
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            basis: IntegerMatrix::identity(n),
            pivots: (0..n).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    /// Coordinates of `v` in the echelon basis, `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut r = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (j, &p) in self.pivots.iter().enumerate() {
            let piv = self.basis.get(p, j);
            if !(&r[p] % piv).is_zero() {
                return None;
            }
            let k = &r[p] / piv;
            if !k.is_zero() {
                for (i, ri) in r.iter_mut().enumerate() {
                    *ri -= &k * self.basis.get(i, j);
                }
            }
            coords.push(k);
        }
        r.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of every column of `gens`; `None` if one lies outside.
    pub fn coordinate_matrix(&self, gens: &IntegerMatrix) -> Option<IntegerMatrix> {
        let cols = (0..gens.cols())
            .map(|j| self.coordinates(&gens.column(j)))
            .collect::<Option<Vec<_>>>()?;
        Some(IntegerMatrix::from_columns(self.rank(), &cols))
    }
}
