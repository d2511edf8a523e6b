//! Brute-force oracles shared by the integration and acceptance tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use commtop::algebra::{
    chain_betti_mod_p, chain_betti_rational, rp3_cellular, smith_normal_form, AbelianGroup, ChainComplex, Field,
    GradedAbelianGroup, IntegerMatrix, PoincarePolynomial, Variance,
};
use commtop::persistence::{reduce, FilteredComplex};
use commtop::rng::seeded;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub fn to_rows(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect()).collect()
}

/// Determinant by fraction-free elimination.
pub fn bareiss_det(m: &IntegerMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_rows(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank over F_p by plain row reduction.
pub fn rank_mod(m: &IntegerMatrix, p: u64) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = to_rows(m)
        .into_iter()
        .map(|r| r.into_iter().map(|x| (x % p).to_i64().unwrap().rem_euclid(p)).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| x * a[rank][c] % p == 1).unwrap();
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % p;
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn unimodular(n: usize, rng: &mut impl Rng, moves: usize) -> IntegerMatrix {
    let mut u = IntegerMatrix::identity(n);
    for _ in 0..moves {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        match rng.random_range(0..3) {
            0 if a != b => u.add_row_multiple(a, b, &BigInt::from(rng.random_range(-2i64..=2))),
            1 => u.swap_rows(a, b),
            _ => u.negate_row(a),
        }
    }
    u
}

/// Checks the certificate `u · m · v = diag` with unimodular `u`, `v` and
/// the divisibility chain, then compares ranks mod small primes.
pub fn check_snf(m: &IntegerMatrix) -> Vec<BigInt> {
    let s = smith_normal_form(m);
    assert_eq!(s.u.mul(m).mul(&s.v), s.as_matrix());
    assert!(bareiss_det(&s.u).abs().is_one());
    assert!(bareiss_det(&s.v).abs().is_one());
    let d = &s.diagonal;
    assert!(d.iter().all(|x| !x.is_negative()));
    for w in d.windows(2) {
        assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])), "{d:?}");
    }
    for p in [2u64, 3, 5, 7] {
        let units = d.iter().filter(|x| !x.is_zero() && !x.is_multiple_of(&BigInt::from(p))).count();
        assert_eq!(rank_mod(m, p), units, "rank mod {p}");
    }
    d.clone()
}

/// 20 × 20 matrix with planted invariant factors from {1, 2, 6, 0},
/// hidden by unimodular mixing.
pub fn planted_matrix(rng: &mut impl Rng, n: usize) -> (IntegerMatrix, Vec<BigInt>) {
    let mut v = vec![1i64; n];
    let twos = rng.random_range(0..4);
    let sixes = rng.random_range(0..3);
    let zeros = rng.random_range(0..4);
    for x in v.iter_mut().skip(n - zeros - sixes - twos).take(twos) {
        *x = 2;
    }
    for x in v.iter_mut().skip(n - zeros - sixes).take(sixes) {
        *x = 6;
    }
    for x in v.iter_mut().skip(n - zeros) {
        *x = 0;
    }
    let diag: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    let d = IntegerMatrix::diagonal(n, n, &diag);
    let m = unimodular(n, rng, 60).mul(&d).mul(&unimodular(n, rng, 60).transpose());
    (m, diag)
}

/// Runs the SNF oracle on 200 random 20 × 20 matrices, half with planted
/// invariant factors and half with uniform entries checked against the
/// determinant.
pub fn snf_trials(seed: u64, trials: usize) {
    let mut rng = seeded(seed);
    let n = 20;
    for trial in 0..trials {
        if trial % 2 == 0 {
            let (m, diag) = planted_matrix(&mut rng, n);
            assert_eq!(check_snf(&m), diag, "trial {trial}");
        } else {
            let entries: Vec<i64> = (0..n * n).map(|_| rng.random_range(-3..=3)).collect();
            let m = IntegerMatrix::from_i64(n, n, &entries);
            let d = check_snf(&m);
            let product = d.iter().fold(BigInt::one(), |acc, x| acc * x);
            assert_eq!(product, bareiss_det(&m).abs(), "trial {trial}");
        }
    }
}

pub fn cellular(dims: &[usize], boundaries: &[Vec<Vec<i64>>]) -> ChainComplex {
    let mats = boundaries
        .iter()
        .enumerate()
        .map(|(k, rows)| {
            if rows.is_empty() {
                IntegerMatrix::zeros(dims[k], dims[k + 1])
            } else {
                IntegerMatrix::from_rows(rows)
            }
        })
        .collect();
    ChainComplex::new(dims.to_vec(), mats).unwrap()
}

pub fn closure(top: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = std::collections::BTreeSet::new();
    for s in top {
        let k = s.len();
        for mask in 1u32..(1 << k) {
            let mut face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
            face.sort_unstable();
            out.insert(face);
        }
    }
    out.into_iter().collect()
}

pub fn rp2() -> Vec<Vec<usize>> {
    closure(&[
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 5, 1],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![3, 4, 1],
        vec![4, 5, 2],
        vec![5, 1, 3],
    ])
}

pub fn torus7() -> Vec<Vec<usize>> {
    let mut t = Vec::new();
    for i in 0..7 {
        t.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        t.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    closure(&t)
}

/// Fixture complexes with their integral homology written out by hand.
pub fn fixtures() -> Vec<(&'static str, ChainComplex, Vec<AbelianGroup>)> {
    let z = AbelianGroup::free;
    let zero = AbelianGroup::zero;
    vec![
        (
            "rp2",
            ChainComplex::simplicial(&rp2()).unwrap(),
            vec![z(1), AbelianGroup::cyclic(2), zero()],
        ),
        ("torus", ChainComplex::simplicial(&torus7()).unwrap(), vec![z(1), z(2), z(1)]),
        (
            "sphere2",
            ChainComplex::simplicial(&closure(&[vec![0, 1, 2, 3]]).into_iter().filter(|s| s.len() < 4).collect::<Vec<_>>())
                .unwrap(),
            vec![z(1), zero(), z(1)],
        ),
        (
            "klein",
            cellular(&[1, 2, 1], &[vec![], vec![vec![2], vec![0]]]),
            vec![z(1), AbelianGroup::new(1, &[2]), zero()],
        ),
        ("rp3", rp3_cellular(), vec![z(1), AbelianGroup::cyclic(2), zero(), z(1)]),
        (
            "lens3",
            cellular(&[1, 1, 1, 1], &[vec![], vec![vec![3]], vec![]]),
            vec![z(1), AbelianGroup::cyclic(3), zero(), z(1)],
        ),
        (
            "moore6",
            cellular(&[1, 1, 1], &[vec![], vec![vec![6]]]),
            vec![z(1), AbelianGroup::cyclic(6), zero()],
        ),
    ]
}

pub fn p_count(g: &AbelianGroup, p: u64) -> usize {
    g.torsion().iter().filter(|&&o| o % p == 0).count()
}

/// Universal coefficients: Betti numbers over F_p from the integral groups,
/// compared with direct ranks of the boundary maps mod p and with the
/// field series.
pub fn check_uct(name: &str, c: &ChainComplex, h: &[AbelianGroup]) {
    let ranks: Vec<usize> = h.iter().map(AbelianGroup::rank).collect();
    assert_eq!(chain_betti_rational(c), ranks, "{name} over Q");
    let graded = GradedAbelianGroup::from_list(0, h);
    for p in [2u64, 3, 5] {
        let uct: Vec<usize> = (0..h.len())
            .map(|k| h[k].rank() + p_count(&h[k], p) + if k > 0 { p_count(&h[k - 1], p) } else { 0 })
            .collect();
        assert_eq!(chain_betti_mod_p(c, p), uct, "{name} over F{p}");
        let series = PoincarePolynomial::from_graded(&graded, Field::Prime(p), Variance::Homology).unwrap();
        let coeffs: Vec<usize> = (0..h.len()).map(|k| series.coeff(k) as usize).collect();
        assert_eq!(coeffs, uct, "{name} series over F{p}");
    }
}

/// Small filtered complexes written out by hand, all with at most 12 simplices.
pub fn small_filtered_fixtures() -> Vec<Vec<(Vec<u32>, f64)>> {
    let triangle = vec![
        (vec![0], 0.0),
        (vec![1], 0.0),
        (vec![2], 0.0),
        (vec![0, 1], 1.0),
        (vec![1, 2], 1.0),
        (vec![0, 2], 1.0),
        (vec![0, 1, 2], 2.0),
    ];
    let square = vec![
        (vec![0], 0.0),
        (vec![1], 0.0),
        (vec![2], 0.0),
        (vec![3], 0.0),
        (vec![0, 1], 1.0),
        (vec![1, 2], 1.0),
        (vec![2, 3], 1.0),
        (vec![0, 3], 1.0),
        (vec![0, 2], 1.5),
        (vec![0, 1, 2], 1.5),
        (vec![0, 2, 3], 1.5),
    ];
    let pieces = vec![(vec![0], 0.0), (vec![1], 0.0), (vec![2], 0.5), (vec![3], 0.5), (vec![0, 1], 1.0), (vec![2, 3], 2.0)];
    let hollow: Vec<(Vec<u32>, f64)> = [
        vec![0],
        vec![1],
        vec![2],
        vec![3],
        vec![0, 1],
        vec![0, 2],
        vec![0, 3],
        vec![1, 2],
        vec![1, 3],
        vec![2, 3],
        vec![0, 1, 2],
        vec![0, 1, 3],
    ]
    .into_iter()
    .map(|s| (s, 0.0))
    .collect();
    vec![triangle, square, pieces, hollow]
}

/// Rank over F_p of a matrix with entries already reduced mod p.
pub fn rank_mod_rows(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| x * a[rank][c] % p == 1).unwrap();
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % p;
                for k in 0..cols {
                    a[r][k] = (a[r][k] + p * p - f * a[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers over F_p of a simplicial complex given by sorted simplices.
pub fn brute_betti(simplices: &[Vec<u32>], p: u64, top: usize) -> Vec<usize> {
    let by_dim: Vec<Vec<&Vec<u32>>> =
        (0..=top + 1).map(|d| simplices.iter().filter(|s| s.len() == d + 1).collect()).collect();
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || by_dim[d].is_empty() || by_dim[d - 1].is_empty() {
            return 0;
        }
        let rows = &by_dim[d - 1];
        let m: Vec<Vec<u64>> = rows
            .iter()
            .map(|face| {
                by_dim[d]
                    .iter()
                    .map(|s| {
                        (0..s.len())
                            .find(|&i| {
                                let mut f = (*s).clone();
                                f.remove(i);
                                &f == *face
                            })
                            .map_or(0, |i| if i % 2 == 0 { 1 } else { p - 1 })
                    })
                    .collect()
            })
            .collect();
        rank_mod_rows(m, p)
    };
    (0..=top).map(|d| by_dim[d].len() - boundary_rank(d) - boundary_rank(d + 1)).collect()
}

pub fn check_against_oracle(simplices: &[(Vec<u32>, f64)], p: u64) {
    let complex = FilteredComplex::from_simplices(simplices).unwrap();
    let barcode = reduce(&complex, p).unwrap();
    let top = simplices.iter().map(|(s, _)| s.len() - 1).max().unwrap_or(0);
    let scales: BTreeSet<u64> = simplices.iter().map(|(_, f)| f.to_bits()).collect();
    for bits in scales {
        let scale = f64::from_bits(bits);
        let mut sub: Vec<Vec<u32>> = simplices.iter().filter(|(_, f)| *f <= scale).map(|(s, _)| s.clone()).collect();
        for s in &mut sub {
            s.sort_unstable();
        }
        let expected = brute_betti(&sub, p, top);
        let got: Vec<usize> = (0..=top).map(|d| barcode.betti_at(d, scale)).collect();
        assert_eq!(got, expected, "F{p} at scale {scale} on {simplices:?}");
    }
}

/// Random complex on six vertices closed under faces, with at most
/// `limit` simplices and a filtration monotone along faces.
pub fn random_complex(seed: u64, limit: usize) -> Vec<(Vec<u32>, f64)> {
    let mut rng = seeded(seed);
    let mut chosen: BTreeSet<Vec<u32>> = BTreeSet::new();
    for _ in 0..40 {
        let size = rng.random_range(1..=4);
        let mut s: Vec<u32> = (0..6).collect();
        for i in 0..size {
            let j = rng.random_range(i..6);
            s.swap(i, j);
        }
        let mut s = s[..size].to_vec();
        s.sort_unstable();
        let mut with_faces: BTreeSet<Vec<u32>> = chosen.clone();
        for mask in 1u32..(1 << s.len()) {
            with_faces.insert((0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect());
        }
        if with_faces.len() <= limit {
            chosen = with_faces;
        }
    }
    let mut out: Vec<(Vec<u32>, f64)> = Vec::new();
    let mut by_size: Vec<Vec<u32>> = chosen.into_iter().collect();
    by_size.sort_by_key(Vec::len);
    for s in by_size {
        let own = rng.random_range(0..4) as f64;
        let faces_max = out
            .iter()
            .filter(|(f, _)| f.len() + 1 == s.len() && f.iter().all(|v| s.contains(v)))
            .map(|(_, x)| *x)
            .fold(0.0, f64::max);
        out.push((s, own.max(faces_max)));
    }
    out
}

