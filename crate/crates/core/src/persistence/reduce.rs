//! Persistence pairs over F_p by reducing the coboundary matrix with clearing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::complex::FilteredComplex;
use super::PersistenceError;
use crate::algebra::{mod_inverse, Field};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bar {
    pub birth: f64,
    /// `None` for a class that survives to the end of the filtration.
    pub death: Option<f64>,
}

impl Bar {
    pub fn length(&self) -> f64 {
        self.death.map_or(f64::INFINITY, |d| d - self.birth)
    }

    /// Alive on all of `[lo, hi)`.
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        self.birth <= lo && self.death.is_none_or(|d| d >= hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Barcode {
    /// Field characteristic.
    pub field: u64,
    /// Bars per degree; degrees with no bars are absent.
    pub bars: BTreeMap<usize, Vec<Bar>>,
    /// Dimension of the complex.
    pub max_degree: usize,
    /// Scale up to which the bars of each degree are exact.
    pub exact_until: BTreeMap<usize, f64>,
}

impl Barcode {
    pub fn degree(&self, d: usize) -> &[Bar] {
        self.bars.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn end(&self, d: usize) -> f64 {
        self.exact_until.get(&d).copied().unwrap_or(0.0)
    }

    /// Cuts degrees `min_degree..` off at `scale`: later births are dropped
    /// and classes still alive at `scale` become surviving classes.
    pub fn truncate(&mut self, min_degree: usize, scale: f64) {
        for (_, bars) in self.bars.iter_mut().filter(|(d, _)| **d >= min_degree) {
            bars.retain(|b| b.birth <= scale);
            for b in bars.iter_mut() {
                if b.death.is_some_and(|x| x > scale) {
                    b.death = None;
                }
            }
        }
        self.bars.retain(|_, v| !v.is_empty());
        for (_, end) in self.exact_until.iter_mut().filter(|(d, _)| **d >= min_degree) {
            *end = end.min(scale);
        }
    }

    /// Number of bars alive at `scale`.
    pub fn betti_at(&self, d: usize, scale: f64) -> usize {
        self.degree(d).iter().filter(|b| b.birth <= scale && b.death.is_none_or(|x| x > scale)).count()
    }

    /// Rows `degree,birth,death,field`, deaths of surviving classes as `inf`.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["degree", "birth", "death", "field"])?;
        for (d, bars) in &self.bars {
            for b in bars {
                let death = b.death.map_or_else(|| "inf".to_string(), |x| format!("{x:.17e}"));
                w.write_record([d.to_string(), format!("{:.17e}", b.birth), death, self.field.to_string()])?;
            }
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is ascii"))
    }
}

type Column = Vec<(u32, u64)>;

/// `a + c·b` over F_p for columns sorted by row.
fn axpy(a: &Column, c: u64, b: &Column, p: u64) -> Column {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * b[j].1 % p));
            j += 1;
        } else {
            let v = (a[i].1 + c * b[j].1) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Barcode of the complex as given, in every degree up to its dimension.
/// Zero-length bars are dropped. For a truncated Rips complex only the
/// degrees below the top are meaningful.
pub fn reduce(complex: &FilteredComplex, p: u64) -> Result<Barcode, PersistenceError> {
    if !matches!(Field::from_characteristic(p), Ok(Field::Prime(_))) {
        return Err(PersistenceError::BadArgument(format!("{p} is not a prime")));
    }
    let n = complex.len();
    let top = complex.max_dim();
    let cob = complex.coboundaries();
    let to_field = |s: i8| if s > 0 { 1 } else { p - 1 };

    // pivot row -> reduced column owning it
    let mut owner: Vec<u32> = vec![u32::MAX; n];
    let mut reduced: Vec<Column> = Vec::new();
    let mut killed = vec![false; n];
    let mut bars: BTreeMap<usize, Vec<Bar>> = BTreeMap::new();

    let max_degree = top;
    let degrees = if complex.is_empty() { 0 } else { top + 1 };
    for d in 0..degrees {
        for sigma in (0..n).rev().filter(|&s| complex.dim(s) == d) {
            if killed[sigma] {
                continue;
            }
            let mut col: Column = cob[sigma].iter().map(|&(r, s)| (r, to_field(s))).collect();
            while let Some(&(pivot, v)) = col.first() {
                let o = owner[pivot as usize];
                if o == u32::MAX {
                    break;
                }
                // reduced columns are normalized to pivot coefficient 1
                col = axpy(&col, p - v, &reduced[o as usize], p);
            }
            let birth = complex.filtration(sigma);
            match col.first() {
                Some(&(pivot, v)) => {
                    let inv = mod_inverse(v, p);
                    for e in col.iter_mut() {
                        e.1 = e.1 * inv % p;
                    }
                    owner[pivot as usize] = reduced.len() as u32;
                    reduced.push(col);
                    killed[pivot as usize] = true;
                    let death = complex.filtration(pivot as usize);
                    if death > birth {
                        bars.entry(d).or_default().push(Bar {
                            birth,
                            death: Some(death),
                        });
                    }
                }
                None => bars.entry(d).or_default().push(Bar { birth, death: None }),
            }
        }
    }
    for v in bars.values_mut() {
        v.sort_by(|a, b| {
            a.birth
                .total_cmp(&b.birth)
                .then(a.death.unwrap_or(f64::INFINITY).total_cmp(&b.death.unwrap_or(f64::INFINITY)))
        });
    }
    let end = (0..n).map(|i| complex.filtration(i)).fold(0.0, f64::max);
    Ok(Barcode {
        field: p,
        bars,
        max_degree,
        exact_until: (0..degrees).map(|d| (d, end)).collect(),
    })
}
