//! Plateau Betti numbers and torsion detection by comparing fields.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::reduce::Barcode;
use super::PersistenceError;

/// A plateau must be at least this many median bar lengths long.
pub const PLATEAU_FACTOR: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Plateau {
    pub betti: usize,
    pub lo: f64,
    pub hi: f64,
}

impl Plateau {
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

/// Scale after which the number of components no longer changes.
pub fn connectivity_scale(barcode: &Barcode) -> f64 {
    let end = barcode.end(0);
    barcode
        .degree(0)
        .iter()
        .filter_map(|b| b.death)
        .filter(|&d| d <= end)
        .fold(0.0, f64::max)
}

/// Longest window between consecutive bar endpoints (earliest on ties)
/// together with the number of bars spanning it. Windows lie in the range
/// where the degree is exact and, in positive degrees, start no earlier
/// than [`connectivity_scale`]. Rejected as `Unstable` if shorter than
/// [`PLATEAU_FACTOR`] times the median finite bar length in that degree.
pub fn betti_at_plateau(barcode: &Barcode, degree: usize) -> Result<Plateau, PersistenceError> {
    let bars = barcode.degree(degree);
    let end = barcode.end(degree);
    let start = if degree == 0 { 0.0 } else { connectivity_scale(barcode).min(end) };
    let mut events: Vec<f64> = vec![start, end];
    for b in bars {
        events.push(b.birth);
        events.extend(b.death);
    }
    events.retain(|&x| (start..=end).contains(&x));
    events.sort_by(f64::total_cmp);
    events.dedup();

    let mut best: Option<Plateau> = None;
    for w in events.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if best.is_none_or(|b| hi - lo > b.length()) {
            let betti = bars.iter().filter(|b| b.covers(lo, hi)).count();
            best = Some(Plateau { betti, lo, hi });
        }
    }
    let plateau = best.unwrap_or(Plateau {
        betti: bars.iter().filter(|b| b.covers(start, end)).count(),
        lo: start,
        hi: end,
    });
    let med = median(bars.iter().filter(|b| b.death.is_some()).map(|b| b.length()).collect());
    if plateau.length() < PLATEAU_FACTOR * med {
        return Err(PersistenceError::Unstable {
            degree,
            length: plateau.length(),
            median: med,
        });
    }
    Ok(plateau)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeComparison {
    pub degree: usize,
    /// Plateau of the reference (smallest) field.
    pub plateau: Plateau,
    /// Bars spanning the reference plateau, per field characteristic.
    pub betti: BTreeMap<u64, usize>,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub reference_field: u64,
    pub degrees: Vec<DegreeComparison>,
}

impl TorsionReport {
    pub fn flagged_degrees(&self) -> Vec<usize> {
        self.degrees.iter().filter(|d| d.flagged).map(|d| d.degree).collect()
    }
}

/// Compares Betti numbers across fields on the plateau of the smallest
/// field. A degree is flagged when any two fields disagree.
pub fn torsion_detect(barcodes: &[Barcode], degrees: &[usize]) -> Result<TorsionReport, PersistenceError> {
    let reference = barcodes
        .iter()
        .min_by_key(|b| b.field)
        .ok_or_else(|| PersistenceError::BadArgument("no barcodes to compare".into()))?;
    let mut out = Vec::new();
    for &d in degrees {
        let plateau = betti_at_plateau(reference, d)?;
        let betti: BTreeMap<u64, usize> = barcodes
            .iter()
            .map(|b| (b.field, b.degree(d).iter().filter(|x| x.covers(plateau.lo, plateau.hi)).count()))
            .collect();
        let flagged = betti.values().any(|&v| v != plateau.betti);
        out.push(DegreeComparison {
            degree: d,
            plateau,
            betti,
            flagged,
        });
    }
    Ok(TorsionReport {
        reference_field: reference.field,
        degrees: out,
    })
}
