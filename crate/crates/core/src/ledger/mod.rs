//! Reference (co)homology tables, the stable splitting identities for
//! commuting tuples in SU(2), and end-to-end derivations of the tables
//! from primitive inputs.

mod derive;
mod splitting;

pub use derive::{derive_and_compare, Discrepancy, DerivationReport, Pipeline};
pub use splitting::{verify_splitting, CrossCheck, SplittingReport, Summand};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Field, GradedAbelianGroup, PoincarePolynomial, Variance};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LedgerError {
    #[error("unknown space {0:?}")]
    UnknownSpace(String),
    #[error("no fixture for {0}")]
    FixtureMissing(String),
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A stored table: integral (co)homology, or a Poincaré series for
/// torsion-free spaces where only the series is recorded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceTable {
    pub name: String,
    pub variance: Variance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<GradedAbelianGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<PoincarePolynomial>,
    pub provenance: String,
}

impl SpaceTable {
    /// Unreduced Betti polynomial over `field`.
    pub fn betti_series(&self, field: Field) -> Result<PoincarePolynomial, LedgerError> {
        match (&self.table, &self.series) {
            (Some(t), _) => Ok(PoincarePolynomial::from_graded(t, field, self.variance)?),
            (None, Some(s)) => Ok(s.clone()),
            (None, None) => Err(LedgerError::FixtureMissing(format!("{} has neither table nor series", self.name))),
        }
    }
}

const FIXTURES: &[(&str, &str)] = &[
    ("hom-z1-su2", include_str!("../../fixtures/hom-z1-su2.json")),
    ("hom-z2-su2", include_str!("../../fixtures/hom-z2-su2.json")),
    ("hom-z3-su2", include_str!("../../fixtures/hom-z3-su2.json")),
    ("hom-zxf2-su2-series", include_str!("../../fixtures/hom-zxf2-su2-series.json")),
    ("su2", include_str!("../../fixtures/su2.json")),
    ("so3", include_str!("../../fixtures/so3.json")),
    ("s6-minus-so3", include_str!("../../fixtures/s6-minus-so3.json")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

pub fn fixture(name: &str) -> Result<SpaceTable, LedgerError> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| LedgerError::UnknownSpace(name.to_string()))?;
    let t: SpaceTable = serde_json::from_str(text).expect("checked-in fixtures parse");
    debug_assert_eq!(t.name, name);
    Ok(t)
}

/// Betti polynomial over `field` with one degree-0 class removed.
pub fn reduced_series(name: &str, field: Field) -> Result<PoincarePolynomial, LedgerError> {
    Ok(fixture(name)?.betti_series(field)?.reduced())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{so3, sphere, sw_dual, z_and_2};

    fn p(c: &[i64]) -> PoincarePolynomial {
        PoincarePolynomial::new(c.to_vec())
    }

    #[test]
    fn every_fixture_loads() {
        for name in fixture_names() {
            let t = fixture(name).unwrap();
            assert_eq!(t.name, name);
            assert!(t.table.is_some() != t.series.is_some());
        }
        assert_eq!(fixture("bogus"), Err(LedgerError::UnknownSpace("bogus".into())));
    }

    #[test]
    fn stored_tables() {
        let z2 = fixture("hom-z2-su2").unwrap().table.unwrap();
        let expected = GradedAbelianGroup::from_list(
            0,
            &[z_and_2(1, 0), z_and_2(0, 0), z_and_2(1, 0), z_and_2(2, 0), z_and_2(0, 1)],
        );
        assert_eq!(z2, expected);
        assert_eq!(fixture("so3").unwrap().table.unwrap(), so3());
        assert_eq!(fixture("su2").unwrap().table.unwrap(), sphere(3));
        assert_eq!(fixture("s6-minus-so3").unwrap().table.unwrap(), sw_dual(&so3(), 6));
    }

    #[test]
    fn reduced_series_values() {
        let f2 = Field::Prime(2);
        assert_eq!(reduced_series("hom-z2-su2", f2).unwrap(), p(&[0, 0, 1, 3, 1]));
        assert_eq!(reduced_series("s6-minus-so3", f2).unwrap(), p(&[0, 0, 1, 1, 1]));
        for f in [Field::Rational, f2, Field::Prime(3)] {
            assert_eq!(reduced_series("su2", f).unwrap(), p(&[0, 0, 0, 1]));
        }
        assert_eq!(reduced_series("hom-z2-su2", Field::Rational).unwrap(), p(&[0, 0, 1, 2]));
        assert!(matches!(reduced_series("nope", f2), Err(LedgerError::UnknownSpace(_))));
    }

    #[test]
    fn euler_characteristics_vanish() {
        let s = fixture("hom-zxf2-su2-series").unwrap().series.unwrap();
        assert_eq!(s.eval(-1), 0);
        for name in ["hom-z1-su2", "hom-z2-su2", "hom-z3-su2", "su2", "so3"] {
            assert_eq!(fixture(name).unwrap().table.unwrap().euler_characteristic(), 0, "{name}");
        }
    }
}
