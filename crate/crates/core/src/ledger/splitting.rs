//! After one suspension Hom(Z^n, G) splits as a wedge of the quotients
//! Hom(Z^k, G)/S_k(G), each with multiplicity C(n, k). Over a field this
//! is an identity of reduced Poincaré series, checked here exactly.

use serde::{Deserialize, Serialize};

use super::{fixture, reduced_series, LedgerError};
use crate::algebra::{smash, sw_dual, Field, PoincarePolynomial, Variance};

const MAX_N: usize = 3;

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summand {
    pub k: usize,
    pub multiplicity: i64,
    /// Reduced series of Hom(Z^k, G)/S_k(G).
    pub series: PoincarePolynomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub name: String,
    pub expected: PoincarePolynomial,
    pub computed: PoincarePolynomial,
    pub equal: bool,
}

impl CrossCheck {
    fn new(name: &str, expected: PoincarePolynomial, computed: PoincarePolynomial) -> Self {
        Self {
            name: name.to_string(),
            equal: expected == computed,
            expected,
            computed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub n: usize,
    pub field: Field,
    pub lhs: PoincarePolynomial,
    pub rhs: PoincarePolynomial,
    pub summands: Vec<Summand>,
    pub cross_checks: Vec<CrossCheck>,
    pub equal: bool,
}

/// Checks `P̃(Hom(Z^n)) = Σ_k C(n,k)·Q_k` with `Q_k` obtained by binomial
/// inversion from the stored tables, and compares `Q_1`, `Q_2`, `Q_3`
/// with SU(2), S⁶ − SO(3) and SU(2) ∧ (S⁶ − SO(3)).
pub fn verify_splitting(n: usize, field: Field) -> Result<SplittingReport, LedgerError> {
    if n == 0 {
        return Err(LedgerError::BadArgument("n must be at least 1".into()));
    }
    if n > MAX_N {
        return Err(LedgerError::FixtureMissing(format!("hom-z{n}-su2")));
    }
    let hom: Vec<PoincarePolynomial> = (1..=n)
        .map(|j| reduced_series(&format!("hom-z{j}-su2"), field))
        .collect::<Result<_, _>>()?;

    let q: Vec<PoincarePolynomial> = (1..=n)
        .map(|k| {
            (1..=k).fold(PoincarePolynomial::zero(), |acc, j| {
                let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
                acc.add(&hom[j - 1].scale(sign * binomial(k, j)))
            })
        })
        .collect();
    let summands: Vec<Summand> = q
        .iter()
        .enumerate()
        .map(|(i, s)| Summand {
            k: i + 1,
            multiplicity: binomial(n, i + 1),
            series: s.clone(),
        })
        .collect();
    let rhs = summands
        .iter()
        .fold(PoincarePolynomial::zero(), |acc, s| acc.add(&s.series.scale(s.multiplicity)));
    let lhs = hom[n - 1].clone();

    let su2 = fixture("su2")?.table.expect("su2 is a table");
    let so3 = fixture("so3")?.table.expect("so3 is a table");
    let complement = sw_dual(&so3, 6);
    let homology_series = |g| -> Result<PoincarePolynomial, LedgerError> {
        Ok(PoincarePolynomial::from_graded(g, field, Variance::Homology)?.reduced())
    };

    let mut cross_checks = vec![CrossCheck::new("Q1 = SU(2)", reduced_series("su2", field)?, q[0].clone())];
    if n >= 2 {
        cross_checks.push(CrossCheck::new(
            "S6 - SO(3) table = Alexander dual of SO(3)",
            reduced_series("s6-minus-so3", field)?,
            homology_series(&complement)?,
        ));
        cross_checks.push(CrossCheck::new("Q2 = S6 - SO(3)", homology_series(&complement)?, q[1].clone()));
    }
    if n >= 3 {
        cross_checks.push(CrossCheck::new(
            "Q3 = SU(2) smash (S6 - SO(3))",
            homology_series(&smash(&su2, &complement))?,
            q[2].clone(),
        ));
    }
    let equal = lhs == rhs && q.iter().all(PoincarePolynomial::is_nonnegative) && cross_checks.iter().all(|c| c.equal);
    Ok(SplittingReport {
        n,
        field,
        lhs,
        rhs,
        summands,
        cross_checks,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> PoincarePolynomial {
        PoincarePolynomial::new(c.to_vec())
    }

    #[test]
    fn pairs_over_f2() {
        let r = verify_splitting(2, Field::Prime(2)).unwrap();
        assert_eq!(r.lhs, p(&[0, 0, 1, 3, 1]));
        assert_eq!(r.summands[0].series, p(&[0, 0, 0, 1]));
        assert_eq!(r.summands[1].series, p(&[0, 0, 1, 1, 1]));
        assert!(r.equal);
    }

    #[test]
    fn triples_over_f2() {
        let r = verify_splitting(3, Field::Prime(2)).unwrap();
        assert_eq!(r.lhs, p(&[0, 0, 3, 6, 3, 1, 1, 1]));
        assert_eq!(r.summands[2].series, p(&[0, 0, 0, 0, 0, 1, 1, 1]));
        assert_eq!(r.summands.iter().map(|s| s.multiplicity).collect::<Vec<_>>(), vec![3, 3, 1]);
        assert!(r.equal, "{r:?}");
    }

    #[test]
    fn single_generator_and_limits() {
        let r = verify_splitting(1, Field::Rational).unwrap();
        assert_eq!(r.summands[0].series, p(&[0, 0, 0, 1]));
        assert!(r.equal);
        assert!(matches!(verify_splitting(4, Field::Rational), Err(LedgerError::FixtureMissing(_))));
        assert!(verify_splitting(0, Field::Rational).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!((0..=3).map(|k| binomial(3, k)).collect::<Vec<_>>(), vec![1, 3, 3, 1]);
    }
}
