//! Both directions of the quasi-cyclic reversibility conjecture.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::fixtures::fixtures;
use super::harness::{replay, Case, HarnessReport, HarnessScope, Outcome, Statement};
use crate::code::Construction;
use crate::error::{Error, Result};
use crate::ring::{RingElement, Theta};

/// Ranges sampled by [`conjecture_harness`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureScope {
    pub indices: Vec<usize>,
    pub co_indices: Vec<usize>,
    pub thetas: Vec<Theta>,
    /// Random first rows per `(θ, l, m)`; half of them are forced palindromic.
    pub samples: usize,
    pub seed: u64,
}

impl Default for ConjectureScope {
    fn default() -> Self {
        ConjectureScope {
            indices: vec![2, 3],
            co_indices: vec![2, 3, 4],
            thetas: vec![Theta::new(2, 0), Theta::new(2, 2)],
            samples: 40,
            seed: 0,
        }
    }
}

/// Both sides of the equivalence for one named code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCase {
    pub id: String,
    pub theta: Theta,
    pub row: Vec<RingElement>,
    pub index: usize,
    pub co_index: usize,
    pub palindromic_row: bool,
    pub reversible_and_rc: bool,
    pub if_direction: bool,
    pub only_if_direction: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub if_direction: HarnessReport,
    pub only_if_direction: HarnessReport,
    /// Fixtures with index `l > 1`, evaluated individually.
    pub fixtures: Vec<ConjectureCase>,
}

fn fixture_case(id: &str, theta: Theta, row: &[RingElement], index: usize, scope: &HarnessScope) -> Result<ConjectureCase> {
    let case = Case::Generated {
        theta,
        construction: Construction::QuasiCyclic { row: row.to_vec(), index },
    };
    let if_ok = replay(Statement::ConjectureIf, &case, scope)?;
    let only_if_ok = replay(Statement::ConjectureOnlyIf, &case, scope)?;
    let co_index = row.len() / index;
    let rows = crate::poly::shifts(row, index)?;
    let palindromic_row = rows.iter().any(|r| r.iter().eq(r.iter().rev()));
    let lhs_vacuous = only_if_ok == Outcome::Vacuous;
    Ok(ConjectureCase {
        id: id.to_string(),
        theta,
        row: row.to_vec(),
        index,
        co_index,
        palindromic_row,
        reversible_and_rc: !lhs_vacuous,
        if_direction: !matches!(if_ok, Outcome::Fails(_)),
        only_if_direction: !matches!(only_if_ok, Outcome::Fails(_)),
    })
}

/// Samples quasi-cyclic codes over the scope and judges both directions.
pub fn conjecture_harness(scope: &ConjectureScope) -> Result<ConjectureReport> {
    if scope.indices.iter().any(|&l| l < 2) {
        return Err(Error::ScopeTooLarge("the conjecture requires index l > 1".into()));
    }
    let base = HarnessScope { seed: scope.seed, ..HarnessScope::default() };
    if scope.indices.iter().flat_map(|l| scope.co_indices.iter().map(move |m| l * m)).any(|n| n > crate::packed::MAX_LEN) {
        return Err(Error::ScopeTooLarge(format!("l·m exceeds {}", crate::packed::MAX_LEN)));
    }
    let mut rng = super::harness::rng_for(scope.seed, "conjecture");
    let mut cases = Vec::new();
    for &theta in &scope.thetas {
        for &l in &scope.indices {
            for &m in &scope.co_indices {
                let n = l * m;
                cases.push(Case::Generated {
                    theta,
                    construction: Construction::QuasiCyclic { row: vec![RingElement::ZERO; n], index: l },
                });
                for s in 0..scope.samples {
                    let mut row: Vec<RingElement> =
                        (0..n).map(|_| RingElement::from_index(rng.random_range(0..16))).collect();
                    if s % 2 == 0 {
                        for i in 0..n / 2 {
                            row[n - 1 - i] = row[i];
                        }
                    }
                    cases.push(Case::Generated { theta, construction: Construction::QuasiCyclic { row, index: l } });
                }
            }
        }
    }
    let mut reports =
        super::harness::run("conjecture", &[Statement::ConjectureIf, Statement::ConjectureOnlyIf], cases, &base)?;
    let only_if_direction = reports.pop().expect("two statements");
    let if_direction = reports.pop().expect("two statements");
    let mut fixture_cases = Vec::new();
    for f in fixtures() {
        if let Construction::QuasiCyclic { row, index } = &f.construction {
            if *index > 1 && f.id.starts_with("example") {
                fixture_cases.push(fixture_case(&f.id, f.theta, row, *index, &base)?);
            }
        }
    }
    Ok(ConjectureReport { if_direction, only_if_direction, fixtures: fixture_cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_evaluated_on_both_directions() {
        let scope = ConjectureScope { samples: 4, ..ConjectureScope::default() };
        let report = conjecture_harness(&scope).unwrap();
        let small = report.fixtures.iter().find(|c| c.id == "example-r2").unwrap();
        assert_eq!((small.index, small.co_index), (2, 2));
        let large = report.fixtures.iter().find(|c| c.id == "example-r22w").unwrap();
        assert_eq!((large.index, large.co_index), (2, 4));
        assert!(large.palindromic_row);
        assert!(large.reversible_and_rc && large.if_direction && large.only_if_direction);
        let total = report.if_direction.cases + report.if_direction.vacuous;
        assert_eq!(total, 2 * 2 * 3 * (scope.samples + 1));
    }

    #[test]
    fn zero_generator_is_a_vacuous_data_point() {
        let case = Case::Generated {
            theta: Theta::new(2, 0),
            construction: Construction::QuasiCyclic { row: vec![RingElement::ZERO; 6], index: 2 },
        };
        let scope = HarnessScope::default();
        assert_eq!(replay(Statement::ConjectureOnlyIf, &case, &scope).unwrap(), Outcome::Vacuous);
        assert!(matches!(replay(Statement::ConjectureIf, &case, &scope).unwrap(), Outcome::Fails(_)));
    }

    #[test]
    fn rejects_index_one() {
        let scope = ConjectureScope { indices: vec![1], ..ConjectureScope::default() };
        assert!(conjecture_harness(&scope).is_err());
    }
}
