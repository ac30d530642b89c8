//! Default Gau tables recovered from the reference codeword lists.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::fixtures::{fixtures, Fixture};
use crate::code::{build, DEFAULT_MAX_SIZE};
use crate::dnamap::{fit_table, Conventions, Evidence, GauTable, LAMBDAS};
use crate::error::{Error, Result};
use crate::ring::{Theta, ORDER};

/// Which fitting attempt produced a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitStage {
    /// Exact set equality under the ring's conventions.
    Exact,
    /// Exact set equality with the complement constant free within `{2, 2ω, 2+2ω}`.
    ExactAnyLambda,
    /// Encoded code contained in the list, under the ring's conventions.
    Subset,
    /// Containment with the complement constant free.
    SubsetAnyLambda,
    /// No list evidence for this ring; conventions only.
    ConventionsOnly,
}

/// Outcome of fitting the default family for one ring.
#[derive(Clone, Debug)]
pub struct TableFit {
    pub theta: Theta,
    pub stage: FitStage,
    pub family: Vec<GauTable>,
    /// Failed attempts, in order, with the reason each was rejected.
    pub rejected: Vec<(FitStage, String)>,
}

impl TableFit {
    pub fn default_table(&self) -> &GauTable {
        &self.family[0]
    }
}

fn relaxed(theta: Theta) -> Conventions {
    let mut c = Conventions::for_theta(theta);
    c.lambdas = LAMBDAS.to_vec();
    c
}

/// Fixtures with a complete DNA list for `theta`.
pub fn list_fixtures(theta: Theta) -> Vec<&'static Fixture> {
    fixtures().iter().filter(|f| f.theta == theta && f.dna.is_some()).collect()
}

/// Fits the default family for `theta`, trying progressively weaker readings of the evidence.
pub fn fit_default_family(theta: Theta) -> Result<TableFit> {
    let lists = list_fixtures(theta);
    if lists.is_empty() {
        let family = fit_table(theta, &[], &Conventions::for_theta(theta))?;
        return Ok(TableFit { theta, stage: FitStage::ConventionsOnly, family, rejected: Vec::new() });
    }
    let mut exact = Vec::new();
    let mut subset = Vec::new();
    for f in &lists {
        let code = build(theta, &f.construction, DEFAULT_MAX_SIZE)?;
        let dna = f.dna.clone().unwrap_or_default();
        exact.push(Evidence::exact(code.len(), code.packed_words().to_vec(), dna.clone()));
        subset.push(Evidence::subset(code.len(), code.packed_words().to_vec(), dna));
    }
    let attempts = [
        (FitStage::Exact, &exact, Conventions::for_theta(theta)),
        (FitStage::ExactAnyLambda, &exact, relaxed(theta)),
        (FitStage::Subset, &subset, Conventions::for_theta(theta)),
        (FitStage::SubsetAnyLambda, &subset, relaxed(theta)),
    ];
    let mut rejected = Vec::new();
    for (stage, evidence, conventions) in attempts {
        match fit_table(theta, evidence, &conventions) {
            Ok(family) => return Ok(TableFit { theta, stage, family, rejected }),
            Err(Error::UnsatisfiableEvidence(reason)) => rejected.push((stage, reason)),
            Err(e) => return Err(e),
        }
    }
    let family = fit_table(theta, &[], &Conventions::for_theta(theta))?;
    Ok(TableFit { theta, stage: FitStage::ConventionsOnly, family, rejected })
}

/// Cached default family for `theta`.
pub fn default_fit(theta: Theta) -> Result<&'static TableFit> {
    static CELLS: OnceLock<Vec<OnceLock<std::result::Result<TableFit, Error>>>> = OnceLock::new();
    let cells = CELLS.get_or_init(|| (0..ORDER).map(|_| OnceLock::new()).collect());
    cells[theta.element().index()]
        .get_or_init(|| fit_default_family(theta))
        .as_ref()
        .map_err(Clone::clone)
}

/// The lexicographically first table of the default family.
pub fn default_table(theta: Theta) -> Result<&'static GauTable> {
    default_fit(theta).map(TableFit::default_table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnamap::Dinucleotide;
    use crate::ring::RingElement;

    #[test]
    fn every_default_validates() {
        for theta in Theta::all() {
            let t = default_table(theta).unwrap();
            assert!(t.validate().is_empty(), "{theta}");
            assert_eq!(t.theta(), theta);
        }
    }

    #[test]
    fn r2_family_keeps_listed_order() {
        let fit = default_fit(Theta::new(2, 0)).unwrap();
        assert_eq!(fit.stage, FitStage::Subset);
        assert_eq!(fit.rejected.len(), 2);
        for t in &fit.family {
            assert_eq!(t.phi(RingElement::TWO), Dinucleotide::TT);
            assert_eq!(t.phi(RingElement::TWO_OMEGA), Dinucleotide::CC);
            assert_eq!(t.lambda(), RingElement::TWO);
        }
    }

    #[test]
    fn r22w_family_reproduces_list_with_lambda_two() {
        let fit = default_fit(Theta::new(2, 2)).unwrap();
        assert_eq!(fit.stage, FitStage::ExactAnyLambda);
        assert!(fit.family.iter().all(|t| t.lambda() == RingElement::TWO));
    }

    #[test]
    fn other_rings_use_first_admissible_lambda() {
        let t = default_table(Theta::new(1, 0)).unwrap();
        assert_eq!(t.lambda(), RingElement::TWO_OMEGA);
        assert_eq!(default_fit(Theta::new(1, 0)).unwrap().stage, FitStage::ConventionsOnly);
    }
}
