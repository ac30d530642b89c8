//! Rebuilds every reference code and compares it with its published parameters.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fixtures::{fixtures, Expected, Fixture};
use super::tables::default_fit;
use crate::code::{build, min_dna_distance, CodeReport, LinearCode, DEFAULT_MAX_SIZE};
use crate::dnamap::{fit_table, Conventions, DnaString, Evidence, GauTable};
use crate::error::Result;

/// How the encoded code compares with a published codeword list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListComparison {
    pub listed: usize,
    pub encoded: usize,
    pub common: usize,
    pub equal: bool,
    /// Index into the default family of the table used for the comparison.
    pub table_index: usize,
    /// Up to eight listed strings the code does not produce.
    pub missing_sample: Vec<DnaString>,
}

/// Why a mismatch cannot be fixed by choosing another Gau table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub field: String,
    pub reason: String,
}

/// Result of rebuilding one fixture.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowResult {
    pub id: String,
    pub expected: Expected,
    pub report: CodeReport,
    pub length_match: bool,
    pub size_match: bool,
    pub distance_match: bool,
    /// Index into the default family of the first table reproducing `d_H`, if any.
    pub distance_witness: Option<usize>,
    pub list: Option<ListComparison>,
    pub errata: Vec<Erratum>,
}

impl RowResult {
    pub fn matches(&self) -> bool {
        self.length_match && self.size_match && self.distance_match && self.list.as_ref().is_none_or(|l| l.equal)
    }

    /// Mismatch that some constraint-consistent table could have avoided.
    pub fn unexplained_mismatch(&self) -> bool {
        !self.matches() && self.errata.is_empty()
    }
}

fn compare_list(code: &LinearCode, family: &[GauTable], listed: &[DnaString]) -> ListComparison {
    let listed_set: BTreeSet<&DnaString> = listed.iter().collect();
    let compare = |i: usize| {
        let table = &family[i];
        let encoded: BTreeSet<DnaString> = code.codewords().map(|w| table.encode(&w)).collect();
        let common = encoded.iter().filter(|d| listed_set.contains(d)).count();
        let missing_sample = listed.iter().filter(|d| !encoded.contains(*d)).take(8).cloned().collect();
        ListComparison {
            listed: listed_set.len(),
            encoded: encoded.len(),
            common,
            equal: common == encoded.len() && common == listed_set.len(),
            table_index: i,
            missing_sample,
        }
    };
    (0..family.len()).map(compare).find(|c| c.equal).unwrap_or_else(|| compare(0))
}

/// Every constraint-consistent table for the fixture's ring, ignoring conventions.
fn all_tables(f: &Fixture) -> Result<Vec<GauTable>> {
    fit_table(f.theta, &[], &Conventions::none())
}

/// Rebuilds one fixture under the default family for its ring.
pub fn reproduce_fixture(f: &Fixture) -> Result<RowResult> {
    let fit = default_fit(f.theta)?;
    let family = &fit.family;
    let code = build(f.theta, &f.construction, DEFAULT_MAX_SIZE)?;
    let report = CodeReport::new(&code, fit.default_table())?;
    let expected = f.expected;
    let length_match = report.dna_length == expected.dna_length;
    let size_match = report.m == expected.m;
    let target = Some(expected.d_h);
    let distance_witness = if report.d_dna == target {
        Some(0)
    } else {
        family.iter().position(|t| min_dna_distance(&code, t) == target)
    };
    let distance_match = distance_witness.is_some();
    let list = f.dna.as_ref().map(|dna| compare_list(&code, family, dna));

    let mut errata = Vec::new();
    if !length_match {
        errata.push(Erratum {
            field: "2n".into(),
            reason: format!("the construction has DNA length {}; no table changes length", report.dna_length),
        });
    }
    if !size_match {
        errata.push(Erratum {
            field: "M".into(),
            reason: format!("the span has {} codewords; M does not depend on the table", report.m),
        });
    }
    if !distance_match {
        let any = all_tables(f)?
            .par_iter()
            .position_first(|t| min_dna_distance(&code, t) == target);
        if any.is_none() {
            errata.push(Erratum {
                field: "d_H".into(),
                reason: format!("no constraint-consistent table gives d_dna = {}", expected.d_h),
            });
        }
    }
    if let (Some(dna), Some(cmp)) = (&f.dna, &list) {
        if !cmp.equal {
            let refit = fit_table(
                f.theta,
                &[Evidence::exact(code.len(), code.packed_words().to_vec(), dna.clone())],
                &Conventions::none(),
            );
            if let Err(e) = refit {
                errata.push(Erratum { field: "codewords".into(), reason: e.to_string() });
            }
        }
    }
    Ok(RowResult {
        id: f.id.clone(),
        expected,
        report,
        length_match,
        size_match,
        distance_match,
        distance_witness,
        list,
        errata,
    })
}

/// Rebuilds every shipped fixture, in file order.
pub fn reproduce_tables() -> Result<Vec<RowResult>> {
    fixtures().iter().map(reproduce_fixture).collect()
}
