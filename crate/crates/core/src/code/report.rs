use serde::{Deserialize, Serialize};

use super::{constraint_checks, min_distances, self_checks, sphere_packing_bound, ConstraintFlags, LinearCode, SelfChecks};
use crate::dnamap::GauTable;
use crate::error::Result;
use crate::ring::Theta;

/// Summary statistics of a materialized code.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeReport {
    pub theta: Theta,
    pub n: usize,
    pub dna_length: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub d_ring: Option<u32>,
    pub d_dna: Option<u32>,
    pub d_gau: Option<u32>,
    pub constraints: ConstraintFlags,
    pub duality: SelfChecks,
    /// Sphere-packing bound for `(2n, d_dna)`, as a decimal string.
    pub sphere_bound: Option<String>,
    /// `M` divided by the sphere-packing bound.
    pub bound_ratio: Option<f64>,
    pub warnings: Vec<String>,
}

impl CodeReport {
    pub fn new(code: &LinearCode, table: &GauTable) -> Result<Self> {
        let d = min_distances(code, table);
        let dna_length = 2 * code.len();
        let bound = d.d_dna.map(|dd| sphere_packing_bound(dna_length as u32, dd));
        let bound_ratio = bound.as_ref().map(|b| code.size() as f64 / b.to_string().parse::<f64>().unwrap_or(f64::INFINITY));
        Ok(CodeReport {
            theta: code.theta(),
            n: code.len(),
            dna_length,
            m: code.size(),
            d_ring: d.d_ring,
            d_dna: d.d_dna,
            d_gau: d.d_gau,
            constraints: constraint_checks(code, table)?,
            duality: self_checks(code),
            sphere_bound: bound.map(|b| b.to_string()),
            bound_ratio,
            warnings: code.warnings().to_vec(),
        })
    }

    /// `(2n, M, d_dna)` as printed in code tables.
    pub fn parameters(&self) -> (usize, usize, Option<u32>) {
        (self.dna_length, self.m, self.d_dna)
    }
}
