use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Construction, LinearCode};
use crate::dnamap::GauTable;
use crate::error::Result;
use crate::packed::{self, Packed};

/// Closure of a code under the four DNA constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintFlags {
    pub reversible_ring: bool,
    pub reversible_dna: bool,
    pub complement: bool,
    pub reverse_complement: bool,
}

/// Generator-level membership tests that stand in for set closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCriteria {
    /// `x^(s·l) · φ⁻¹(reverse(φ(g)))` lies in the code for every row index `s`.
    pub shifted_reverse_pullbacks: bool,
    /// `λ·(1 + x + … + x^(n−1))` lies in the code.
    pub lambda_constant: bool,
}

fn closed_under(code: &LinearCode, f: impl Fn(Packed) -> Packed + Sync) -> bool {
    code.packed_words().par_iter().all(|&w| code.contains_packed(f(w)))
}

/// Ground-truth closure flags computed over every codeword.
pub fn constraint_checks(code: &LinearCode, table: &GauTable) -> Result<ConstraintFlags> {
    let n = code.len();
    let enc = table.encoder();
    let dec = table.decoder()?;
    let lambda = packed::constant(table.lambda(), n);
    Ok(ConstraintFlags {
        reversible_ring: closed_under(code, |w| packed::reverse(w, n)),
        reversible_dna: closed_under(code, |w| dec.apply(packed::dna_reverse(enc.apply(w, n), 2 * n), n)),
        complement: code.contains_packed(lambda) && closed_under(code, |w| packed::add(w, lambda)),
        reverse_complement: closed_under(code, |w| {
            let dna = enc.apply(w, n);
            dec.apply(packed::dna_complement(packed::dna_reverse(dna, 2 * n), 2 * n), n)
        }),
    })
}

/// Evaluates the generator-level criteria for a cyclic or quasi-cyclic construction.
///
/// Returns `None` for explicit generator matrices, which have no shift structure.
pub fn generator_criteria(code: &LinearCode, construction: &Construction, table: &GauTable) -> Result<Option<GeneratorCriteria>> {
    let n = code.len();
    let lambda_constant = code.contains_packed(packed::constant(table.lambda(), n));
    let Some(step) = construction.step() else {
        return Ok(None);
    };
    let rows = construction.rows(code.theta())?;
    let enc = table.encoder();
    let dec = table.decoder()?;
    let g = rows.first().map_or(0, |row| packed::pack(row));
    let pullback = dec.apply(packed::dna_reverse(enc.apply(g, n), 2 * n), n);
    let shifted_reverse_pullbacks =
        (0..n / step).all(|s| code.contains_packed(packed::rotate(pullback, n, s * step)));
    Ok(Some(GeneratorCriteria { shifted_reverse_pullbacks, lambda_constant }))
}
