use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rtheta::code::{build, constraint_checks, min_dna_distance, sphere_packing_bound, ConstraintFlags};
use rtheta::{Construction, Error, GauTable, RingElement, Theta};

use crate::args::{Kind, Requirement};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub row: Vec<RingElement>,
    pub dna_length: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub d_dna: u32,
    pub constraints: ConstraintFlags,
    pub sphere_bound: String,
    pub bound_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub theta: Theta,
    pub n: usize,
    pub index: usize,
    pub exhaustive: bool,
    pub seed: u64,
    /// First rows examined.
    pub candidates: usize,
    /// Share of `R_θⁿ` examined (1 when exhaustive).
    pub coverage: f64,
    /// Candidates whose code exceeded `--max-size`.
    pub skipped_over_cap: usize,
    /// Candidates meeting every requirement with at least two codewords.
    pub admissible: usize,
    /// Pareto-best `(M, d_dna)`, one smallest row per pair, by decreasing `M`.
    pub findings: Vec<Finding>,
}

pub struct SearchParams<'a> {
    pub theta: Theta,
    pub kind: Kind,
    pub index: usize,
    pub n: usize,
    pub require: &'a [Requirement],
    pub samples: usize,
    pub seed: u64,
    pub max_size: usize,
    pub table: &'a GauTable,
}

fn candidates(n: usize, samples: usize, seed: u64) -> (Vec<Vec<RingElement>>, bool) {
    let total = 16u128.checked_pow(n as u32);
    if total.is_some_and(|t| t <= samples as u128) {
        let total = total.unwrap_or(0) as usize;
        let rows = (0..total)
            .map(|mut idx| {
                let mut row = vec![RingElement::ZERO; n];
                for slot in row.iter_mut().rev() {
                    *slot = RingElement::from_index(idx & 0xF);
                    idx >>= 4;
                }
                row
            })
            .collect();
        return (rows, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..samples)
        .map(|_| (0..n).map(|_| RingElement::from_index(rng.random_range(0..16))).collect())
        .collect();
    (rows, false)
}

fn satisfies(flags: &ConstraintFlags, require: &[Requirement]) -> bool {
    require.iter().all(|r| match r {
        Requirement::Reversible => flags.reversible_dna,
        Requirement::Complement => flags.complement,
        Requirement::Rc => flags.reverse_complement,
    })
}

enum Evaluated {
    OverCap,
    Rejected,
    Admissible(Finding),
}

pub fn search(p: &SearchParams) -> Result<SearchReport, Error> {
    let index = match p.kind {
        Kind::Cyclic => 1,
        Kind::Qc => p.index,
        _ => return Err(Error::Shape("search supports --kind cyclic or qc".into())),
    };
    if index == 0 || !p.n.is_multiple_of(index) {
        return Err(Error::BadIndex { step: index, n: p.n });
    }
    let (rows, exhaustive) = candidates(p.n, p.samples, p.seed);
    let evaluated: Vec<Evaluated> = rows
        .par_iter()
        .map(|row| {
            let construction = if index == 1 {
                Construction::Cyclic { row: row.clone() }
            } else {
                Construction::QuasiCyclic { row: row.clone(), index }
            };
            let code = match build(p.theta, &construction, p.max_size) {
                Ok(c) => c,
                Err(Error::CodeTooLarge { .. }) => return Ok(Evaluated::OverCap),
                Err(e) => return Err(e),
            };
            let flags = constraint_checks(&code, p.table)?;
            let Some(d) = min_dna_distance(&code, p.table).filter(|_| satisfies(&flags, p.require)) else {
                return Ok(Evaluated::Rejected);
            };
            let bound = sphere_packing_bound(2 * p.n as u32, d);
            let bound_f = bound.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
            Ok(Evaluated::Admissible(Finding {
                row: row.clone(),
                dna_length: 2 * p.n,
                m: code.size(),
                d_dna: d,
                constraints: flags,
                sphere_bound: bound.to_string(),
                bound_ratio: code.size() as f64 / bound_f,
            }))
        })
        .collect::<Result<_, Error>>()?;

    let skipped_over_cap = evaluated.iter().filter(|e| matches!(e, Evaluated::OverCap)).count();
    let mut admissible: Vec<Finding> = evaluated
        .into_iter()
        .filter_map(|e| match e {
            Evaluated::Admissible(f) => Some(f),
            _ => None,
        })
        .collect();
    let count = admissible.len();
    admissible.sort_by(|a, b| b.m.cmp(&a.m).then(b.d_dna.cmp(&a.d_dna)).then(a.row.cmp(&b.row)));
    let mut findings: Vec<Finding> = Vec::new();
    for f in admissible {
        let dominated = findings.iter().any(|g| g.m >= f.m && g.d_dna >= f.d_dna);
        if !dominated {
            findings.push(f);
        }
    }
    let coverage = rows.len() as f64 / 16f64.powi(p.n as i32);
    Ok(SearchReport {
        theta: p.theta,
        n: p.n,
        index,
        exhaustive,
        seed: p.seed,
        candidates: rows.len(),
        coverage: if exhaustive { 1.0 } else { coverage },
        skipped_over_cap,
        admissible: count,
        findings,
    })
}
