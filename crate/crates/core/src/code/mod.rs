//! Fully enumerated linear codes over `R_θⁿ`.
//!
//! A [`LinearCode`] keeps every codeword, nibble-packed and sorted, so all
//! closure properties and distances are computed on the actual codeword set.

mod bound;
mod constraints;
mod distance;
mod dual;
mod report;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use bound::{ball_size, sphere_packing_bound};
pub use constraints::{constraint_checks, generator_criteria, ConstraintFlags, GeneratorCriteria};
pub use distance::{
    min_distances, min_distances_with_workers, min_dna_distance, min_dna_distance_exhaustive, min_gau_distance, min_ring_distance,
    min_ring_distance_pairwise,
    Distances,
};
pub use dual::{brute_force_dual, self_checks, z4_dual, SelfChecks, DEFAULT_DUAL_CAP};
pub use report::CodeReport;

use crate::error::{Error, Result};
use crate::packed::{self, Packed, Scaler};
use crate::poly::{shifts, DivOptions, Poly};
use crate::ring::{RingElement, Theta};

/// Default cap on the number of codewords materialized.
pub const DEFAULT_MAX_SIZE: usize = 1 << 20;

/// Largest length for which membership uses a dense bitmap of all `16ⁿ` words.
const DENSE_MAX_LEN: usize = 6;

/// Membership structure over packed words.
#[derive(Clone, Debug)]
pub(crate) enum WordSet {
    Dense(Vec<u64>),
    Sparse(HashSet<Packed>),
}

impl WordSet {
    pub(crate) fn new(n: usize, expected: usize) -> Self {
        if n <= DENSE_MAX_LEN {
            WordSet::Dense(vec![0; (1usize << (4 * n)).div_ceil(64)])
        } else {
            WordSet::Sparse(HashSet::with_capacity(expected))
        }
    }

    #[inline]
    pub(crate) fn contains(&self, w: Packed) -> bool {
        match self {
            WordSet::Dense(bits) => bits[(w >> 6) as usize] & (1 << (w & 63)) != 0,
            WordSet::Sparse(set) => set.contains(&w),
        }
    }

    /// Returns `true` if `w` was not present.
    #[inline]
    pub(crate) fn insert(&mut self, w: Packed) -> bool {
        match self {
            WordSet::Dense(bits) => {
                let slot = &mut bits[(w >> 6) as usize];
                let bit = 1 << (w & 63);
                let fresh = *slot & bit == 0;
                *slot |= bit;
                fresh
            }
            WordSet::Sparse(set) => set.insert(w),
        }
    }
}

/// Incremental span closure: the smallest `R_θ`-submodule containing the
/// generators added so far.
pub(crate) struct SpanBuilder {
    omega: Scaler,
    set: WordSet,
    words: Vec<Packed>,
    cap: usize,
}

impl SpanBuilder {
    pub(crate) fn new(theta: Theta, n: usize, cap: usize) -> Self {
        let mut set = WordSet::new(n, 1024);
        set.insert(0);
        SpanBuilder {
            omega: Scaler::new(theta.ring(), RingElement::OMEGA),
            set,
            words: vec![0],
            cap,
        }
    }

    pub(crate) fn contains(&self, w: Packed) -> bool {
        self.set.contains(w)
    }

    /// Adds `R_θ·g`; returns whether the span grew.
    pub(crate) fn add_generator(&mut self, g: Packed) -> Result<bool> {
        let before = self.words.len();
        // R·g = Z4·g + Z4·ωg, so additive closure over {g, ωg} suffices.
        let wg = self.omega.apply(g);
        self.add_additive(g)?;
        self.add_additive(wg)?;
        Ok(self.words.len() > before)
    }

    fn add_additive(&mut self, h: Packed) -> Result<()> {
        let base = self.words.len();
        let mut multiple = h;
        while !self.set.contains(multiple) {
            if self.words.len() + base > self.cap {
                return Err(Error::CodeTooLarge { cap: self.cap });
            }
            for i in 0..base {
                let w = packed::add(self.words[i], multiple);
                if self.set.insert(w) {
                    self.words.push(w);
                }
            }
            multiple = packed::add(multiple, h);
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> (Vec<Packed>, WordSet) {
        let mut words = self.words;
        words.sort_unstable();
        (words, self.set)
    }
}

/// How a code is generated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    /// All cyclic shifts of one row.
    Cyclic { row: Vec<RingElement> },
    /// The `n/l` shifts of one row by multiples of the index `l`.
    QuasiCyclic { row: Vec<RingElement>, index: usize },
    /// Explicit generator rows.
    Matrix { rows: Vec<Vec<RingElement>> },
    /// The ideal `⟨a(x), ω·b(x)⟩` of `R_θ[x]/(xⁿ − 1)`.
    Ideal {
        a: Vec<RingElement>,
        b: Vec<RingElement>,
        n: usize,
    },
}

impl Construction {
    /// The generator matrix rows.
    pub fn rows(&self, theta: Theta) -> Result<Vec<Vec<RingElement>>> {
        match self {
            Construction::Cyclic { row } => shifts(row, 1),
            Construction::QuasiCyclic { row, index } => shifts(row, *index),
            Construction::Matrix { rows } => Ok(rows.clone()),
            Construction::Ideal { a, b, n } => {
                let a_word = Poly::modular(theta, a, *n).to_word(*n);
                let wb: Vec<_> = Poly::modular(theta, b, *n)
                    .scale(RingElement::OMEGA)
                    .to_word(*n);
                let mut rows = shifts(&a_word, 1)?;
                rows.extend(shifts(&wb, 1)?);
                Ok(rows)
            }
        }
    }

    /// Word length `n` of the generated code.
    pub fn len(&self) -> usize {
        match self {
            Construction::Cyclic { row } | Construction::QuasiCyclic { row, .. } => row.len(),
            Construction::Matrix { rows } => rows.first().map_or(0, Vec::len),
            Construction::Ideal { n, .. } => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Shift step between consecutive generator rows (1 for cyclic codes).
    pub fn step(&self) -> Option<usize> {
        match self {
            Construction::Cyclic { .. } | Construction::Ideal { .. } => Some(1),
            Construction::QuasiCyclic { index, .. } => Some(*index),
            Construction::Matrix { .. } => None,
        }
    }

    /// The first generator row.
    pub fn first_row(&self, theta: Theta) -> Result<Option<Vec<RingElement>>> {
        Ok(self.rows(theta)?.into_iter().next())
    }
}

/// A linear code with every codeword enumerated.
#[derive(Clone, Debug)]
pub struct LinearCode {
    theta: Theta,
    n: usize,
    generators: Vec<Vec<RingElement>>,
    words: Vec<Packed>,
    set: WordSet,
    warnings: Vec<String>,
}

impl LinearCode {
    pub fn theta(&self) -> Theta {
        self.theta
    }

    /// Length over the ring.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of codewords `M`.
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn generators(&self) -> &[Vec<RingElement>] {
        &self.generators
    }

    /// Packed codewords in canonical (lexicographic) order.
    pub fn packed_words(&self) -> &[Packed] {
        &self.words
    }

    pub fn codewords(&self) -> impl Iterator<Item = Vec<RingElement>> + '_ {
        self.words.iter().map(|&w| packed::unpack(w, self.n))
    }

    pub fn contains_packed(&self, w: Packed) -> bool {
        self.set.contains(w)
    }

    pub fn contains(&self, word: &[RingElement]) -> bool {
        word.len() == self.n && self.contains_packed(packed::pack(word))
    }

    /// Non-fatal notes raised while building, e.g. a failed divisibility chain.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub(crate) fn from_parts(theta: Theta, n: usize, generators: Vec<Vec<RingElement>>, words: Vec<Packed>, set: WordSet) -> Self {
        LinearCode { theta, n, generators, words, set, warnings: Vec::new() }
    }
}

/// Smallest `R_θ`-submodule of `R_θⁿ` containing `generators`.
pub fn span_closure(theta: Theta, n: usize, generators: &[Vec<RingElement>], max_size: usize) -> Result<LinearCode> {
    packed::check_len(n)?;
    if let Some(g) = generators.iter().find(|g| g.len() != n) {
        return Err(Error::Shape(format!("generator of length {} in a length-{n} code", g.len())));
    }
    let mut span = SpanBuilder::new(theta, n, max_size);
    for g in generators {
        span.add_generator(packed::pack(g))?;
    }
    let (words, set) = span.finish();
    Ok(LinearCode::from_parts(theta, n, generators.to_vec(), words, set))
}

/// Builds the code described by `construction`.
pub fn build(theta: Theta, construction: &Construction, max_size: usize) -> Result<LinearCode> {
    let n = construction.len();
    let rows = construction.rows(theta)?;
    let mut code = span_closure(theta, n, &rows, max_size)?;
    if let Construction::Ideal { a, b, n } = construction {
        code.warnings = ideal_chain_warnings(theta, a, b, *n);
    }
    Ok(code)
}

/// Checks the hypothesis `b | a | xⁿ − 1` of the ideal construction.
pub fn ideal_chain_warnings(theta: Theta, a: &[RingElement], b: &[RingElement], n: usize) -> Vec<String> {
    let a = Poly::new(theta, a.to_vec());
    let b = Poly::new(theta, b.to_vec());
    let modulus = Poly::x_n_minus_one(theta, n);
    let opts = DivOptions::default();
    let mut out = Vec::new();
    for (d, m, label) in [(&a, &modulus, "a(x) ∤ xⁿ−1"), (&b, &a, "b(x) ∤ a(x)")] {
        match d.divides(m, &opts) {
            Ok(Some(_)) => {}
            Ok(None) => out.push(format!("{label}: {d} does not divide {m}")),
            Err(e) => out.push(format!("{label}: {e}")),
        }
    }
    out
}
