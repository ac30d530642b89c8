//! DNA alphabet, Gau tables and the Gau distance.
//!
//! A [`GauTable`] is a bijection from the sixteen ring elements onto the
//! sixteen dinucleotides together with the complement constant `λ`: shifting
//! an element by `λ` complements its dinucleotide. [`fit_table`] enumerates
//! every table that satisfies the structural constraints and reproduces a set
//! of known (ring code, DNA code) pairs.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::packed::{self, NibbleMap, Packed};
use crate::ring::{RingElement, Theta, ORDER};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[repr(u8)]
pub enum Nucleotide {
    A = 0,
    C = 1,
    G = 2,
    T = 3,
}

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [Nucleotide::A, Nucleotide::C, Nucleotide::G, Nucleotide::T];

    pub fn complement(self) -> Nucleotide {
        Nucleotide::from_code(3 - self as u8)
    }

    pub fn from_code(c: u8) -> Nucleotide {
        Nucleotide::ALL[(c & 3) as usize]
    }

    pub fn from_char(c: char) -> Option<Nucleotide> {
        match c.to_ascii_uppercase() {
            'A' => Some(Nucleotide::A),
            'C' => Some(Nucleotide::C),
            'G' => Some(Nucleotide::G),
            'T' => Some(Nucleotide::T),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        b"ACGT"[self as usize] as char
    }
}

/// A DNA string over `{A, C, G, T}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DnaString(pub Vec<Nucleotide>);

impl DnaString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reverse(&self) -> DnaString {
        DnaString(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> DnaString {
        DnaString(self.0.iter().map(|n| n.complement()).collect())
    }

    pub fn reverse_complement(&self) -> DnaString {
        DnaString(self.0.iter().rev().map(|n| n.complement()).collect())
    }

    pub fn hamming(&self, other: &DnaString) -> Result<u32> {
        if self.len() != other.len() {
            return Err(Error::Shape(format!(
                "DNA strings of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count() as u32)
    }

    /// 2-bit packing, first nucleotide most significant. At most 32 nucleotides.
    pub fn pack(&self) -> Packed {
        self.0.iter().fold(0, |acc, &n| (acc << 2) | n as u64)
    }

    pub fn unpack(x: Packed, len: usize) -> DnaString {
        DnaString(
            (0..len)
                .map(|j| Nucleotide::from_code((x >> (2 * (len - 1 - j))) as u8))
                .collect(),
        )
    }
}

impl fmt::Display for DnaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|n| write!(f, "{}", n.as_char()))
    }
}

impl fmt::Debug for DnaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for DnaString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| Nucleotide::from_char(c).ok_or_else(|| Error::parse(s, format!("`{c}` is not a nucleotide"))))
            .collect::<Result<Vec<_>>>()
            .map(DnaString)
    }
}

impl Serialize for DnaString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DnaString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Two nucleotides packed as `4·first + second`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dinucleotide(u8);

impl Dinucleotide {
    pub const AA: Dinucleotide = Dinucleotide(0);
    pub const TT: Dinucleotide = Dinucleotide(15);
    pub const CC: Dinucleotide = Dinucleotide(5);
    pub const GG: Dinucleotide = Dinucleotide(10);
    pub const AT: Dinucleotide = Dinucleotide(3);
    pub const TA: Dinucleotide = Dinucleotide(12);
    pub const GC: Dinucleotide = Dinucleotide(9);
    pub const CG: Dinucleotide = Dinucleotide(6);

    pub fn new(first: Nucleotide, second: Nucleotide) -> Self {
        Dinucleotide(((first as u8) << 2) | second as u8)
    }

    pub fn from_code(c: u8) -> Self {
        Dinucleotide(c & 0xF)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Dinucleotide> {
        (0..16).map(Dinucleotide)
    }

    pub fn first(self) -> Nucleotide {
        Nucleotide::from_code(self.0 >> 2)
    }

    pub fn second(self) -> Nucleotide {
        Nucleotide::from_code(self.0)
    }

    pub fn complement(self) -> Dinucleotide {
        Dinucleotide(!self.0 & 0xF)
    }

    pub fn reverse(self) -> Dinucleotide {
        Dinucleotide::new(self.second(), self.first())
    }

    pub fn hamming(self, other: Dinucleotide) -> u32 {
        packed::dna_distance(self.0 as u64, other.0 as u64)
    }
}

impl fmt::Display for Dinucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first().as_char(), self.second().as_char())
    }
}

impl fmt::Debug for Dinucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Dinucleotide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let d: DnaString = s.parse()?;
        match d.0.as_slice() {
            [a, b] => Ok(Dinucleotide::new(*a, *b)),
            _ => Err(Error::parse(s, "expected two nucleotides")),
        }
    }
}

/// Zero divisors whose images must be the self-reversible dinucleotides.
pub const SELF_REVERSIBLE_ELEMENTS: [RingElement; 4] = [
    RingElement::ZERO,
    RingElement::TWO,
    RingElement::TWO_OMEGA,
    RingElement::TWO_PLUS_TWO_OMEGA,
];

/// Units whose images must be the self-reverse-complement dinucleotides.
pub const SELF_RC_ELEMENTS: [RingElement; 4] = [
    RingElement::ONE,
    RingElement::THREE,
    RingElement::new(1, 2),
    RingElement::new(3, 2),
];

pub const SELF_REVERSIBLE_DINUCLEOTIDES: [Dinucleotide; 4] =
    [Dinucleotide::AA, Dinucleotide::TT, Dinucleotide::CC, Dinucleotide::GG];

pub const SELF_RC_DINUCLEOTIDES: [Dinucleotide; 4] =
    [Dinucleotide::AT, Dinucleotide::TA, Dinucleotide::GC, Dinucleotide::CG];

/// Admissible complement constants, in canonical element order.
pub const LAMBDAS: [RingElement; 3] = [
    RingElement::TWO_OMEGA,
    RingElement::TWO,
    RingElement::TWO_PLUS_TWO_OMEGA,
];

/// One of the structural requirements on a Gau table.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum TableConstraint {
    Bijection,
    ZeroToAA,
    LambdaAdmissible,
    ComplementShift,
    SelfReversibleImages,
    SelfReverseComplementImages,
}

impl fmt::Display for TableConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableConstraint::Bijection => "phi is not a bijection",
            TableConstraint::ZeroToAA => "phi(0) ≠ AA",
            TableConstraint::LambdaAdmissible => "lambda not in {2,2ω,2+2ω}",
            TableConstraint::ComplementShift => "phi(x+lambda) ≠ complement(phi(x))",
            TableConstraint::SelfReversibleImages => "phi({0,2,2ω,2+2ω}) ≠ {AA,TT,CC,GG}",
            TableConstraint::SelfReverseComplementImages => "phi({1,3,1+2ω,3+2ω}) ≠ {AT,TA,GC,CG}",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: TableConstraint,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.constraint, self.witness)
    }
}

/// A Gau map for one ring: `phi` plus the complement constant `lambda`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GauTable {
    theta: Theta,
    phi: [Dinucleotide; ORDER],
    lambda: RingElement,
}

impl fmt::Debug for GauTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GauTable({:?}, λ={}, [", self.theta, self.lambda)?;
        for (i, d) in self.phi.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}", RingElement::from_index(i), d)?;
        }
        f.write_str("])")
    }
}

impl PartialOrd for GauTable {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Tables order by `(θ, λ, phi)` with `phi` compared entry by entry in element order.
impl Ord for GauTable {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.theta, self.lambda, self.phi).cmp(&(other.theta, other.lambda, other.phi))
    }
}

impl GauTable {
    /// Builds a table and rejects it unless every constraint holds.
    pub fn new(theta: Theta, phi: [Dinucleotide; ORDER], lambda: RingElement) -> Result<Self> {
        let table = GauTable::unchecked(theta, phi, lambda);
        let violations = table.validate();
        if violations.is_empty() {
            Ok(table)
        } else {
            Err(Error::InvalidTable(violations.iter().map(|v| v.to_string()).collect()))
        }
    }

    /// Builds a table without validation; see [`GauTable::validate`].
    pub fn unchecked(theta: Theta, phi: [Dinucleotide; ORDER], lambda: RingElement) -> Self {
        GauTable { theta, phi, lambda }
    }

    pub fn theta(&self) -> Theta {
        self.theta
    }

    pub fn lambda(&self) -> RingElement {
        self.lambda
    }

    pub fn phi(&self, x: RingElement) -> Dinucleotide {
        self.phi[x.index()]
    }

    pub fn entries(&self) -> &[Dinucleotide; ORDER] {
        &self.phi
    }

    pub fn inverse(&self, d: Dinucleotide) -> Option<RingElement> {
        self.phi.iter().position(|&e| e == d).map(RingElement::from_index)
    }

    /// Every violated constraint with a witness; empty for a valid table.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = [None::<RingElement>; ORDER];
        for x in RingElement::all() {
            let d = self.phi(x);
            if let Some(prev) = seen[d.code() as usize] {
                out.push(Violation {
                    constraint: TableConstraint::Bijection,
                    witness: format!("phi({prev}) = phi({x}) = {d}"),
                });
            } else {
                seen[d.code() as usize] = Some(x);
            }
        }
        if self.phi(RingElement::ZERO) != Dinucleotide::AA {
            out.push(Violation {
                constraint: TableConstraint::ZeroToAA,
                witness: format!("phi(0) = {}", self.phi(RingElement::ZERO)),
            });
        }
        if !LAMBDAS.contains(&self.lambda) {
            out.push(Violation {
                constraint: TableConstraint::LambdaAdmissible,
                witness: format!("lambda = {}", self.lambda),
            });
        }
        if let Some(x) = RingElement::all().find(|&x| self.phi(x.add(self.lambda)) != self.phi(x).complement()) {
            out.push(Violation {
                constraint: TableConstraint::ComplementShift,
                witness: format!(
                    "phi({}) = {} but complement(phi({x})) = {}",
                    x.add(self.lambda),
                    self.phi(x.add(self.lambda)),
                    self.phi(x).complement()
                ),
            });
        }
        let image = |xs: &[RingElement]| xs.iter().map(|&x| self.phi(x)).collect::<BTreeSet<_>>();
        let sr = image(&SELF_REVERSIBLE_ELEMENTS);
        if sr != SELF_REVERSIBLE_DINUCLEOTIDES.into_iter().collect() {
            out.push(Violation {
                constraint: TableConstraint::SelfReversibleImages,
                witness: format!("image {sr:?}"),
            });
        }
        let src = image(&SELF_RC_ELEMENTS);
        if src != SELF_RC_DINUCLEOTIDES.into_iter().collect() {
            out.push(Violation {
                constraint: TableConstraint::SelfReverseComplementImages,
                witness: format!("image {src:?}"),
            });
        }
        out
    }

    /// Per-nibble substitution computing the packed DNA image of a packed word.
    pub fn encoder(&self) -> NibbleMap {
        NibbleMap::new(&self.phi.map(|d| d.code()))
    }

    /// Inverse substitution; requires a bijective table.
    pub fn decoder(&self) -> Result<NibbleMap> {
        let mut inv = [0u8; ORDER];
        let mut hit = [false; ORDER];
        for x in RingElement::all() {
            let d = self.phi(x).code() as usize;
            if hit[d] {
                return Err(Error::Decode(format!("table is not injective at {}", self.phi(x))));
            }
            hit[d] = true;
            inv[d] = x.index() as u8;
        }
        Ok(NibbleMap::new(&inv))
    }

    pub fn encode(&self, word: &[RingElement]) -> DnaString {
        DnaString(
            word.iter()
                .flat_map(|&x| {
                    let d = self.phi(x);
                    [d.first(), d.second()]
                })
                .collect(),
        )
    }

    pub fn decode(&self, dna: &DnaString) -> Result<Vec<RingElement>> {
        if !dna.len().is_multiple_of(2) {
            return Err(Error::Decode(format!("odd length {}", dna.len())));
        }
        dna.0
            .chunks(2)
            .map(|pair| {
                let d = Dinucleotide::new(pair[0], pair[1]);
                self.inverse(d)
                    .ok_or_else(|| Error::Decode(format!("dinucleotide {d} is not in the table")))
            })
            .collect()
    }

    /// Per-symbol Gau distance: Hamming distance of the two dinucleotide images.
    pub fn symbol_distance(&self, x: RingElement, y: RingElement) -> u32 {
        self.phi(x).hamming(self.phi(y))
    }

    /// 16×16 table of [`GauTable::symbol_distance`].
    pub fn symbol_distances(&self) -> [[u8; ORDER]; ORDER] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                self.symbol_distance(RingElement::from_index(i), RingElement::from_index(j)) as u8
            })
        })
    }

    pub fn gau_distance(&self, x: &[RingElement], y: &[RingElement]) -> Result<u32> {
        if x.len() != y.len() {
            return Err(Error::Shape(format!(
                "Gau distance of lengths {} and {}",
                x.len(),
                y.len()
            )));
        }
        Ok(x.iter().zip(y).map(|(&a, &b)| self.symbol_distance(a, b)).sum())
    }

    /// Serializes in the override-file format.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("# Gau table for theta = {}\n", self.theta);
        for x in RingElement::all() {
            s.push_str(&format!("{x} = {}\n", self.phi(x)));
        }
        s.push_str(&format!("lambda = {}\n", self.lambda));
        s
    }

    /// Parses an override file: 16 lines `<element> = <dinucleotide>` and one
    /// `lambda = <element>`. Blank lines and `#` comments are ignored.
    pub fn from_file_str(theta: Theta, text: &str) -> Result<GauTable> {
        let mut phi: [Option<Dinucleotide>; ORDER] = [None; ORDER];
        let mut lambda = None;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(raw, "expected `<lhs> = <rhs>`"))?;
            let (lhs, rhs) = (lhs.trim(), rhs.trim());
            if lhs.eq_ignore_ascii_case("lambda") {
                if lambda.replace(rhs.parse::<RingElement>()?).is_some() {
                    return Err(Error::parse(raw, "lambda given twice"));
                }
            } else {
                let x: RingElement = lhs.parse()?;
                let d: Dinucleotide = rhs.parse()?;
                if phi[x.index()].replace(d).is_some() {
                    return Err(Error::parse(raw, format!("element {x} given twice")));
                }
            }
        }
        let lambda = lambda.ok_or_else(|| Error::parse(text, "missing `lambda = ...` line"))?;
        let mut entries = [Dinucleotide::AA; ORDER];
        for (i, slot) in phi.iter().enumerate() {
            entries[i] = slot.ok_or_else(|| {
                Error::parse(text, format!("missing entry for {}", RingElement::from_index(i)))
            })?;
        }
        GauTable::new(theta, entries, lambda)
    }
}

/// Constraints applied by convention (not by evidence) when fitting a table for `θ`.
///
/// For `θ = 2` the complement constant is 2 and both groups of four special
/// elements are mapped in the listed order. For `θ = 2+2ω` the constant is
/// `2+2ω` and the groups are matched as sets. Every other ring admits any
/// constant in [`LAMBDAS`] and set-level matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conventions {
    pub lambdas: Vec<RingElement>,
    pub pinned: Vec<(RingElement, Dinucleotide)>,
}

impl Conventions {
    pub fn for_theta(theta: Theta) -> Self {
        if theta == Theta::new(2, 0) {
            let pinned = SELF_REVERSIBLE_ELEMENTS
                .iter()
                .zip(SELF_REVERSIBLE_DINUCLEOTIDES)
                .chain(SELF_RC_ELEMENTS.iter().zip(SELF_RC_DINUCLEOTIDES))
                .map(|(&x, d)| (x, d))
                .collect();
            Conventions {
                lambdas: vec![RingElement::TWO],
                pinned,
            }
        } else if theta == Theta::new(2, 2) {
            Conventions {
                lambdas: vec![RingElement::TWO_PLUS_TWO_OMEGA],
                pinned: vec![(RingElement::ZERO, Dinucleotide::AA)],
            }
        } else {
            Conventions {
                lambdas: LAMBDAS.to_vec(),
                pinned: vec![(RingElement::ZERO, Dinucleotide::AA)],
            }
        }
    }

    /// No conventions beyond the table invariants themselves.
    pub fn none() -> Self {
        Conventions {
            lambdas: LAMBDAS.to_vec(),
            pinned: vec![(RingElement::ZERO, Dinucleotide::AA)],
        }
    }
}

/// How an evidence pair constrains a table.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Match {
    /// The encoded ring code must equal the DNA set.
    Exact,
    /// The encoded ring code must be contained in the DNA set.
    Subset,
}

/// A ring code (as packed words of length `n`) and the DNA strings it should encode to.
#[derive(Clone, Debug)]
pub struct Evidence {
    pub n: usize,
    pub ring_words: Vec<Packed>,
    pub dna: Vec<DnaString>,
    pub mode: Match,
}

impl Evidence {
    pub fn exact(n: usize, ring_words: Vec<Packed>, dna: Vec<DnaString>) -> Self {
        Evidence { n, ring_words, dna, mode: Match::Exact }
    }

    pub fn subset(n: usize, ring_words: Vec<Packed>, dna: Vec<DnaString>) -> Self {
        Evidence { n, ring_words, dna, mode: Match::Subset }
    }
}

struct PreparedEvidence {
    n: usize,
    words: Vec<Packed>,
    dna: HashSet<Packed>,
    // allowed[i] = bitmask over dinucleotides seen at coordinate i
    allowed: Vec<u16>,
}

impl PreparedEvidence {
    fn new(e: &Evidence) -> Result<Self> {
        let len = 2 * e.n;
        if let Some(bad) = e.dna.iter().find(|d| d.len() != len) {
            return Err(Error::Shape(format!(
                "evidence string {bad} has length {}, expected {len}",
                bad.len()
            )));
        }
        let dna: HashSet<Packed> = e.dna.iter().map(DnaString::pack).collect();
        let words: Vec<Packed> = e.ring_words.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if e.mode == Match::Exact && words.len() != dna.len() {
            return Err(Error::UnsatisfiableEvidence(format!(
                "ring code has {} words but the DNA list has {} distinct strings",
                words.len(),
                dna.len()
            )));
        }
        if e.mode == Match::Subset && words.len() > dna.len() {
            return Err(Error::UnsatisfiableEvidence(format!(
                "ring code has {} words, more than the {} listed strings",
                words.len(),
                dna.len()
            )));
        }
        let allowed = (0..e.n)
            .map(|i| {
                dna.iter()
                    .fold(0u16, |m, &d| m | 1 << ((d >> (4 * (e.n - 1 - i))) & 0xF))
            })
            .collect();
        Ok(PreparedEvidence { n: e.n, words, dna, allowed })
    }

    /// Per-coordinate projection test on the entries assigned so far.
    fn admits_partial(&self, phi: &[Option<Dinucleotide>; ORDER]) -> bool {
        self.words.iter().all(|&w| {
            (0..self.n).all(|i| {
                let x = packed::get(w, self.n, i);
                match phi[x.index()] {
                    Some(d) => self.allowed[i] & (1 << d.code()) != 0,
                    None => true,
                }
            })
        })
    }

    fn admits(&self, table: &GauTable) -> bool {
        let enc = table.encoder();
        self.words.iter().all(|&w| self.dna.contains(&enc.apply(w, self.n)))
    }
}

/// All valid tables for `theta` that satisfy `conventions` and reproduce every evidence pair.
///
/// Output is sorted by the table order. An empty family is reported as
/// [`Error::UnsatisfiableEvidence`] naming the first constraint that could not be met.
pub fn fit_table(theta: Theta, evidence: &[Evidence], conventions: &Conventions) -> Result<Vec<GauTable>> {
    let prepared = evidence.iter().map(PreparedEvidence::new).collect::<Result<Vec<_>>>()?;
    let mut tables: Vec<GauTable> = conventions
        .lambdas
        .par_iter()
        .flat_map_iter(|&lambda| {
            let mut found = Vec::new();
            search_lambda(theta, lambda, &conventions.pinned, &prepared, &mut found);
            found
        })
        .collect();
    tables.sort();
    if tables.is_empty() {
        let structural = {
            let mut probe = Vec::new();
            for &lambda in &conventions.lambdas {
                search_lambda(theta, lambda, &conventions.pinned, &[], &mut probe);
                if !probe.is_empty() {
                    break;
                }
            }
            probe.is_empty()
        };
        let reason = if structural {
            "no table satisfies the structural constraints and conventions".to_string()
        } else {
            let first_bad = prepared
                .iter()
                .position(|p| {
                    let mut probe = Vec::new();
                    conventions.lambdas.iter().for_each(|&l| {
                        search_lambda(theta, l, &conventions.pinned, std::slice::from_ref(p), &mut probe)
                    });
                    probe.is_empty()
                })
                .unwrap_or(0);
            format!("no constraint-consistent table reproduces evidence item {first_bad}")
        };
        return Err(Error::UnsatisfiableEvidence(reason));
    }
    Ok(tables)
}

fn search_lambda(
    theta: Theta,
    lambda: RingElement,
    pinned: &[(RingElement, Dinucleotide)],
    evidence: &[PreparedEvidence],
    out: &mut Vec<GauTable>,
) {
    let mut phi: [Option<Dinucleotide>; ORDER] = [None; ORDER];
    for &(x, d) in pinned {
        for (y, e) in [(x, d), (x.add(lambda), d.complement())] {
            match phi[y.index()] {
                Some(prev) if prev != e => return,
                _ => phi[y.index()] = Some(e),
            }
        }
    }
    let mut used = [false; ORDER];
    for d in phi.iter().flatten() {
        if used[d.code() as usize] {
            return;
        }
        used[d.code() as usize] = true;
    }
    // Element pairs {x, x+λ} still to assign, each taking a complementary dinucleotide pair.
    let mut pairs = Vec::new();
    let mut covered = [false; ORDER];
    for x in RingElement::all() {
        if covered[x.index()] {
            continue;
        }
        let y = x.add(lambda);
        covered[x.index()] = true;
        covered[y.index()] = true;
        if phi[x.index()].is_none() {
            pairs.push((x, y));
        }
    }
    if !evidence.iter().all(|e| e.admits_partial(&phi)) {
        return;
    }
    backtrack(theta, lambda, &pairs, 0, &mut phi, &mut used, evidence, out);
}

fn class_of(x: RingElement) -> u8 {
    if SELF_REVERSIBLE_ELEMENTS.contains(&x) {
        0
    } else if SELF_RC_ELEMENTS.contains(&x) {
        1
    } else {
        2
    }
}

fn dinucleotide_class(d: Dinucleotide) -> u8 {
    if SELF_REVERSIBLE_DINUCLEOTIDES.contains(&d) {
        0
    } else if SELF_RC_DINUCLEOTIDES.contains(&d) {
        1
    } else {
        2
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    theta: Theta,
    lambda: RingElement,
    pairs: &[(RingElement, RingElement)],
    depth: usize,
    phi: &mut [Option<Dinucleotide>; ORDER],
    used: &mut [bool; ORDER],
    evidence: &[PreparedEvidence],
    out: &mut Vec<GauTable>,
) {
    if depth == pairs.len() {
        let table = GauTable::unchecked(theta, phi.map(|d| d.expect("complete assignment")), lambda);
        if evidence.iter().all(|e| e.admits(&table)) {
            debug_assert!(table.validate().is_empty(), "{table:?}");
            out.push(table);
        }
        return;
    }
    let (x, y) = pairs[depth];
    // λ keeps each class closed, so x and x+λ share a class.
    let class = class_of(x);
    for d in Dinucleotide::all() {
        let c = d.complement();
        if used[d.code() as usize] || used[c.code() as usize] || dinucleotide_class(d) != class {
            continue;
        }
        phi[x.index()] = Some(d);
        phi[y.index()] = Some(c);
        used[d.code() as usize] = true;
        used[c.code() as usize] = true;
        if evidence.iter().all(|e| e.admits_partial(phi)) {
            backtrack(theta, lambda, pairs, depth + 1, phi, used, evidence, out);
        }
        used[d.code() as usize] = false;
        used[c.code() as usize] = false;
        phi[x.index()] = None;
        phi[y.index()] = None;
    }
}

/// Where a table entry's value comes from when a family of fitted tables is returned.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum EntryProvenance {
    /// Fixed by the conventions for this ring.
    Convention,
    /// Not fixed by convention, but identical across every fitted table.
    Evidence,
    /// Differs between fitted tables.
    Free,
}

/// Classifies every entry of a fitted family.
pub fn entry_provenance(family: &[GauTable], conventions: &Conventions) -> [EntryProvenance; ORDER] {
    let convention: HashSet<RingElement> = if conventions.lambdas.len() == 1 {
        conventions
            .pinned
            .iter()
            .flat_map(|&(x, _)| [x, x.add(conventions.lambdas[0])])
            .collect()
    } else {
        [RingElement::ZERO].into_iter().collect()
    };
    std::array::from_fn(|i| {
        let x = RingElement::from_index(i);
        if convention.contains(&x) {
            EntryProvenance::Convention
        } else if family.windows(2).all(|w| w[0].phi(x) == w[1].phi(x)) {
            EntryProvenance::Evidence
        } else {
            EntryProvenance::Free
        }
    })
}
