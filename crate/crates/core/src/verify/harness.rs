//! Empirical checks of structural statements about codes over `R_θ`.
//!
//! Each harness generates a deterministic list of [`Case`]s from a seed,
//! observes each case once and judges one or more [`Statement`]s against the
//! observation. Any failing case is kept as a [`Counterexample`] that
//! [`replay`] re-evaluates from scratch.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fixtures::{fixtures, self_dual_matrix};
use super::tables::default_table;
use crate::code::{
    brute_force_dual, build, constraint_checks, generator_criteria, min_ring_distance, self_checks, span_closure,
    Construction, LinearCode,
};
use crate::error::{Error, Result};
use crate::packed;
use crate::poly::{DivOptions, Poly, DEFAULT_SEARCH_CAP};
use crate::ring::{gray_map, z4_inner_product, RingElement, Theta};

/// Counterexamples kept per report; the total is always in `failures`.
pub const MAX_WITNESSES: usize = 32;

/// Coefficient alphabet for the polynomials `a`, `b` of cyclic ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coefficients {
    Z4,
    Full,
}

/// Which notion of freeness selects the codes a bound is checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FreeReading {
    /// No nonzero codeword made up only of zero divisors.
    ZeroDivisorFree,
    /// The code has a free basis.
    FreeBasis,
}

/// A checkable statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "statement")]
pub enum Statement {
    /// `⟨a, ωb⟩` is reversible iff `a` and `b` are self-reciprocal.
    ReversibleIffSelfReciprocal,
    /// A reverse-complement cyclic `⟨a, ωb⟩` of odd length has `a`, `b` self-reciprocal.
    RcImpliesSelfReciprocal,
    /// `λ·1 ∈ C` with `a`, `b` self-reciprocal makes odd-length `⟨a, ωb⟩` reverse-complement.
    SelfReciprocalAndLambdaImplyRc,
    /// Every reverse-complement linear code contains `λ·1`.
    RcContainsLambda,
    /// DNA reversibility iff the shifted reverse pullbacks of the first row lie in the code.
    ReversibleIffPullbacks,
    /// Complement closure iff `λ·1 ∈ C`.
    ComplementIffLambda,
    /// Reversible, complement and reverse-complement iff both generator criteria hold.
    AllThreeIffCriteria,
    /// `d_gau(x, y) = d_H(x, y) + r(x, y)`.
    DistanceRelation,
    /// `ψ(C⊥) = ψ(C)⊥`.
    GrayDuality,
    /// `C` self-dual iff `ψ(C)` self-dual.
    GraySelfDual,
    /// `|C|·|C⊥| = 16ⁿ`.
    Frobenius,
    /// Free self-dual codes have `d_ring ≤ n/2 + 1`.
    FreeSelfDualHamming { reading: FreeReading },
    /// Free self-dual codes have `d_gau(x, y) ≤ n/2 + 1 + r(x, y)` for every pair.
    FreeSelfDualGauEveryPair { reading: FreeReading },
    /// A pair at minimum ring distance satisfies `d_gau(x, y) ≤ n/2 + 1 + r(x, y)`.
    FreeSelfDualGauMinimumPair { reading: FreeReading },
    /// In `R_2` the units are the zero divisors shifted by one, eight of each.
    UnitsAreShiftedZeroDivisors,
    /// In `R_2`, `|x + 1|` multiplicative equals `|x|` additive for zero divisors `x`.
    OrderIdentity,
    /// In `R_2` the unit group and the additive group of zero divisors have the order profile of `Z4 × Z2`.
    GroupProfiles,
    /// `l < m` and a palindromic generator row imply reversible and reverse-complement.
    ConjectureIf,
    /// Reversible and reverse-complement imply `l < m` and a palindromic generator row.
    ConjectureOnlyIf,
}

/// Input of one check, sufficient to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "case")]
pub enum Case {
    Ideal { theta: Theta, n: usize, a: Vec<RingElement>, b: Vec<RingElement> },
    Generated { theta: Theta, construction: Construction },
    WordPair { theta: Theta, x: Vec<RingElement>, y: Vec<RingElement> },
    Code { theta: Theta, n: usize, generators: Vec<Vec<RingElement>> },
    Element { theta: Theta, x: RingElement },
    Ring { theta: Theta },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub statement: Statement,
    pub case: Case,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Supported,
    Refuted,
    Mixed,
}

/// Tally of one statement over one harness run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub id: String,
    pub statement: Statement,
    /// Cases where the statement's premise held (vacuous cases excluded).
    pub cases: usize,
    pub agreements: usize,
    pub vacuous: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Result of judging one statement on one observation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Vacuous,
    Fails(String),
}

/// Sizes and seeds for every harness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessScope {
    pub seed: u64,
    /// Rings for the cyclic-ideal harnesses.
    pub ideal_thetas: Vec<Theta>,
    /// Lengths of the cyclic-ideal harnesses.
    pub ideal_lengths: Vec<usize>,
    pub ideal_coefficients: Coefficients,
    /// Rings and sample count for the generator-criterion harness.
    pub generator_thetas: Vec<Theta>,
    pub generator_lengths: Vec<usize>,
    pub generator_samples: usize,
    /// Random word pairs per ring for the distance relation.
    pub pair_samples: usize,
    pub gray_thetas: Vec<Theta>,
    pub gray_lengths: Vec<usize>,
    pub gray_codes: usize,
    pub frobenius_lengths: Vec<usize>,
    pub frobenius_codes: usize,
    /// Self-dual codes per ring drawn from the length-4 enumeration.
    pub self_dual_per_theta: usize,
    /// Pairs checked per code for the every-pair Gau bound when a code is too large to scan.
    pub bound_pair_samples: usize,
    pub max_size: usize,
    pub dual_cap: u64,
}

impl Default for HarnessScope {
    fn default() -> Self {
        HarnessScope {
            seed: 0,
            ideal_thetas: vec![Theta::new(2, 2)],
            ideal_lengths: vec![3, 5],
            ideal_coefficients: Coefficients::Z4,
            generator_thetas: vec![Theta::new(2, 0), Theta::new(2, 2)],
            generator_lengths: vec![2, 3, 4],
            generator_samples: 10_000,
            pair_samples: 10_000,
            gray_thetas: vec![Theta::new(2, 0), Theta::new(0, 2)],
            gray_lengths: vec![2, 3],
            gray_codes: 50,
            frobenius_lengths: vec![2, 3, 4],
            frobenius_codes: 25,
            self_dual_per_theta: 4,
            bound_pair_samples: 10_000,
            max_size: crate::code::DEFAULT_MAX_SIZE,
            dual_cap: crate::code::DEFAULT_DUAL_CAP,
        }
    }
}

fn too_large(what: &str) -> Error {
    Error::ScopeTooLarge(what.to_string())
}

impl HarnessScope {
    /// Rejects lengths whose enumeration would exceed the caps.
    pub fn validate(&self) -> Result<()> {
        let fits = |n: usize, cap: u128| 16u128.checked_pow(n as u32).is_some_and(|t| t <= cap);
        if let Some(n) = self.ideal_lengths.iter().find(|&&n| n == 0 || !fits(n, self.max_size as u128)) {
            return Err(too_large(&format!("cyclic length {n} exceeds the code size cap {}", self.max_size)));
        }
        if let Some(n) = self.generator_lengths.iter().find(|&&n| n == 0 || !fits(n, self.max_size as u128)) {
            return Err(too_large(&format!("generator length {n} exceeds the code size cap {}", self.max_size)));
        }
        for &n in self.gray_lengths.iter().chain(&self.frobenius_lengths) {
            if n == 0 || !fits(n, self.dual_cap as u128) {
                return Err(too_large(&format!("dual length {n} exceeds the dual cap {}", self.dual_cap)));
            }
        }
        Ok(())
    }
}

pub(crate) fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let salt = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn random_word(rng: &mut ChaCha8Rng, n: usize) -> Vec<RingElement> {
    (0..n).map(|_| RingElement::from_index(rng.random_range(0..16))).collect()
}

fn random_theta(rng: &mut ChaCha8Rng, thetas: &[Theta]) -> Theta {
    thetas[rng.random_range(0..thetas.len())]
}

// ---------------------------------------------------------------------------
// Observations

/// Everything a statement needs to know about a case.
#[derive(Clone, Debug)]
enum Observation {
    Ideal {
        odd: bool,
        reversible: bool,
        rc: bool,
        lambda_in: bool,
        sr_a: Option<RingElement>,
        sr_b: Option<RingElement>,
    },
    Generated {
        reversible_dna: bool,
        complement: bool,
        rc: bool,
        pullbacks: bool,
        lambda_constant: bool,
        index: usize,
        co_index: usize,
        palindromic_row: Option<usize>,
    },
    WordPair {
        gau: u32,
        dna: u32,
        d_h: u32,
        r: u32,
    },
    Code {
        size: usize,
        dual_size: usize,
        n: usize,
        gray_dual_equal: Option<bool>,
        self_dual: bool,
        gray_self_dual: Option<bool>,
    },
    SelfDual {
        n: usize,
        free: bool,
        free_basis: bool,
        self_dual: bool,
        d_ring: Option<u32>,
        /// First checked pair with `d_H(x, y) > n/2 + 1`, i.e. violating the every-pair Gau bound.
        pair_violation: Option<(Vec<RingElement>, Vec<RingElement>, u32, u32)>,
        pairs_checked: usize,
    },
    Element {
        zero_divisor: bool,
        additive: u32,
        multiplicative: Option<u32>,
    },
    Ring {
        units: usize,
        zero_divisors: usize,
        shifted: bool,
        unit_profile: Vec<(u32, usize)>,
        zero_divisor_profile: Vec<(u32, usize)>,
    },
}

fn observe(case: &Case, scope: &HarnessScope) -> Result<Observation> {
    match case {
        Case::Ideal { theta, n, a, b } => {
            let code = build(*theta, &Construction::Ideal { a: a.clone(), b: b.clone(), n: *n }, scope.max_size)?;
            let table = default_table(*theta)?;
            let flags = constraint_checks(&code, table)?;
            Ok(Observation::Ideal {
                odd: n % 2 == 1,
                reversible: flags.reversible_ring,
                rc: flags.reverse_complement,
                lambda_in: code.contains_packed(packed::constant(table.lambda(), *n)),
                sr_a: Poly::new(*theta, a.clone()).is_self_reciprocal()?,
                sr_b: Poly::new(*theta, b.clone()).is_self_reciprocal()?,
            })
        }
        Case::Generated { theta, construction } => {
            let code = build(*theta, construction, scope.max_size)?;
            let table = default_table(*theta)?;
            let flags = constraint_checks(&code, table)?;
            let crit = generator_criteria(&code, construction, table)?
                .ok_or_else(|| Error::Shape("generator criteria need a shift structure".into()))?;
            let index = construction.step().unwrap_or(1);
            let rows = construction.rows(*theta)?;
            let palindromic_row = rows.iter().position(|r| r.iter().eq(r.iter().rev()));
            Ok(Observation::Generated {
                reversible_dna: flags.reversible_dna,
                complement: flags.complement,
                rc: flags.reverse_complement,
                pullbacks: crit.shifted_reverse_pullbacks,
                lambda_constant: crit.lambda_constant,
                index,
                co_index: code.len() / index,
                palindromic_row,
            })
        }
        Case::WordPair { theta, x, y } => {
            let table = default_table(*theta)?;
            let gau = table.gau_distance(x, y)?;
            let dna = table.encode(x).hamming(&table.encode(y))?;
            let (mut d_h, mut r) = (0, 0);
            for (&u, &v) in x.iter().zip(y) {
                if u != v {
                    d_h += 1;
                    let (p, q) = (table.phi(u), table.phi(v));
                    if p.first() != q.first() && p.second() != q.second() {
                        r += 1;
                    }
                }
            }
            Ok(Observation::WordPair { gau, dna, d_h, r })
        }
        Case::Code { theta, n, generators } => {
            let code = span_closure(*theta, *n, generators, scope.max_size)?;
            let dual = brute_force_dual(&code, scope.dual_cap)?;
            let gray = (4u64.pow(2 * *n as u32) <= scope.dual_cap).then(|| gray_comparison(&code, &dual));
            Ok(Observation::Code {
                size: code.size(),
                dual_size: dual.size(),
                n: *n,
                gray_dual_equal: gray.map(|g| g.0),
                self_dual: code.packed_words() == dual.packed_words(),
                gray_self_dual: gray.map(|g| g.1),
            })
        }
        Case::Element { theta, x } => {
            let class = theta.ring().classify();
            Ok(Observation::Element {
                zero_divisor: !class.is_unit(*x),
                additive: class.additive_order(*x),
                multiplicative: class.multiplicative_order(x.add(RingElement::ONE)).ok(),
            })
        }
        Case::Ring { theta } => {
            let class = theta.ring().classify();
            let mut shifted: Vec<_> = class.zero_divisors.iter().map(|z| z.add(RingElement::ONE)).collect();
            shifted.sort();
            let mut units = class.units.clone();
            units.sort();
            Ok(Observation::Ring {
                units: class.units.len(),
                zero_divisors: class.zero_divisors.len(),
                shifted: shifted == units,
                unit_profile: class.unit_multiplicative_profile(),
                zero_divisor_profile: class.zero_divisor_additive_profile(),
            })
        }
    }
}

fn observe_self_dual(theta: Theta, n: usize, generators: &[Vec<RingElement>], scope: &HarnessScope) -> Result<Observation> {
    let code = span_closure(theta, n, generators, scope.max_size)?;
    let checks = self_checks(&code);
    let bound = n as u32 / 2 + 1;
    let words = code.packed_words();
    let mut pairs_checked = 0;
    let mut pair_violation = None;
    let mut record = |x: u64, y: u64| {
        pairs_checked += 1;
        let d = packed::weight(packed::sub(x, y));
        if d > bound && pair_violation.is_none() {
            pair_violation = Some((packed::unpack(x, n), packed::unpack(y, n), d, bound));
        }
    };
    let total_pairs = words.len() * (words.len().saturating_sub(1)) / 2;
    if total_pairs <= scope.bound_pair_samples {
        for (i, &x) in words.iter().enumerate() {
            for &y in &words[i + 1..] {
                record(x, y);
            }
        }
    } else {
        let mut rng = rng_for(scope.seed, "self-dual-pairs");
        for _ in 0..scope.bound_pair_samples {
            let i = rng.random_range(0..words.len());
            let j = rng.random_range(0..words.len());
            if i != j {
                record(words[i], words[j]);
            }
        }
    }
    Ok(Observation::SelfDual {
        n,
        free: checks.free,
        free_basis: checks.free_basis,
        self_dual: checks.self_dual,
        d_ring: min_ring_distance(&code),
        pair_violation,
        pairs_checked,
    })
}

/// `(ψ(C⊥) = ψ(C)⊥, ψ(C) = ψ(C)⊥)`, duals over `Z4` by brute force.
fn gray_comparison(code: &LinearCode, dual: &LinearCode) -> (bool, bool) {
    let n = code.len();
    let image: Vec<Vec<u8>> = code.codewords().map(|w| gray_map(&w).0).collect();
    let len = 2 * n;
    let z4_dual: Vec<Vec<u8>> = (0..1u64 << (2 * len))
        .map(|c| (0..len).map(|i| ((c >> (2 * (len - 1 - i))) & 3) as u8).collect::<Vec<u8>>())
        .filter(|v| image.iter().all(|w| z4_inner_product(w, v) == 0))
        .collect();
    let mut lhs: Vec<Vec<u8>> = dual.codewords().map(|w| gray_map(&w).0).collect();
    lhs.sort();
    let mut image_sorted = image;
    image_sorted.sort();
    (lhs == z4_dual, image_sorted == z4_dual)
}

fn fails(cond: bool, detail: impl FnOnce() -> String) -> Outcome {
    if cond {
        Outcome::Holds
    } else {
        Outcome::Fails(detail())
    }
}

fn judge(statement: Statement, obs: &Observation) -> Outcome {
    use Observation as O;
    use Statement as S;
    match (statement, obs) {
        (S::ReversibleIffSelfReciprocal, O::Ideal { reversible, sr_a, sr_b, .. }) => {
            let criterion = sr_a.is_some() && sr_b.is_some();
            fails(*reversible == criterion, || {
                format!("reversible = {reversible}, a self-reciprocal = {}, b self-reciprocal = {}", sr_a.is_some(), sr_b.is_some())
            })
        }
        (S::RcImpliesSelfReciprocal, O::Ideal { odd, rc, sr_a, sr_b, .. }) => {
            if !odd || !rc {
                return Outcome::Vacuous;
            }
            fails(sr_a.is_some() && sr_b.is_some(), || {
                format!("reverse-complement code with a self-reciprocal = {}, b self-reciprocal = {}", sr_a.is_some(), sr_b.is_some())
            })
        }
        (S::SelfReciprocalAndLambdaImplyRc, O::Ideal { odd, rc, lambda_in, sr_a, sr_b, .. }) => {
            if !odd || !lambda_in || sr_a.is_none() || sr_b.is_none() {
                return Outcome::Vacuous;
            }
            fails(*rc, || "λ·1 ∈ C and a, b self-reciprocal, but C is not reverse-complement".into())
        }
        (S::RcContainsLambda, O::Ideal { rc, lambda_in, .. })
        | (S::RcContainsLambda, O::Generated { rc, lambda_constant: lambda_in, .. }) => {
            if !rc {
                return Outcome::Vacuous;
            }
            fails(*lambda_in, || "reverse-complement code without λ·1".into())
        }
        (S::ReversibleIffPullbacks, O::Generated { reversible_dna, pullbacks, .. }) => {
            fails(reversible_dna == pullbacks, || format!("reversible = {reversible_dna}, pullback criterion = {pullbacks}"))
        }
        (S::ComplementIffLambda, O::Generated { complement, lambda_constant, .. }) => {
            fails(complement == lambda_constant, || format!("complement = {complement}, λ·1 ∈ C = {lambda_constant}"))
        }
        (S::AllThreeIffCriteria, O::Generated { reversible_dna, complement, rc, pullbacks, lambda_constant, .. }) => {
            let lhs = *reversible_dna && *complement && *rc;
            let rhs = *pullbacks && *lambda_constant;
            fails(lhs == rhs, || format!("all three constraints = {lhs}, both criteria = {rhs}"))
        }
        (S::DistanceRelation, O::WordPair { gau, dna, d_h, r }) => fails(*gau == d_h + r && gau == dna, || {
            format!("d_gau = {gau}, d_H + r = {} + {}, DNA Hamming = {dna}", d_h, r)
        }),
        (S::GrayDuality, O::Code { gray_dual_equal, .. }) => match gray_dual_equal {
            None => Outcome::Vacuous,
            Some(eq) => fails(*eq, || "ψ(C⊥) differs from ψ(C)⊥".into()),
        },
        (S::GraySelfDual, O::Code { self_dual, gray_self_dual, .. }) => match gray_self_dual {
            None => Outcome::Vacuous,
            Some(g) => fails(self_dual == g, || format!("C self-dual = {self_dual}, ψ(C) self-dual = {g}")),
        },
        (S::Frobenius, O::Code { size, dual_size, n, .. }) => {
            let total = 16u128.pow(*n as u32);
            fails((*size as u128) * (*dual_size as u128) == total, || {
                format!("|C|·|C⊥| = {size}·{dual_size} ≠ 16^{n}")
            })
        }
        (
            S::FreeSelfDualHamming { reading }
            | S::FreeSelfDualGauEveryPair { reading }
            | S::FreeSelfDualGauMinimumPair { reading },
            O::SelfDual { n, free, free_basis, self_dual, d_ring, pair_violation, pairs_checked },
        ) => {
            let selected = match reading {
                FreeReading::ZeroDivisorFree => *free,
                FreeReading::FreeBasis => *self_dual && *free_basis,
            };
            if !selected {
                return Outcome::Vacuous;
            }
            let bound = *n as u32 / 2 + 1;
            match statement {
                S::FreeSelfDualGauEveryPair { .. } => match pair_violation {
                    None => Outcome::Holds,
                    Some((x, y, d, b)) => Outcome::Fails(format!(
                        "pair {} / {} has d_H = {d} > {b}, so d_gau exceeds n/2 + 1 + r ({pairs_checked} pairs checked)",
                        crate::ring::format_vector(x),
                        crate::ring::format_vector(y)
                    )),
                },
                _ => fails(d_ring.is_none_or(|d| d <= bound), || format!("d_ring = {d_ring:?} > n/2 + 1 = {bound}")),
            }
        }
        (S::UnitsAreShiftedZeroDivisors, O::Ring { units, zero_divisors, shifted, .. }) => {
            fails(*units == 8 && *zero_divisors == 8 && *shifted, || {
                format!("|U| = {units}, |Z| = {zero_divisors}, U = Z + 1: {shifted}")
            })
        }
        (S::GroupProfiles, O::Ring { unit_profile, zero_divisor_profile, .. }) => {
            let z4z2 = vec![(1, 1), (2, 3), (4, 4)];
            fails(*unit_profile == z4z2 && *zero_divisor_profile == z4z2, || {
                format!("unit profile {unit_profile:?}, zero-divisor profile {zero_divisor_profile:?}")
            })
        }
        (S::OrderIdentity, O::Element { zero_divisor, additive, multiplicative }) => {
            if !zero_divisor {
                return Outcome::Vacuous;
            }
            fails(*multiplicative == Some(*additive), || {
                format!("|x+1| multiplicative = {multiplicative:?}, |x| additive = {additive}")
            })
        }
        (S::ConjectureIf, O::Generated { reversible_dna, rc, index, co_index, palindromic_row, .. }) => {
            if !(index < co_index && palindromic_row.is_some()) {
                return Outcome::Vacuous;
            }
            fails(*reversible_dna && *rc, || format!("l < m with a palindromic row, but reversible = {reversible_dna}, RC = {rc}"))
        }
        (S::ConjectureOnlyIf, O::Generated { reversible_dna, rc, index, co_index, palindromic_row, .. }) => {
            if !(*reversible_dna && *rc) {
                return Outcome::Vacuous;
            }
            fails(index < co_index && palindromic_row.is_some(), || {
                format!("reversible and RC with l = {index}, m = {co_index}, palindromic row: {}", palindromic_row.is_some())
            })
        }
        (s, o) => Outcome::Fails(format!("statement {s:?} does not apply to observation {o:?}")),
    }
}

fn observe_for(statement: Statement, case: &Case, scope: &HarnessScope) -> Result<Observation> {
    match (statement, case) {
        (
            Statement::FreeSelfDualHamming { .. }
            | Statement::FreeSelfDualGauEveryPair { .. }
            | Statement::FreeSelfDualGauMinimumPair { .. },
            Case::Code { theta, n, generators },
        ) => observe_self_dual(*theta, *n, generators, scope),
        _ => observe(case, scope),
    }
}

/// Re-evaluates one statement on one case from scratch.
pub fn replay(statement: Statement, case: &Case, scope: &HarnessScope) -> Result<Outcome> {
    observe_for(statement, case, scope).map(|o| judge(statement, &o))
}

/// Judges every statement on every case and tallies one report per statement.
pub(crate) fn run(id: &str, statements: &[Statement], cases: Vec<Case>, scope: &HarnessScope) -> Result<Vec<HarnessReport>> {
    let observations: Vec<Vec<Observation>> = cases
        .par_iter()
        .map(|case| {
            let mut seen: Vec<(bool, Observation)> = Vec::new();
            statements
                .iter()
                .map(|&s| {
                    let special = matches!(
                        s,
                        Statement::FreeSelfDualHamming { .. }
                            | Statement::FreeSelfDualGauEveryPair { .. }
                            | Statement::FreeSelfDualGauMinimumPair { .. }
                    );
                    if let Some((_, o)) = seen.iter().find(|(k, _)| *k == special) {
                        return Ok(o.clone());
                    }
                    let o = observe_for(s, case, scope)?;
                    seen.push((special, o.clone()));
                    Ok(o)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(statements
        .iter()
        .enumerate()
        .map(|(k, &statement)| {
            let mut report = HarnessReport {
                id: id.to_string(),
                statement,
                cases: 0,
                agreements: 0,
                vacuous: 0,
                failures: 0,
                counterexamples: Vec::new(),
                verdict: Verdict::Supported,
                notes: Vec::new(),
            };
            for (case, obs) in cases.iter().zip(&observations) {
                match judge(statement, &obs[k]) {
                    Outcome::Vacuous => report.vacuous += 1,
                    Outcome::Holds => {
                        report.cases += 1;
                        report.agreements += 1;
                    }
                    Outcome::Fails(detail) => {
                        report.cases += 1;
                        report.failures += 1;
                        if report.counterexamples.len() < MAX_WITNESSES {
                            report.counterexamples.push(Counterexample { statement, case: case.clone(), detail });
                        }
                    }
                }
            }
            report.verdict = match (report.failures, report.agreements) {
                (0, _) => Verdict::Supported,
                (_, 0) => Verdict::Refuted,
                _ => Verdict::Mixed,
            };
            if report.cases == 0 {
                report.notes.push("no case satisfied the premise".into());
            }
            report
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Case generation

/// Nonzero polynomials of degree below `n` dividing `xⁿ − 1`.
pub fn divisors_of_xn_minus_1(theta: Theta, n: usize, coefficients: Coefficients) -> Result<Vec<Poly>> {
    let alphabet: Vec<RingElement> = match coefficients {
        Coefficients::Z4 => RingElement::z4().collect(),
        Coefficients::Full => RingElement::all().collect(),
    };
    let modulus = Poly::x_n_minus_one(theta, n);
    let opts = DivOptions { modulus: None, z4_only: coefficients == Coefficients::Z4, cap: DEFAULT_SEARCH_CAP };
    let total = (alphabet.len() as u64).pow(n as u32);
    let candidates: Vec<Poly> = (1..total)
        .map(|mut idx| {
            let coeffs = (0..n)
                .map(|_| {
                    let c = alphabet[(idx % alphabet.len() as u64) as usize];
                    idx /= alphabet.len() as u64;
                    c
                })
                .collect();
            Poly::new(theta, coeffs)
        })
        .collect();
    let checked: Vec<Option<Poly>> = candidates
        .into_par_iter()
        .map(|p| Ok(p.divides(&modulus, &opts)?.map(|_| p)))
        .collect::<Result<_>>()?;
    Ok(checked.into_iter().flatten().collect())
}

/// Pairs `(a, b)` with `b | a | xⁿ − 1`.
pub fn ideal_cases(theta: Theta, n: usize, coefficients: Coefficients) -> Result<Vec<Case>> {
    let divisors = divisors_of_xn_minus_1(theta, n, coefficients)?;
    let opts = DivOptions { modulus: None, z4_only: coefficients == Coefficients::Z4, cap: DEFAULT_SEARCH_CAP };
    let pairs: Vec<Vec<Case>> = divisors
        .par_iter()
        .map(|a| {
            divisors
                .iter()
                .filter_map(|b| match b.divides(a, &opts) {
                    Ok(Some(_)) => Some(Ok(Case::Ideal { theta, n, a: a.coeffs().to_vec(), b: b.coeffs().to_vec() })),
                    Ok(None) => None,
                    Err(e) => Some(Err(e)),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(pairs.into_iter().flatten().collect())
}

fn generated_cases(scope: &HarnessScope, label: &str) -> Vec<Case> {
    let mut rng = rng_for(scope.seed, label);
    let mut cases: Vec<Case> = fixtures()
        .iter()
        .filter(|f| scope.generator_thetas.contains(&f.theta))
        .map(|f| Case::Generated { theta: f.theta, construction: f.construction.clone() })
        .collect();
    for _ in 0..scope.generator_samples {
        let theta = random_theta(&mut rng, &scope.generator_thetas);
        let n = scope.generator_lengths[rng.random_range(0..scope.generator_lengths.len())];
        let steps: Vec<usize> = (1..=n).filter(|s| n.is_multiple_of(*s) && *s < n.max(2)).collect();
        let step = steps[rng.random_range(0..steps.len())];
        let mut row = random_word(&mut rng, n);
        if rng.random_bool(0.5) {
            for i in 0..n / 2 {
                row[n - 1 - i] = row[i];
            }
        }
        let construction = if step == 1 {
            Construction::Cyclic { row }
        } else {
            Construction::QuasiCyclic { row, index: step }
        };
        cases.push(Case::Generated { theta, construction });
    }
    cases
}

fn random_code_case(rng: &mut ChaCha8Rng, theta: Theta, n: usize) -> Case {
    let k = rng.random_range(1..=3);
    let generators = (0..k).map(|_| random_word(rng, n)).collect();
    Case::Code { theta, n, generators }
}

fn standard_basis_times(theta: Theta, n: usize, s: RingElement) -> Case {
    let generators = (0..n)
        .map(|i| (0..n).map(|j| if i == j { s } else { RingElement::ZERO }).collect())
        .collect();
    Case::Code { theta, n, generators }
}

/// Self-dual codes `[I | A]`: all of length 2, a seeded sample of length 4, and the length-8 reference code.
fn self_dual_cases(scope: &HarnessScope) -> Vec<Case> {
    let mut cases = vec![Case::Code { theta: Theta::new(2, 0), n: 8, generators: self_dual_matrix() }];
    let mut rng = rng_for(scope.seed, "self-dual");
    for theta in Theta::all() {
        let ring = theta.ring();
        let minus_one = RingElement::THREE;
        for a in RingElement::all() {
            if ring.mul(a, a) == minus_one {
                cases.push(Case::Code { theta, n: 2, generators: vec![vec![RingElement::ONE, a]] });
            }
        }
        let mut found = Vec::new();
        for idx in 0..16usize.pow(4) {
            let m: Vec<RingElement> = (0..4).map(|k| RingElement::from_index((idx >> (4 * k)) & 0xF)).collect();
            let (p, q, r, s) = (m[0], m[1], m[2], m[3]);
            let row1_sq = RingElement::ONE.add(ring.mul(p, p)).add(ring.mul(q, q));
            let row2_sq = RingElement::ONE.add(ring.mul(r, r)).add(ring.mul(s, s));
            let cross = ring.mul(p, r).add(ring.mul(q, s));
            if row1_sq.is_zero() && row2_sq.is_zero() && cross.is_zero() {
                found.push(vec![
                    vec![RingElement::ONE, RingElement::ZERO, p, q],
                    vec![RingElement::ZERO, RingElement::ONE, r, s],
                ]);
            }
        }
        for _ in 0..scope.self_dual_per_theta.min(found.len()) {
            let generators = found.swap_remove(rng.random_range(0..found.len()));
            cases.push(Case::Code { theta, n: 4, generators });
        }
    }
    cases
}

// ---------------------------------------------------------------------------
// Harnesses

/// Cyclic ideals `⟨a, ωb⟩` with `b | a | xⁿ − 1`.
pub fn ideal_harness(scope: &HarnessScope) -> Result<Vec<HarnessReport>> {
    scope.validate()?;
    let mut cases = Vec::new();
    for &theta in &scope.ideal_thetas {
        for &n in &scope.ideal_lengths {
            cases.extend(ideal_cases(theta, n, scope.ideal_coefficients)?);
        }
    }
    let mut reports = run(
        "cyclic-ideals",
        &[
            Statement::ReversibleIffSelfReciprocal,
            Statement::RcImpliesSelfReciprocal,
            Statement::SelfReciprocalAndLambdaImplyRc,
            Statement::RcContainsLambda,
        ],
        cases,
        scope,
    )?;
    for r in &mut reports {
        r.notes.push(format!("polynomial coefficients: {:?}", scope.ideal_coefficients));
    }
    Ok(reports)
}

/// Generator criteria on cyclic and quasi-cyclic codes from fixtures and random first rows.
pub fn generator_harness(scope: &HarnessScope) -> Result<Vec<HarnessReport>> {
    scope.validate()?;
    run(
        "generator-criteria",
        &[
            Statement::ReversibleIffPullbacks,
            Statement::ComplementIffLambda,
            Statement::AllThreeIffCriteria,
            Statement::RcContainsLambda,
        ],
        generated_cases(scope, "generator"),
        scope,
    )
}

/// `d_gau = d_H + r` on random word pairs in every ring.
pub fn distance_harness(scope: &HarnessScope) -> Result<Vec<HarnessReport>> {
    let mut rng = rng_for(scope.seed, "distance");
    let mut cases = Vec::new();
    for theta in Theta::all() {
        for _ in 0..scope.pair_samples {
            let n = rng.random_range(1..=8);
            cases.push(Case::WordPair { theta, x: random_word(&mut rng, n), y: random_word(&mut rng, n) });
        }
    }
    run("distance-relation", &[Statement::DistanceRelation], cases, scope)
}

/// Gray images of duals, on random codes plus `(2R)ⁿ`.
pub fn gray_harness(scope: &HarnessScope) -> Result<Vec<HarnessReport>> {
    scope.validate()?;
    let mut rng = rng_for(scope.seed, "gray");
    let mut cases = Vec::new();
    for &theta in &scope.gray_thetas {
        for &n in &scope.gray_lengths {
            cases.push(standard_basis_times(theta, n, RingElement::TWO));
            for _ in 0..scope.gray_codes {
                cases.push(random_code_case(&mut rng, theta, n));
            }
        }
    }
    run("gray-duality", &[Statement::GrayDuality, Statement::GraySelfDual], cases, scope)
}

/// `|C|·|C⊥| = 16ⁿ` in every ring.
pub fn frobenius_harness(scope: &HarnessScope) -> Result<Vec<HarnessReport>> {
    scope.validate()?;
    let mut rng = rng_for(scope.seed, "frobenius");
    let mut cases = Vec::new();
    for theta in Theta::all() {
        for &n in &scope.frobenius_lengths {
            for _ in 0..scope.frobenius_codes {
                cases.push(random_code_case(&mut rng, theta, n));
            }
        }
    }
    run("frobenius", &[Statement::Frobenius], cases, scope)
}

/// Distance bounds for free self-dual codes, under both readings of freeness.
pub fn self_dual_harness(scope: &HarnessScope) -> Result<Vec<HarnessReport>> {
    let mut statements = Vec::new();
    for reading in [FreeReading::ZeroDivisorFree, FreeReading::FreeBasis] {
        statements.push(Statement::FreeSelfDualHamming { reading });
        statements.push(Statement::FreeSelfDualGauEveryPair { reading });
        statements.push(Statement::FreeSelfDualGauMinimumPair { reading });
    }
    run("free-self-dual-bounds", &statements, self_dual_cases(scope), scope)
}

/// Group structure of `R_2`.
pub fn r2_structure_harness(scope: &HarnessScope) -> Result<Vec<HarnessReport>> {
    let theta = Theta::new(2, 0);
    let mut reports = run(
        "r2-structure",
        &[Statement::UnitsAreShiftedZeroDivisors, Statement::GroupProfiles],
        vec![Case::Ring { theta }],
        scope,
    )?;
    let elements = RingElement::all().map(|x| Case::Element { theta, x }).collect();
    reports.extend(run("r2-structure", &[Statement::OrderIdentity], elements, scope)?);
    Ok(reports)
}

/// Every structural harness, in a fixed order.
pub fn structural_harnesses(scope: &HarnessScope) -> Result<Vec<HarnessReport>> {
    scope.validate()?;
    let mut out = ideal_harness(scope)?;
    out.extend(generator_harness(scope)?);
    out.extend(distance_harness(scope)?);
    out.extend(gray_harness(scope)?);
    out.extend(frobenius_harness(scope)?);
    out.extend(self_dual_harness(scope)?);
    out.extend(r2_structure_harness(scope)?);
    Ok(out)
}
