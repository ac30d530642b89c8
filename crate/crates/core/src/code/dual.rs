use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LinearCode, SpanBuilder, WordSet};
use crate::error::{Error, Result};
use crate::packed::{self, Packed};
use crate::ring::{z4_inner_product, Ring, RingElement, Theta, Z4Vector, ORDER};

/// Default cap on `16ⁿ` for brute-force duals (`n ≤ 5`).
pub const DEFAULT_DUAL_CAP: u64 = 1 << 20;

/// Self-duality and freeness of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfChecks {
    pub self_orthogonal: bool,
    pub self_dual: bool,
    /// Self-dual with no nonzero codeword made up only of zero divisors.
    pub free: bool,
    /// The reduced generator set of `k` rows spans `16^k` codewords, i.e. it is a free basis.
    pub free_basis: bool,
}

/// A subset of the generators spanning the same code.
pub(crate) fn generator_basis(theta: Theta, n: usize, generators: &[Vec<RingElement>]) -> Vec<Packed> {
    let mut span = SpanBuilder::new(theta, n, usize::MAX);
    let mut basis = Vec::new();
    for g in generators {
        let p = packed::pack(g);
        if !span.contains(p) && span.add_generator(p).expect("uncapped") {
            basis.push(p);
        }
    }
    basis
}

/// Per-coordinate products against one fixed word: `rows[i][x] = g_i · x`.
struct InnerProduct {
    rows: Vec<[RingElement; ORDER]>,
}

impl InnerProduct {
    fn new(ring: &Ring, g: Packed, n: usize) -> Self {
        InnerProduct { rows: (0..n).map(|i| *ring.mul_row(packed::get(g, n, i))).collect() }
    }

    fn eval(&self, v: Packed) -> RingElement {
        let n = self.rows.len();
        self.rows
            .iter()
            .enumerate()
            .fold(RingElement::ZERO, |acc, (i, row)| acc.add(row[((v >> (4 * (n - 1 - i))) & 0xF) as usize]))
    }
}

/// `C⊥` by testing every vector of `R_θⁿ` against a generating set of `C`.
pub fn brute_force_dual(code: &LinearCode, cap: u64) -> Result<LinearCode> {
    let n = code.len();
    let total = 16u64.checked_pow(n as u32).filter(|&t| t <= cap);
    let Some(total) = total else {
        return Err(Error::DualTooLarge { n, cap });
    };
    let theta = code.theta();
    let ring = theta.ring();
    let checks: Vec<InnerProduct> = generator_basis(theta, n, code.generators())
        .into_iter()
        .map(|g| InnerProduct::new(ring, g, n))
        .collect();
    let words: Vec<Packed> = (0..total)
        .into_par_iter()
        .filter(|&v| checks.iter().all(|c| c.eval(v).is_zero()))
        .collect();
    let mut set = WordSet::new(n, words.len());
    for &w in &words {
        set.insert(w);
    }
    let mut span = SpanBuilder::new(theta, n, usize::MAX);
    let mut generators = Vec::new();
    for &w in &words {
        if !span.contains(w) {
            span.add_generator(w)?;
            generators.push(packed::unpack(w, n));
        }
    }
    Ok(LinearCode::from_parts(theta, n, generators, words, set))
}

/// Self-orthogonality over generator pairs, self-duality via `M² = 16ⁿ`, and freeness.
pub fn self_checks(code: &LinearCode) -> SelfChecks {
    let ring = code.theta().ring();
    let gens = code.generators();
    let self_orthogonal = gens
        .iter()
        .enumerate()
        .all(|(i, u)| gens[i..].iter().all(|v| ring.inner_product(u, v).is_ok_and(|x| x.is_zero())));
    let self_dual = self_orthogonal && (code.size() as u128).pow(2) == 16u128.pow(code.len() as u32);
    let free = self_dual && {
        let class = ring.classify();
        let mut zd = [false; ORDER];
        for x in &class.zero_divisors {
            zd[x.index()] = true;
        }
        let n = code.len();
        !code
            .packed_words()
            .par_iter()
            .any(|&w| w != 0 && (0..n).all(|i| zd[packed::get(w, n, i).index()]))
    };
    let k = generator_basis(code.theta(), code.len(), gens).len() as u32;
    let free_basis = code.size() as u128 == 16u128.pow(k);
    SelfChecks { self_orthogonal, self_dual, free, free_basis }
}

/// All vectors of `Z4^len` orthogonal to every vector in `words`.
pub fn z4_dual(words: &[Z4Vector], len: usize) -> Vec<Z4Vector> {
    let total = 1u64 << (2 * len);
    (0..total)
        .into_par_iter()
        .map(|code| Z4Vector((0..len).map(|i| ((code >> (2 * (len - 1 - i))) & 3) as u8).collect()))
        .filter(|v| words.iter().all(|w| z4_inner_product(&w.0, &v.0) == 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{span_closure, DEFAULT_MAX_SIZE};
    use crate::ring::gray_map;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_code(rng: &mut ChaCha8Rng, theta: Theta, n: usize) -> LinearCode {
        let k = rng.random_range(0..=3);
        let gens: Vec<Vec<_>> = (0..k)
            .map(|_| (0..n).map(|_| RingElement::from_index(rng.random_range(0..16))).collect())
            .collect();
        span_closure(theta, n, &gens, DEFAULT_MAX_SIZE).unwrap()
    }

    #[test]
    fn full_space_has_trivial_dual() {
        let theta = Theta::new(1, 3);
        let unit = |i: usize| (0..3).map(|j| if i == j { RingElement::ONE } else { RingElement::ZERO }).collect();
        let full = span_closure(theta, 3, &[unit(0), unit(1), unit(2)], DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(full.size(), 4096);
        let dual = brute_force_dual(&full, DEFAULT_DUAL_CAP).unwrap();
        assert_eq!(dual.packed_words(), &[0]);
    }

    #[test]
    fn dual_is_orthogonal_and_cardinality_is_frobenius() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for theta in Theta::all() {
            for n in 1..=3 {
                let c = random_code(&mut rng, theta, n);
                let d = brute_force_dual(&c, DEFAULT_DUAL_CAP).unwrap();
                assert_eq!(c.size() * d.size(), 16usize.pow(n as u32));
                let ring = theta.ring();
                for u in c.codewords().take(20) {
                    for v in d.codewords().take(20) {
                        assert!(ring.inner_product(&u, &v).unwrap().is_zero());
                    }
                }
                let dd = brute_force_dual(&d, DEFAULT_DUAL_CAP).unwrap();
                assert_eq!(dd.packed_words(), c.packed_words());
            }
        }
    }

    #[test]
    fn dual_cap() {
        let c = span_closure(Theta::new(2, 0), 6, &[], DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(brute_force_dual(&c, DEFAULT_DUAL_CAP).unwrap_err(), Error::DualTooLarge { n: 6, cap: DEFAULT_DUAL_CAP });
    }

    #[test]
    fn gray_image_of_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for theta in [Theta::new(2, 0), Theta::new(0, 2)] {
            for _ in 0..10 {
                let c = random_code(&mut rng, theta, 2);
                let d = brute_force_dual(&c, DEFAULT_DUAL_CAP).unwrap();
                let image: Vec<_> = c.codewords().map(|w| gray_map(&w)).collect();
                let mut lhs: Vec<_> = d.codewords().map(|w| gray_map(&w)).collect();
                lhs.sort();
                assert_eq!(lhs, z4_dual(&image, 4));
            }
        }
    }

    #[test]
    fn self_dual_example() {
        // ω² = 3, so (1, ω)·(1, ω) = 1 + 3 = 0
        let theta = Theta::new(3, 0);
        let c = span_closure(theta, 2, &[vec![RingElement::ONE, RingElement::OMEGA]], DEFAULT_MAX_SIZE).unwrap();
        let checks = self_checks(&c);
        assert!(checks.self_orthogonal && checks.self_dual && checks.free_basis);
        // 2·(1, ω) = (2, 2ω) has only zero-divisor coordinates
        assert!(!checks.free);
        let zero = span_closure(theta, 2, &[], DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(
            self_checks(&zero),
            SelfChecks { self_orthogonal: true, self_dual: false, free: false, free_basis: true }
        );
    }
}
