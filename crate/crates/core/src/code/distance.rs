use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::LinearCode;
use crate::dnamap::GauTable;
use crate::packed::{self, Packed};

/// Minimum distances of a code; `None` stands for ∞ (a code with a single codeword).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distances {
    pub d_ring: Option<u32>,
    pub d_dna: Option<u32>,
    pub d_gau: Option<u32>,
}

/// Minimum nonzero ring-symbol weight.
pub fn min_ring_distance(code: &LinearCode) -> Option<u32> {
    code.packed_words().iter().filter(|&&w| w != 0).map(|&w| packed::weight(w)).min()
}

/// Minimum ring-symbol Hamming distance over all unordered pairs.
pub fn min_ring_distance_pairwise(code: &LinearCode) -> Option<u32> {
    pairwise_min(code.packed_words(), 0, |x, y| packed::weight(packed::sub(x, y)))
}

/// Minimum DNA Hamming distance between encodings over all unordered pairs.
pub fn min_dna_distance(code: &LinearCode, table: &GauTable) -> Option<u32> {
    let enc = table.encoder();
    let n = code.len();
    let dna: Vec<Packed> = code.packed_words().iter().map(|&w| enc.apply(w, n)).collect();
    let floor = min_ring_distance(code).unwrap_or(0);
    pairwise_min(&dna, floor, packed::dna_distance)
}

/// [`min_dna_distance`] without the early exit, so every pair is compared.
pub fn min_dna_distance_exhaustive(code: &LinearCode, table: &GauTable) -> Option<u32> {
    let enc = table.encoder();
    let n = code.len();
    let dna: Vec<Packed> = code.packed_words().iter().map(|&w| enc.apply(w, n)).collect();
    pairwise_min(&dna, 0, packed::dna_distance)
}

/// Minimum Gau distance over all unordered pairs, summing per-symbol distances
/// looked up two symbols at a time.
pub fn min_gau_distance(code: &LinearCode, table: &GauTable) -> Option<u32> {
    let sym = table.symbol_distances();
    let pair: Vec<u8> = (0..1usize << 16)
        .map(|i| {
            let (x, y) = (i >> 8, i & 0xFF);
            sym[x >> 4][y >> 4] + sym[x & 0xF][y & 0xF]
        })
        .collect();
    let floor = min_ring_distance(code).unwrap_or(0);
    pairwise_min(code.packed_words(), floor, |x, y| {
        let (xb, yb) = (x.to_le_bytes(), y.to_le_bytes());
        (0..8).map(|k| pair[(xb[k] as usize) << 8 | yb[k] as usize] as u32).sum()
    })
}

/// Minimum of `dist` over unordered pairs, stopping early once `floor` is reached.
fn pairwise_min<F>(items: &[Packed], floor: u32, dist: F) -> Option<u32>
where
    F: Fn(Packed, Packed) -> u32 + Sync,
{
    if items.len() < 2 {
        return None;
    }
    let best = AtomicU32::new(u32::MAX);
    (0..items.len() - 1).into_par_iter().for_each(|i| {
        let mut local = best.load(Ordering::Relaxed);
        if local <= floor {
            return;
        }
        let x = items[i];
        for &y in &items[i + 1..] {
            let d = dist(x, y);
            if d < local {
                local = d;
                if d <= floor {
                    break;
                }
            }
        }
        best.fetch_min(local, Ordering::Relaxed);
    });
    Some(best.into_inner())
}

/// `(d_ring, d_dna, d_gau)` on the current rayon pool.
pub fn min_distances(code: &LinearCode, table: &GauTable) -> Distances {
    Distances {
        d_ring: min_ring_distance(code),
        d_dna: min_dna_distance(code, table),
        d_gau: min_gau_distance(code, table),
    }
}

/// [`min_distances`] on a dedicated pool of `workers` threads.
pub fn min_distances_with_workers(code: &LinearCode, table: &GauTable, workers: usize) -> Distances {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| min_distances(code, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build, span_closure, Construction, DEFAULT_MAX_SIZE};
    use crate::dnamap::{fit_table, Conventions};
    use crate::ring::{RingElement, Theta};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r2_table() -> GauTable {
        fit_table(Theta::new(2, 0), &[], &Conventions::for_theta(Theta::new(2, 0))).unwrap()[0].clone()
    }

    #[test]
    fn trivial_code_is_infinite() {
        let c = span_closure(Theta::new(2, 0), 3, &[], DEFAULT_MAX_SIZE).unwrap();
        let d = min_distances(&c, &r2_table());
        assert_eq!(d, Distances { d_ring: None, d_dna: None, d_gau: None });
    }

    #[test]
    fn brute_force_agreement() {
        let table = r2_table();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.random_range(2..=4);
            let row: Vec<_> = (0..n).map(|_| RingElement::from_index(rng.random_range(0..16))).collect();
            let c = build(Theta::new(2, 0), &Construction::Cyclic { row }, DEFAULT_MAX_SIZE).unwrap();
            if c.size() > 1024 {
                continue;
            }
            let words: Vec<_> = c.codewords().collect();
            let mut dna = None::<u32>;
            for (i, u) in words.iter().enumerate() {
                for v in &words[i + 1..] {
                    let d = table.encode(u).hamming(&table.encode(v)).unwrap();
                    dna = Some(dna.map_or(d, |m| m.min(d)));
                }
            }
            let got = min_distances(&c, &table);
            assert_eq!(got.d_dna, dna);
            assert_eq!(min_dna_distance_exhaustive(&c, &table), dna);
            assert_eq!(got.d_gau, dna);
            assert_eq!(got.d_ring, min_ring_distance_pairwise(&c));
            if let (Some(r), Some(d)) = (got.d_ring, got.d_dna) {
                assert!(r <= d && d <= 2 * r);
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let table = r2_table();
        let row = ["2+w", "3", "1"].iter().map(|s| s.parse().unwrap()).collect();
        let c = build(Theta::new(2, 0), &Construction::Cyclic { row }, DEFAULT_MAX_SIZE).unwrap();
        let one = min_distances_with_workers(&c, &table, 1);
        assert_eq!(one, min_distances_with_workers(&c, &table, 4));
        assert_eq!(one.d_ring, Some(1));
    }
}
