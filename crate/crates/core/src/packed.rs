//! Nibble-packed words over `R_θ` and 2-bit-packed DNA strings.
//!
//! Coordinate `i` of a length-`n` ring word lives in nibble `n - 1 - i`, so
//! comparing the packed `u64` values compares the words lexicographically.
//! A nibble holds `4a + b`, which makes each nibble two independent mod-4
//! lanes. DNA strings of length `2n` use the same layout with 2 bits per
//! nucleotide (`A=0, C=1, G=2, T=3`), so one ring symbol maps to one nibble
//! of DNA and complementation is a bitwise NOT of every lane.

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElement};

/// Longest word the packed representation supports.
pub const MAX_LEN: usize = 16;

const LO: u64 = 0x5555_5555_5555_5555;
const NIBBLE_LO: u64 = 0x1111_1111_1111_1111;

pub type Packed = u64;

pub(crate) fn check_len(n: usize) -> Result<()> {
    if n > MAX_LEN {
        return Err(Error::Shape(format!(
            "word length {n} exceeds the supported maximum of {MAX_LEN}"
        )));
    }
    Ok(())
}

#[inline]
pub fn mask(n: usize) -> u64 {
    if n >= 16 {
        u64::MAX
    } else {
        (1u64 << (4 * n)) - 1
    }
}

pub fn pack(word: &[RingElement]) -> Packed {
    word.iter().fold(0, |acc, x| (acc << 4) | x.index() as u64)
}

pub fn unpack(w: Packed, n: usize) -> Vec<RingElement> {
    (0..n).map(|i| get(w, n, i)).collect()
}

#[inline]
pub fn get(w: Packed, n: usize, i: usize) -> RingElement {
    RingElement::from_index(((w >> (4 * (n - 1 - i))) & 0xF) as usize)
}

/// Lane-wise addition mod 4.
#[inline]
pub fn add(x: Packed, y: Packed) -> Packed {
    (x ^ y) ^ ((x & y & LO) << 1)
}

#[inline]
pub fn neg(x: Packed) -> Packed {
    x ^ ((x & LO) << 1)
}

#[inline]
pub fn sub(x: Packed, y: Packed) -> Packed {
    add(x, neg(y))
}

/// The constant word `c·1`.
pub fn constant(c: RingElement, n: usize) -> Packed {
    (NIBBLE_LO & mask(n)) * c.index() as u64
}

/// Number of nonzero coordinates.
#[inline]
pub fn weight(x: Packed) -> u32 {
    ((x | (x >> 1) | (x >> 2) | (x >> 3)) & NIBBLE_LO).count_ones()
}

/// Coordinate reversal.
pub fn reverse(x: Packed, n: usize) -> Packed {
    let mut out = 0;
    let mut w = x;
    for _ in 0..n {
        out = (out << 4) | (w & 0xF);
        w >>= 4;
    }
    out
}

/// Right cyclic shift by `k` coordinates: `(x0, …, x_{n-1}) ↦ (x_{n-k}, …, x_{n-k-1})`.
pub fn rotate(x: Packed, n: usize, k: usize) -> Packed {
    if n == 0 {
        return x;
    }
    let k = k % n;
    if k == 0 {
        return x;
    }
    let low_bits = 4 * k;
    ((x >> low_bits) | ((x & mask(k)) << (4 * (n - k)))) & mask(n)
}

/// Scalar multiple `s·x` in `R_θ`.
pub struct Scaler {
    table: [u8; 256],
}

impl Scaler {
    pub fn new(ring: &Ring, s: RingElement) -> Self {
        let row = ring.mul_row(s);
        let table = std::array::from_fn(|byte| {
            let hi = row[byte >> 4].index() as u8;
            let lo = row[byte & 0xF].index() as u8;
            (hi << 4) | lo
        });
        Scaler { table }
    }

    #[inline]
    pub fn apply(&self, x: Packed) -> Packed {
        let bytes = x.to_le_bytes().map(|b| self.table[b as usize]);
        u64::from_le_bytes(bytes)
    }
}

/// Per-nibble substitution, used for the Gau map and its inverse.
#[derive(Clone)]
pub struct NibbleMap {
    table: [u8; 256],
}

impl NibbleMap {
    pub fn new(map: &[u8; 16]) -> Self {
        let table = std::array::from_fn(|byte| (map[byte >> 4] << 4) | map[byte & 0xF]);
        NibbleMap { table }
    }

    /// Applies the map to the low `n` nibbles; the zero nibbles above are mapped too
    /// and must be masked by the caller when `map[0] != 0`.
    #[inline]
    pub fn apply(&self, x: Packed, n: usize) -> Packed {
        let bytes = x.to_le_bytes().map(|b| self.table[b as usize]);
        u64::from_le_bytes(bytes) & mask(n)
    }
}

/// Hamming distance between two packed DNA strings.
#[inline]
pub fn dna_distance(x: Packed, y: Packed) -> u32 {
    let d = x ^ y;
    ((d | (d >> 1)) & LO).count_ones()
}

/// Reversal of a packed DNA string of `len` nucleotides.
pub fn dna_reverse(x: Packed, len: usize) -> Packed {
    let mut out = 0;
    let mut w = x;
    for _ in 0..len {
        out = (out << 2) | (w & 3);
        w >>= 2;
    }
    out
}

/// Watson-Crick complement of a packed DNA string of `len` nucleotides.
#[inline]
pub fn dna_complement(x: Packed, len: usize) -> Packed {
    !x & dna_mask(len)
}

#[inline]
fn dna_mask(len: usize) -> u64 {
    if len >= 32 {
        u64::MAX
    } else {
        (1u64 << (2 * len)) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Theta;
    use proptest::prelude::*;

    fn word(n: usize) -> impl Strategy<Value = Vec<RingElement>> {
        proptest::collection::vec((0usize..16).prop_map(RingElement::from_index), n)
    }

    proptest! {
        #[test]
        fn lane_arithmetic_matches_elementwise(n in 1usize..=16, seed in any::<u64>()) {
            let x = seed & mask(n);
            let y = seed.rotate_left(17) & mask(n);
            let (ux, uy) = (unpack(x, n), unpack(y, n));
            let s: Vec<_> = ux.iter().zip(&uy).map(|(a, b)| a.add(*b)).collect();
            let d: Vec<_> = ux.iter().zip(&uy).map(|(a, b)| a.sub(*b)).collect();
            prop_assert_eq!(unpack(add(x, y), n), s);
            prop_assert_eq!(unpack(sub(x, y), n), d);
            prop_assert_eq!(weight(x) as usize, ux.iter().filter(|e| !e.is_zero()).count());
        }

        #[test]
        fn pack_round_trip_and_order(a in word(7), b in word(7)) {
            prop_assert_eq!(unpack(pack(&a), 7), a.clone());
            prop_assert_eq!(pack(&a).cmp(&pack(&b)), a.cmp(&b));
        }

        #[test]
        fn rotation_and_reversal(w in word(9), k in 0usize..20) {
            let x = pack(&w);
            let mut rotated = w.clone();
            rotated.rotate_right(k % 9);
            prop_assert_eq!(unpack(rotate(x, 9, k), 9), rotated);
            let mut rev = w.clone();
            rev.reverse();
            prop_assert_eq!(unpack(reverse(x, 9), 9), rev);
        }

        #[test]
        fn scaling_matches_ring(w in word(16), s in 0usize..16, t in 0usize..16) {
            let ring = Theta::all().nth(t).unwrap().ring();
            let s = RingElement::from_index(s);
            let expect: Vec<_> = w.iter().map(|&x| ring.mul(s, x)).collect();
            prop_assert_eq!(unpack(Scaler::new(ring, s).apply(pack(&w)), 16), expect);
        }
    }

    #[test]
    fn constants() {
        let c = constant(RingElement::TWO_PLUS_TWO_OMEGA, 3);
        assert_eq!(unpack(c, 3), vec![RingElement::TWO_PLUS_TWO_OMEGA; 3]);
        assert_eq!(constant(RingElement::ONE, 16).count_ones(), 16);
    }

    #[test]
    fn dna_helpers() {
        // ACGT = 0b00_01_10_11
        let acgt = 0b0001_1011;
        assert_eq!(dna_reverse(acgt, 4), 0b1110_0100);
        assert_eq!(dna_complement(acgt, 4), 0b1110_0100);
        assert_eq!(dna_distance(acgt, 0), 3);
    }
}
