use num_bigint::BigUint;

fn binomial(n: u32, k: u32) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// Size of a Hamming ball of radius `t` in `{A,C,G,T}^len`.
pub fn ball_size(len: u32, t: u32) -> BigUint {
    (0..=t.min(len))
        .map(|i| binomial(len, i) * BigUint::from(3u32).pow(i))
        .sum()
}

/// `⌊4^len / |B(⌊(d−1)/2⌋)|⌋` for DNA length `len` and minimum distance `d ≥ 1`.
pub fn sphere_packing_bound(len: u32, d: u32) -> BigUint {
    let t = d.saturating_sub(1) / 2;
    BigUint::from(4u32).pow(len) / ball_size(len, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(sphere_packing_bound(8, 1), BigUint::from(65536u32));
        assert_eq!(sphere_packing_bound(8, 4), BigUint::from(2621u32));
        assert_eq!(sphere_packing_bound(8, 3), BigUint::from(2621u32));
        assert_eq!(ball_size(8, 8), BigUint::from(65536u32));
    }

    #[test]
    fn matches_float_formula_for_small_lengths() {
        for len in 1..=12u32 {
            for d in 1..=len {
                let t = (d - 1) / 2;
                let mut ball = 0u64;
                for i in 0..=t {
                    let c = (0..i).fold(1u64, |a, j| a * (len - j) as u64 / (j + 1) as u64);
                    ball += c * 3u64.pow(i);
                }
                assert_eq!(sphere_packing_bound(len, d), BigUint::from(4u64.pow(len) / ball));
            }
        }
    }
}
