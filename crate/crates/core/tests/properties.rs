use proptest::prelude::*;
use rtheta::code::{brute_force_dual, span_closure, DEFAULT_DUAL_CAP};
use rtheta::dnamap::Dinucleotide;
use rtheta::verify::default_table;
use rtheta::{Poly, RingElement, Theta};

fn element() -> impl Strategy<Value = RingElement> {
    (0usize..16).prop_map(RingElement::from_index)
}

fn theta() -> impl Strategy<Value = Theta> {
    (0usize..16).prop_map(|i| Theta::all().nth(i).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn encode_decode_round_trip(t in theta(), w in proptest::collection::vec(element(), 0..16)) {
        let table = default_table(t).unwrap();
        let dna = table.encode(&w);
        prop_assert_eq!(dna.len(), 2 * w.len());
        prop_assert_eq!(table.decode(&dna).unwrap(), w);
    }

    #[test]
    fn complement_is_lambda_shift(t in theta(), w in proptest::collection::vec(element(), 1..16)) {
        let table = default_table(t).unwrap();
        let shifted: Vec<_> = w.iter().map(|x| x.add(table.lambda())).collect();
        prop_assert_eq!(table.encode(&w).complement(), table.encode(&shifted));
        prop_assert_eq!(table.phi(RingElement::ZERO), Dinucleotide::AA);
    }

    #[test]
    fn gau_distance_equals_dna_hamming(t in theta(), pair in (1usize..12).prop_flat_map(|n| (
        proptest::collection::vec(element(), n),
        proptest::collection::vec(element(), n),
    ))) {
        let table = default_table(t).unwrap();
        let (x, y) = pair;
        let gau = table.gau_distance(&x, &y).unwrap();
        prop_assert_eq!(gau, table.encode(&x).hamming(&table.encode(&y)).unwrap());
        let d_h = x.iter().zip(&y).filter(|(a, b)| a != b).count() as u32;
        prop_assert!(d_h <= gau && gau <= 2 * d_h);
    }

    #[test]
    fn span_is_closed_and_frobenius(t in theta(), gens in proptest::collection::vec(proptest::collection::vec(element(), 3), 1..3)) {
        let code = span_closure(t, 3, &gens, 1 << 12).unwrap();
        let ring = t.ring();
        for g in &gens {
            prop_assert!(code.contains(g));
        }
        let words: Vec<_> = code.codewords().take(64).collect();
        for u in &words {
            for &s in &[RingElement::OMEGA, RingElement::new(1, 1)] {
                let su: Vec<_> = u.iter().map(|&x| ring.mul(s, x)).collect();
                prop_assert!(code.contains(&su));
            }
            let sum: Vec<_> = u.iter().zip(&words[0]).map(|(a, b)| a.add(*b)).collect();
            prop_assert!(code.contains(&sum));
        }
        let dual = brute_force_dual(&code, DEFAULT_DUAL_CAP).unwrap();
        prop_assert_eq!(code.size() * dual.size(), 16usize.pow(3));
    }

    #[test]
    fn reciprocal_is_an_involution(t in theta(), c in proptest::collection::vec(element(), 1..8)) {
        let p = Poly::new(t, c);
        prop_assume!(!p.is_zero() && !p.coeff(0).is_zero());
        prop_assert_eq!(p.reciprocal().unwrap().reciprocal().unwrap(), p);
    }
}
