//! Polynomials over `R_θ`, optionally reduced modulo `xⁿ − 1`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ring::{RingElement, Theta};

/// Default work cap for exhaustive divisibility searches.
pub const DEFAULT_SEARCH_CAP: u64 = 1 << 20;

/// A polynomial `Σ cᵢ xⁱ`. Coefficients are stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    theta: Theta,
    coeffs: Vec<RingElement>,
    modulus: Option<usize>,
}

impl Poly {
    pub fn new(theta: Theta, coeffs: Vec<RingElement>) -> Poly {
        let mut p = Poly { theta, coeffs, modulus: None };
        p.trim();
        p
    }

    /// The class of `coeffs` in `R_θ[x]/(xⁿ − 1)`.
    pub fn modular(theta: Theta, coeffs: &[RingElement], n: usize) -> Poly {
        assert!(n > 0, "modulus length must be positive");
        let mut folded = vec![RingElement::ZERO; n];
        for (i, &c) in coeffs.iter().enumerate() {
            folded[i % n] = folded[i % n].add(c);
        }
        let mut p = Poly { theta, coeffs: folded, modulus: Some(n) };
        p.trim();
        p
    }

    pub fn zero(theta: Theta) -> Poly {
        Poly::new(theta, Vec::new())
    }

    pub fn constant(theta: Theta, c: RingElement) -> Poly {
        Poly::new(theta, vec![c])
    }

    pub fn monomial(theta: Theta, c: RingElement, degree: usize) -> Poly {
        let mut coeffs = vec![RingElement::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::new(theta, coeffs)
    }

    /// `xⁿ − 1` as an ordinary polynomial.
    pub fn x_n_minus_one(theta: Theta, n: usize) -> Poly {
        Poly::monomial(theta, RingElement::ONE, n).sub(&Poly::constant(theta, RingElement::ONE))
    }

    /// `1 + x + ⋯ + x^{n−1}`.
    pub fn all_ones(theta: Theta, n: usize) -> Poly {
        Poly::new(theta, vec![RingElement::ONE; n])
    }

    /// Reads a word `(w0, …, w_{n−1})` as `Σ wᵢ xⁱ` modulo `xⁿ − 1`.
    pub fn from_word(theta: Theta, word: &[RingElement]) -> Poly {
        Poly::modular(theta, word, word.len().max(1))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn theta(&self) -> Theta {
        self.theta
    }

    pub fn modulus(&self) -> Option<usize> {
        self.modulus
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs.get(i).copied().unwrap_or(RingElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<RingElement> {
        self.coeffs.last().copied()
    }

    /// Coefficient vector of length `n`, for use as a codeword.
    pub fn to_word(&self, n: usize) -> Vec<RingElement> {
        let reduced = Poly::modular(self.theta, &self.coeffs, n);
        (0..n).map(|i| reduced.coeff(i)).collect()
    }

    fn with_coeffs(&self, coeffs: Vec<RingElement>) -> Poly {
        match self.modulus {
            Some(n) => Poly::modular(self.theta, &coeffs, n),
            None => Poly::new(self.theta, coeffs),
        }
    }

    fn check_compatible(&self, other: &Poly) {
        assert_eq!(self.theta, other.theta, "polynomials over different rings");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        let len = self.coeffs.len().max(other.coeffs.len());
        self.with_coeffs((0..len).map(|i| self.coeff(i).add(other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(RingElement::ONE.neg()))
    }

    pub fn scale(&self, s: RingElement) -> Poly {
        let ring = self.theta.ring();
        self.with_coeffs(self.coeffs.iter().map(|&c| ring.mul(s, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        let mut coeffs = vec![RingElement::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        self.with_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        if self.is_zero() || other.is_zero() {
            return self.with_coeffs(Vec::new());
        }
        let ring = self.theta.ring();
        let mut out = vec![RingElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(ring.mul(a, b));
            }
        }
        let modulus = self.modulus.or(other.modulus);
        match modulus {
            Some(n) => Poly::modular(self.theta, &out, n),
            None => Poly::new(self.theta, out),
        }
    }

    /// `g*`: the coefficients up to the degree, reversed.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.with_coeffs(self.coeffs.iter().rev().copied().collect()))
    }

    /// The first `v` (in canonical element order) with `g* = v·g`, if any.
    pub fn is_self_reciprocal(&self) -> Result<Option<RingElement>> {
        let star = self.reciprocal()?;
        Ok(RingElement::all().find(|&v| self.scale(v) == star))
    }

    /// Whether `b` (= `self`) divides `a`, with a witness quotient.
    ///
    /// The quotient degree is bounded by `deg a − deg b`, or by `n − 1` when
    /// `options.modulus` is `Some(n)`. Outside the modular setting a divisor
    /// whose leading coefficient is a unit is handled by long division; every
    /// other case is an exhaustive scan over quotients, subject to `options.cap`.
    pub fn divides(&self, a: &Poly, options: &DivOptions) -> Result<Option<Poly>> {
        self.check_compatible(a);
        let b = self;
        let b_deg = b.degree().ok_or(Error::ZeroPolynomial)?;
        let ring = b.theta.ring();
        let (b, a) = match options.modulus {
            Some(n) => (
                Poly::modular(b.theta, &b.coeffs, n),
                Poly::modular(a.theta, &a.coeffs, n),
            ),
            None => (b.clone(), a.clone()),
        };
        if a.is_zero() {
            return Ok(Some(b.with_coeffs(Vec::new())));
        }
        let a_deg = a.degree().expect("nonzero");
        let bound = match options.modulus {
            Some(n) => n - 1,
            None => {
                if a_deg < b_deg {
                    return Ok(None);
                }
                a_deg - b_deg
            }
        };
        let lead = b.leading().ok_or(Error::ZeroPolynomial)?;
        if options.modulus.is_none() {
            if let Some(inv) = ring.inverse(lead) {
                let q = long_division(&b, &a, inv);
                let allowed = !options.z4_only || q.as_ref().is_none_or(|q| q.coeffs.iter().all(|c| c.is_z4()));
                return Ok(q.filter(|_| allowed));
            }
        }
        let alphabet: Vec<RingElement> = if options.z4_only {
            RingElement::z4().collect()
        } else {
            RingElement::all().collect()
        };
        let base = alphabet.len() as u128;
        let needed = base.checked_pow(bound as u32 + 1).unwrap_or(u128::MAX);
        if needed > options.cap as u128 {
            return Err(Error::SearchCapExceeded { needed, cap: options.cap });
        }
        let witness = (0..needed as u64).into_par_iter().find_first(|&idx| {
            let q = quotient_candidate(b.theta, idx, &alphabet, bound + 1, b.modulus);
            b.mul(&q) == a
        });
        Ok(witness.map(|idx| quotient_candidate(b.theta, idx, &alphabet, bound + 1, b.modulus)))
    }
}

fn quotient_candidate(
    theta: Theta,
    mut idx: u64,
    alphabet: &[RingElement],
    len: usize,
    modulus: Option<usize>,
) -> Poly {
    let base = alphabet.len() as u64;
    let coeffs: Vec<_> = (0..len)
        .map(|_| {
            let c = alphabet[(idx % base) as usize];
            idx /= base;
            c
        })
        .collect();
    match modulus {
        Some(n) => Poly::modular(theta, &coeffs, n),
        None => Poly::new(theta, coeffs),
    }
}

fn long_division(b: &Poly, a: &Poly, lead_inverse: RingElement) -> Option<Poly> {
    let ring = b.theta.ring();
    let b_deg = b.degree().expect("nonzero divisor");
    let mut rem = a.coeffs.clone();
    let Some(a_deg) = a.degree() else {
        return Some(Poly::zero(b.theta));
    };
    if a_deg < b_deg {
        return None;
    }
    let mut q = vec![RingElement::ZERO; a_deg - b_deg + 1];
    for k in (0..=a_deg - b_deg).rev() {
        let c = ring.mul(rem[k + b_deg], lead_inverse);
        q[k] = c;
        for (j, &bj) in b.coeffs.iter().enumerate() {
            rem[k + j] = rem[k + j].sub(ring.mul(c, bj));
        }
    }
    rem.iter().all(|c| c.is_zero()).then(|| Poly::new(b.theta, q))
}

/// Settings for [`Poly::divides`].
#[derive(Clone, Debug)]
pub struct DivOptions {
    /// Work in `R_θ[x]/(xⁿ − 1)` with quotients of degree below `n`.
    pub modulus: Option<usize>,
    /// Restrict quotient coefficients to `Z4`.
    pub z4_only: bool,
    pub cap: u64,
}

impl Default for DivOptions {
    fn default() -> Self {
        DivOptions { modulus: None, z4_only: false, cap: DEFAULT_SEARCH_CAP }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let needs_parens = c.a() != 0 && c.b() != 0;
            match (i, *c == RingElement::ONE) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => {}
                _ if needs_parens => write!(f, "({c})")?,
                _ => write!(f, "{c}")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[Tⁱ·word for i = 0, step, 2·step, …]` with `T` the right cyclic shift.
pub fn shifts(word: &[RingElement], step: usize) -> Result<Vec<Vec<RingElement>>> {
    let n = word.len();
    if step == 0 || n == 0 || !n.is_multiple_of(step) {
        return Err(Error::BadIndex { step, n });
    }
    Ok((0..n)
        .step_by(step)
        .map(|k| {
            let mut row = word.to_vec();
            row.rotate_right(k);
            row
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const R2: Theta = Theta::new(2, 0);

    fn el(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    fn p(theta: Theta, cs: &[&str]) -> Poly {
        Poly::new(theta, cs.iter().map(|c| el(c)).collect())
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p(R2, &["1", "2", "3"]).reciprocal().unwrap(), p(R2, &["3", "2", "1"]));
        assert_eq!(p(R2, &["1", "1"]).reciprocal().unwrap(), p(R2, &["1", "1"]));
        assert_eq!(Poly::zero(R2).reciprocal(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn self_reciprocal_examples() {
        assert_eq!(p(R2, &["1", "1"]).is_self_reciprocal().unwrap(), Some(el("1")));
        assert_eq!(p(R2, &["3", "1"]).is_self_reciprocal().unwrap(), Some(el("3")));
        assert_eq!(p(R2, &["1", "2"]).is_self_reciprocal().unwrap(), None);
        assert_eq!(Poly::zero(R2).is_self_reciprocal(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn divisibility_examples() {
        let opts = DivOptions::default();
        let x_minus_one = p(R2, &["3", "1"]);
        let cube = Poly::x_n_minus_one(R2, 3);
        assert_eq!(x_minus_one.divides(&cube, &opts).unwrap(), Some(p(R2, &["1", "1", "1"])));
        assert_eq!(cube.divides(&cube, &opts).unwrap(), Some(Poly::constant(R2, el("1"))));
        let two = Poly::constant(R2, el("2"));
        assert_eq!(two.divides(&Poly::constant(R2, el("1")), &opts).unwrap(), None);
        assert_eq!(Poly::zero(R2).divides(&cube, &opts), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn modular_divisibility_and_cap() {
        let n = 3;
        let b = Poly::modular(R2, &[el("2"), el("2")], n);
        let a = Poly::modular(R2, &[el("2"), RingElement::ZERO, el("2")], n);
        // (2 + 2x)·x^2 = 2x^2 + 2x^3 ≡ 2 + 2x^2
        let q = b.divides(&a, &DivOptions { modulus: Some(n), ..Default::default() }).unwrap().unwrap();
        assert_eq!(b.mul(&q), a);
        let tight = DivOptions { modulus: Some(n), cap: 100, ..Default::default() };
        assert!(matches!(b.divides(&a, &tight), Err(Error::SearchCapExceeded { .. })));
    }

    #[test]
    fn non_unit_leading_coefficient_uses_search() {
        // (1 + 2x)^2 = 1 over Z4, so 1 + 2x divides 1 only with a quotient of degree 1,
        // which the degree bound excludes.
        let b = p(R2, &["1", "2"]);
        let one = Poly::constant(R2, el("1"));
        assert_eq!(b.divides(&one, &DivOptions::default()).unwrap(), None);
        let sq = b.mul(&b);
        assert_eq!(sq, one);
        let target = p(R2, &["2", "2"]);
        let d = p(R2, &["2", "w"]);
        let res = d.divides(&d.mul(&target), &DivOptions::default()).unwrap();
        let q = res.expect("a quotient exists");
        assert_eq!(d.mul(&q), d.mul(&target));
    }

    #[test]
    fn shift_rows() {
        let w = ["1", "2", "3"].map(el);
        assert_eq!(
            shifts(&w, 1).unwrap(),
            vec![w.to_vec(), ["3", "1", "2"].map(el).to_vec(), ["2", "3", "1"].map(el).to_vec()]
        );
        let g = ["1+3w", "1+w", "1+w", "1+3w"].map(el);
        let rows = shifts(&g, 2).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1], ["1+w", "1+3w", "1+3w", "1+w"].map(el).to_vec());
        let c = [el("2+w"); 6];
        assert!(shifts(&c, 3).unwrap().iter().all(|r| r == &c.to_vec()));
        assert_eq!(shifts(&c, 4), Err(Error::BadIndex { step: 4, n: 6 }));
    }

    #[test]
    fn shifting_n_times_is_identity() {
        let w: Vec<_> = (0..7).map(|i| RingElement::from_index(i * 3 % 16)).collect();
        let mut cur = w.clone();
        for _ in 0..7 {
            cur = shifts(&cur, 1).unwrap()[1].clone();
        }
        assert_eq!(cur, w);
    }

    fn poly_strategy(max_len: usize) -> impl Strategy<Value = (usize, Vec<RingElement>)> {
        (0usize..16, proptest::collection::vec((0usize..16).prop_map(RingElement::from_index), 1..max_len))
    }

    proptest! {
        #[test]
        fn reciprocal_of_product((t, f) in poly_strategy(6), g in proptest::collection::vec((0usize..16).prop_map(RingElement::from_index), 1..6)) {
            let theta = Theta::all().nth(t).unwrap();
            let f = Poly::new(theta, f);
            let g = Poly::new(theta, g);
            prop_assume!(!f.is_zero() && !g.is_zero());
            let fg = f.mul(&g);
            prop_assume!(fg.degree() == Some(f.degree().unwrap() + g.degree().unwrap()));
            prop_assert_eq!(fg.reciprocal().unwrap(), f.reciprocal().unwrap().mul(&g.reciprocal().unwrap()));
        }

        #[test]
        fn reciprocal_of_sum((t, f) in poly_strategy(7), g in proptest::collection::vec((0usize..16).prop_map(RingElement::from_index), 1..7)) {
            let theta = Theta::all().nth(t).unwrap();
            let f = Poly::new(theta, f);
            let g = Poly::new(theta, g);
            prop_assume!(!f.is_zero() && !g.is_zero());
            let (f, g) = if f.degree() >= g.degree() { (f, g) } else { (g, f) };
            let tdeg = f.degree().unwrap() - g.degree().unwrap();
            let sum = f.add(&g);
            prop_assume!(sum.degree() == f.degree());
            prop_assert_eq!(sum.reciprocal().unwrap(), f.reciprocal().unwrap().add(&g.reciprocal().unwrap().shift(tdeg)));
        }

        #[test]
        fn division_witness_rechecks((t, b) in poly_strategy(4), q in proptest::collection::vec((0usize..16).prop_map(RingElement::from_index), 1..3)) {
            let theta = Theta::all().nth(t).unwrap();
            let b = Poly::new(theta, b);
            prop_assume!(!b.is_zero());
            let a = b.mul(&Poly::new(theta, q));
            prop_assume!(!a.is_zero() && a.degree() >= b.degree());
            if let Some(w) = b.divides(&a, &DivOptions::default()).unwrap() {
                prop_assert_eq!(b.mul(&w), a);
            }
        }
    }
}
