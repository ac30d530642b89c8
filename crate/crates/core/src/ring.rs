//! Arithmetic in the sixteen rings `R_θ = Z4 + ωZ4` with `ω² = θ`.
//!
//! An element `a + bω` is stored as the single byte `4a + b`, so the derived
//! ordering is the lexicographic order on `(a, b)` and the byte doubles as a
//! table index. Multiplication goes through a per-ring 16×16 table built once.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of elements in every `R_θ`.
pub const ORDER: usize = 16;

/// An element `a + bω` with `a, b ∈ Z4`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RingElement(u8);

impl RingElement {
    pub const ZERO: RingElement = RingElement(0);
    pub const ONE: RingElement = RingElement(4);
    pub const TWO: RingElement = RingElement(8);
    pub const THREE: RingElement = RingElement(12);
    pub const OMEGA: RingElement = RingElement(1);
    pub const TWO_OMEGA: RingElement = RingElement(2);
    pub const TWO_PLUS_TWO_OMEGA: RingElement = RingElement(10);

    /// Builds `a + bω`, reducing both parts mod 4.
    pub const fn new(a: u8, b: u8) -> Self {
        RingElement(((a & 3) << 2) | (b & 3))
    }

    /// Inverse of [`RingElement::index`]. Panics if `i >= 16`.
    pub fn from_index(i: usize) -> Self {
        assert!(i < ORDER, "ring element index {i} out of range");
        RingElement(i as u8)
    }

    pub const fn a(self) -> u8 {
        self.0 >> 2
    }

    pub const fn b(self) -> u8 {
        self.0 & 3
    }

    /// Position of the element in the canonical `(a, b)` order, in `0..16`.
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Membership in `Z4 ⊂ R_θ`.
    pub const fn is_z4(self) -> bool {
        self.b() == 0
    }

    /// All sixteen elements in canonical order.
    pub fn all() -> impl Iterator<Item = RingElement> + Clone {
        (0..ORDER as u8).map(RingElement)
    }

    /// The four elements of `Z4` in canonical order.
    pub fn z4() -> impl Iterator<Item = RingElement> + Clone {
        (0..4).map(|a| RingElement::new(a, 0))
    }

    pub const fn add(self, other: RingElement) -> RingElement {
        RingElement::new(self.a() + other.a(), self.b() + other.b())
    }

    pub const fn neg(self) -> RingElement {
        RingElement::new(4 - self.a(), 4 - self.b())
    }

    pub const fn sub(self, other: RingElement) -> RingElement {
        self.add(other.neg())
    }

    /// Smallest `k ≥ 1` with `k·x = 0`.
    pub const fn additive_order(self) -> u32 {
        let a = self.a();
        let b = self.b();
        if a == 0 && b == 0 {
            1
        } else if a.is_multiple_of(2) && b.is_multiple_of(2) {
            2
        } else {
            4
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints the ASCII grammar: `0`, `3`, `w`, `2w`, `1+w`, `3+2w`.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.a(), self.b());
        let omega = match b {
            0 => None,
            1 => Some("w".to_string()),
            _ => Some(format!("{b}w")),
        };
        match (a, omega) {
            (a, None) => write!(f, "{a}"),
            (0, Some(w)) => f.write_str(&w),
            (a, Some(w)) => write!(f, "{a}+{w}"),
        }
    }
}

/// Parses `a`, `bw`, `a+bw` (terms in either order, `ω` accepted for `w`).
impl FromStr for RingElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == 'ω' { 'w' } else { c })
            .collect();
        if compact.is_empty() {
            return Err(Error::parse(s, "empty ring element"));
        }
        let mut a: Option<u8> = None;
        let mut b: Option<u8> = None;
        for term in compact.split('+') {
            let (digits, is_omega) = match term.strip_suffix('w') {
                Some(rest) => (rest, true),
                None => (term, false),
            };
            let value = if digits.is_empty() && is_omega {
                1
            } else {
                match digits.parse::<u8>() {
                    Ok(v) if v < 4 => v,
                    _ => return Err(Error::parse(s, format!("bad term `{term}`"))),
                }
            };
            let slot = if is_omega { &mut b } else { &mut a };
            if slot.replace(value).is_some() {
                return Err(Error::parse(s, format!("repeated term `{term}`")));
            }
        }
        Ok(RingElement::new(a.unwrap_or(0), b.unwrap_or(0)))
    }
}

/// Parses a vector `(x0, x1, …)`; the parentheses and a trailing comma are optional.
pub fn parse_vector(s: &str) -> Result<Vec<RingElement>> {
    let inner = s.trim();
    let inner = inner.strip_prefix('(').map_or(Ok(inner), |rest| {
        rest.strip_suffix(')').ok_or_else(|| Error::parse(s, "unbalanced parentheses"))
    })?;
    let inner = inner.trim().trim_end_matches(',');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|t| t.trim().parse()).collect()
}

/// Formats a vector in the grammar accepted by [`parse_vector`].
pub fn format_vector(word: &[RingElement]) -> String {
    let parts: Vec<String> = word.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

impl Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The ring parameter `θ = t0 + t1·ω`, i.e. `ω² = θ`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Theta(RingElement);

impl Theta {
    pub const fn new(t0: u8, t1: u8) -> Self {
        Theta(RingElement::new(t0, t1))
    }

    pub const fn from_element(e: RingElement) -> Self {
        Theta(e)
    }

    pub const fn t0(self) -> u8 {
        self.0.a()
    }

    pub const fn t1(self) -> u8 {
        self.0.b()
    }

    pub const fn element(self) -> RingElement {
        self.0
    }

    /// All sixteen parameters in canonical order.
    pub fn all() -> impl Iterator<Item = Theta> + Clone {
        RingElement::all().map(Theta)
    }

    /// The ring `R_θ`.
    pub fn ring(self) -> &'static Ring {
        static RINGS: OnceLock<Vec<Ring>> = OnceLock::new();
        &RINGS.get_or_init(|| Theta::all().map(Ring::build).collect())[self.0.index()]
    }
}

impl fmt::Debug for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "θ={}", self.0)
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Theta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(Theta)
    }
}

/// Multiplication table of one `R_θ`.
#[derive(Clone)]
pub struct Ring {
    theta: Theta,
    mul: [[RingElement; ORDER]; ORDER],
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{}", self.theta)
    }
}

impl Ring {
    fn build(theta: Theta) -> Ring {
        let mut mul = [[RingElement::ZERO; ORDER]; ORDER];
        for x in RingElement::all() {
            for y in RingElement::all() {
                mul[x.index()][y.index()] = product(x, y, theta);
            }
        }
        Ring { theta, mul }
    }

    pub fn theta(&self) -> Theta {
        self.theta
    }

    #[inline]
    pub fn mul(&self, x: RingElement, y: RingElement) -> RingElement {
        self.mul[x.index()][y.index()]
    }

    /// Row of the multiplication table for a fixed left factor.
    #[inline]
    pub fn mul_row(&self, x: RingElement) -> &[RingElement; ORDER] {
        &self.mul[x.index()]
    }

    pub fn is_unit(&self, x: RingElement) -> bool {
        self.inverse(x).is_some()
    }

    pub fn inverse(&self, x: RingElement) -> Option<RingElement> {
        RingElement::all().find(|&y| self.mul(x, y) == RingElement::ONE)
    }

    pub fn pow(&self, x: RingElement, mut e: u32) -> RingElement {
        let mut acc = RingElement::ONE;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Usual inner product `Σ uᵢvᵢ`.
    pub fn inner_product(&self, u: &[RingElement], v: &[RingElement]) -> Result<RingElement> {
        if u.len() != v.len() {
            return Err(Error::Shape(format!(
                "inner product of lengths {} and {}",
                u.len(),
                v.len()
            )));
        }
        Ok(u.iter()
            .zip(v)
            .fold(RingElement::ZERO, |acc, (&x, &y)| acc.add(self.mul(x, y))))
    }

    pub fn classify(&self) -> Classification {
        let mut units = Vec::new();
        let mut zero_divisors = Vec::new();
        let mut multiplicative_order = [None; ORDER];
        for x in RingElement::all() {
            if self.is_unit(x) {
                units.push(x);
                let order = (1..=ORDER as u32)
                    .find(|&k| self.pow(x, k) == RingElement::ONE)
                    .expect("unit group is finite");
                multiplicative_order[x.index()] = Some(order);
            } else {
                zero_divisors.push(x);
            }
        }
        Classification {
            theta: self.theta,
            units,
            zero_divisors,
            additive_order: std::array::from_fn(|i| RingElement::from_index(i).additive_order()),
            multiplicative_order,
        }
    }
}

fn product(x: RingElement, y: RingElement, theta: Theta) -> RingElement {
    let (a, b, c, d) = (x.a() as u32, x.b() as u32, y.a() as u32, y.b() as u32);
    let (t0, t1) = (theta.t0() as u32, theta.t1() as u32);
    RingElement::new(
        ((a * c + b * d * t0) % 4) as u8,
        ((a * d + b * c + b * d * t1) % 4) as u8,
    )
}

/// Unit / zero-divisor split and element orders of one ring.
///
/// `0` is listed among the zero divisors.
#[derive(Debug, Clone)]
pub struct Classification {
    pub theta: Theta,
    pub units: Vec<RingElement>,
    pub zero_divisors: Vec<RingElement>,
    additive_order: [u32; ORDER],
    multiplicative_order: [Option<u32>; ORDER],
}

impl Classification {
    pub fn additive_order(&self, x: RingElement) -> u32 {
        self.additive_order[x.index()]
    }

    pub fn multiplicative_order(&self, x: RingElement) -> Result<u32> {
        self.multiplicative_order[x.index()].ok_or(Error::NotAUnit(x))
    }

    pub fn is_unit(&self, x: RingElement) -> bool {
        self.multiplicative_order[x.index()].is_some()
    }

    /// `(order, count)` pairs of the additive group restricted to the zero divisors.
    pub fn zero_divisor_additive_profile(&self) -> Vec<(u32, usize)> {
        profile(self.zero_divisors.iter().map(|&x| self.additive_order(x)))
    }

    /// `(order, count)` pairs of the unit group.
    pub fn unit_multiplicative_profile(&self) -> Vec<(u32, usize)> {
        profile(self.units.iter().filter_map(|&x| self.multiplicative_order[x.index()]))
    }
}

fn profile(orders: impl Iterator<Item = u32>) -> Vec<(u32, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for o in orders {
        *counts.entry(o).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}

/// A vector over `Z4`, the codomain of the Gray map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Z4Vector(pub Vec<u8>);

/// Gray map `a + bω ↦ (b, a + b)`, applied coordinatewise.
pub fn gray_map(word: &[RingElement]) -> Z4Vector {
    Z4Vector(
        word.iter()
            .flat_map(|x| [x.b(), (x.a() + x.b()) % 4])
            .collect(),
    )
}

/// Inner product over `Z4`.
pub fn z4_inner_product(u: &[u8], v: &[u8]) -> u8 {
    (u.iter().zip(v).map(|(&x, &y)| x as u32 * y as u32).sum::<u32>() % 4) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    #[test]
    fn vector_grammar() {
        let v = parse_vector("(3+w, 3+w, 1,)").unwrap();
        assert_eq!(v, vec![el("3+w"), el("3+w"), el("1")]);
        assert_eq!(format_vector(&v), "(3+w,3+w,1)");
        assert_eq!(parse_vector("()").unwrap(), vec![]);
        assert!(parse_vector("(1,2").is_err());
        assert!(matches!(parse_vector("(1,5)"), Err(Error::Parse { token, .. }) if token == "5"));
    }

    #[test]
    fn addition_examples() {
        for x in RingElement::all() {
            assert_eq!(RingElement::ZERO.add(x), x);
            assert_eq!(x.add(x.neg()), RingElement::ZERO);
        }
        assert_eq!(el("2+2w").add(el("2+2w")), RingElement::ZERO);
        assert_eq!(el("1+3w").add(el("1+w")), el("2"));
    }

    #[test]
    fn multiplication_examples() {
        let r2 = Theta::new(2, 0).ring();
        let r22 = Theta::new(2, 2).ring();
        assert_eq!(r2.mul(RingElement::OMEGA, RingElement::OMEGA), el("2"));
        assert_eq!(r22.mul(RingElement::OMEGA, RingElement::OMEGA), el("2+2w"));
        assert_eq!(r2.mul(el("1+2w"), el("1+2w")), RingElement::ONE);
    }

    #[test]
    fn ring_axioms_all_thetas() {
        for theta in Theta::all() {
            let r = theta.ring();
            for x in RingElement::all() {
                assert_eq!(r.mul(RingElement::ONE, x), x);
                for y in RingElement::all() {
                    assert_eq!(r.mul(x, y), r.mul(y, x), "{theta:?}");
                    for z in RingElement::all() {
                        assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)));
                        assert_eq!(r.mul(x, y.add(z)), r.mul(x, y).add(r.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn r2_structure() {
        let c = Theta::new(2, 0).ring().classify();
        assert_eq!(c.units.len(), 8);
        assert_eq!(c.zero_divisors.len(), 8);
        let shifted: std::collections::BTreeSet<_> =
            c.zero_divisors.iter().map(|z| z.add(RingElement::ONE)).collect();
        assert_eq!(shifted, c.units.iter().copied().collect());
        for &z in &c.zero_divisors {
            let u = z.add(RingElement::ONE);
            assert_eq!(c.multiplicative_order(u).unwrap(), c.additive_order(z), "{z}");
        }
        assert_eq!(c.zero_divisor_additive_profile(), vec![(1, 1), (2, 3), (4, 4)]);
        assert_eq!(c.unit_multiplicative_profile(), vec![(1, 1), (2, 3), (4, 4)]);
        assert_eq!(c.additive_order(el("2+2w")), 2);
        assert_eq!(
            c.multiplicative_order(el("2")),
            Err(Error::NotAUnit(el("2")))
        );
    }

    #[test]
    fn special_elements_in_every_ring() {
        let small = ["0", "2", "2w", "2+2w"].map(el);
        let involutions = ["1", "3", "1+2w", "3+2w"].map(el);
        for theta in Theta::all() {
            let r = theta.ring();
            for x in small {
                assert!(x.additive_order() <= 2);
            }
            for u in involutions {
                assert_eq!(r.mul(u, u), RingElement::ONE, "{theta:?} {u}");
            }
        }
    }

    #[test]
    fn inner_products_and_gray_map() {
        let r2 = Theta::new(2, 0).ring();
        let row1: Vec<_> = ["1", "0", "0", "0", "1", "1+2w", "1+2w", "0"].map(el).to_vec();
        let row2: Vec<_> = ["0", "1", "0", "0", "3+2w", "1", "0", "1+2w"].map(el).to_vec();
        assert_eq!(r2.inner_product(&row1, &row1).unwrap(), RingElement::ZERO);
        assert_eq!(r2.inner_product(&row1, &row2).unwrap(), RingElement::ZERO);
        assert_eq!(r2.inner_product(&row1, &[RingElement::ZERO; 8]).unwrap(), RingElement::ZERO);
        assert!(matches!(r2.inner_product(&row1, &row2[..3]), Err(Error::Shape(_))));

        assert_eq!(gray_map(&[RingElement::ZERO]).0, vec![0, 0]);
        assert_eq!(gray_map(&[el("1+3w")]).0, vec![3, 0]);
        assert_eq!(gray_map(&[el("2"), el("w")]).0, vec![0, 2, 1, 1]);
        let images: std::collections::HashSet<_> =
            RingElement::all().map(|x| gray_map(&[x])).collect();
        assert_eq!(images.len(), 16);
    }

    #[test]
    fn element_grammar() {
        for x in RingElement::all() {
            assert_eq!(x.to_string().parse::<RingElement>().unwrap(), x);
        }
        assert_eq!(el("2w+3"), RingElement::new(3, 2));
        assert_eq!(el("ω"), RingElement::OMEGA);
        assert_eq!(el(" 1 + w "), RingElement::new(1, 1));
        for bad in ["", "4", "1+", "w+w", "x", "2+3+w"] {
            assert!(bad.parse::<RingElement>().is_err(), "{bad}");
        }
    }
}
