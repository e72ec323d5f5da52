//! Elements of `B_n / [P_n, P_n]` in normal form.
//!
//! An element is stored as a pair `(π, v)` standing for `A^v · L(π)`, where
//! `A^v = ∏ A_{i,j}^{v_{i,j}}` and `L` is a fixed set-theoretic section
//! `S_n → B_n`. The default section is [`Section::Canonical`]; the other
//! sections exist so that section-independent answers can be checked.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braidword::{generator_word, BraidWord, PairVector};
use crate::error::{Error, Result};
use crate::permutation::{Pair, Permutation};

/// A deterministic lift of permutations to braid words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Section {
    /// Bubble sort scanning positions `1..n-1` left to right, positive letters.
    #[default]
    Canonical,
    /// Bubble sort scanning positions `n-1..1` right to left, positive letters.
    ReverseScan,
    /// The canonical lift with every letter inverted.
    Negative,
}

impl Section {
    pub const ALL: [Section; 3] = [Section::Canonical, Section::ReverseScan, Section::Negative];

    pub fn lift(self, p: &Permutation) -> BraidWord {
        match self {
            Section::Canonical => bubble_lift(p, false),
            Section::ReverseScan => bubble_lift(p, true),
            Section::Negative => {
                let w = bubble_lift(p, false);
                BraidWord::new(w.degree(), w.letters().iter().map(|e| -e).collect())
                    .expect("negated letters stay in range")
            }
        }
    }
}

fn bubble_lift(p: &Permutation, reverse: bool) -> BraidWord {
    let n = p.degree();
    // order[pos] = 0-based strand at pos; strand s must end at p(s)
    let mut order: Vec<usize> = (0..n).collect();
    let mut letters = Vec::with_capacity(p.inversions());
    let positions: Vec<usize> = if reverse {
        (0..n.saturating_sub(1)).rev().collect()
    } else {
        (0..n.saturating_sub(1)).collect()
    };
    loop {
        let mut swapped = false;
        for &pos in &positions {
            if p.apply0(order[pos]) > p.apply0(order[pos + 1]) {
                order.swap(pos, pos + 1);
                letters.push(pos as i64 + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    BraidWord::new(n, letters).expect("bubble sort letters are in range")
}

/// The canonical lift `L(π)`: a positive word of length `inv(π)`.
pub fn canonical_lift(p: &Permutation) -> BraidWord {
    Section::Canonical.lift(p)
}

/// Order of an element of the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(k) => s.serialize_u64(*k),
            Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// `(π, v)` standing for `A^v · L(π)` relative to some section.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotientElement {
    perm: Permutation,
    vec: PairVector,
}

/// Arithmetic in `B_n / [P_n, P_n]` relative to a chosen section.
///
/// [`QuotientElement`]'s own methods use the canonical section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Quotient {
    section: Section,
}

impl Quotient {
    pub fn new(section: Section) -> Self {
        Quotient { section }
    }

    pub fn section(&self) -> Section {
        self.section
    }

    pub fn lift(&self, p: &Permutation) -> BraidWord {
        self.section.lift(p)
    }

    pub fn normalize(&self, w: &BraidWord) -> QuotientElement {
        let perm = w.underlying_permutation();
        let vec = w
            .then(&self.lift(&perm).invert())
            .linking_vector()
            .expect("w · L(π)⁻¹ is pure");
        QuotientElement { perm, vec }
    }

    /// A word representing `g`: generator words for the pure part, then the lift.
    pub fn to_word(&self, g: &QuotientElement) -> BraidWord {
        let n = g.degree();
        let mut letters: Vec<i64> = Vec::new();
        for (pair, c) in g.vec.terms() {
            let a = generator_word(n, pair).expect("pair is in range");
            letters.extend_from_slice(a.power(c).letters());
        }
        letters.extend_from_slice(self.lift(&g.perm).letters());
        BraidWord::new(n, letters).expect("letters are in range")
    }

    /// `c(π₁, π₂)`, the pure element `L(π₁) L(π₂) L(π₁π₂)⁻¹`.
    pub fn cocycle(&self, p1: &Permutation, p2: &Permutation) -> PairVector {
        let p12 = p1.then(p2);
        self.lift(p1)
            .then(&self.lift(p2))
            .then(&self.lift(&p12).invert())
            .linking_vector()
            .expect("cocycle word is pure")
    }

    pub fn mul(&self, g: &QuotientElement, h: &QuotientElement) -> Result<QuotientElement> {
        g.check_degree(h)?;
        Ok(self.mul_unchecked(g, h))
    }

    fn mul_unchecked(&self, g: &QuotientElement, h: &QuotientElement) -> QuotientElement {
        let perm = g.perm.then(&h.perm);
        let mut vec = g.vec.plus(&h.vec.permute_unchecked(&g.perm));
        if !g.perm.is_identity() && !h.perm.is_identity() {
            vec = vec.plus(&self.cocycle(&g.perm, &h.perm));
        }
        QuotientElement { perm, vec }
    }

    pub fn inv(&self, g: &QuotientElement) -> QuotientElement {
        // g · L(π⁻¹) = A^u, so g⁻¹ = L(π⁻¹) · A^{-u} = A^{-ρ(π⁻¹)(u)} · L(π⁻¹)
        let pinv = g.perm.inverse();
        let u = g.vec.plus(&self.cocycle(&g.perm, &pinv));
        QuotientElement { vec: u.permute_unchecked(&pinv).neg(), perm: pinv }
    }

    pub fn pow(&self, g: &QuotientElement, m: i64) -> QuotientElement {
        let base = if m < 0 { self.inv(g) } else { g.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = QuotientElement::identity(g.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_unchecked(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul_unchecked(&sq, &sq);
            }
        }
        acc
    }

    /// `c · g · c⁻¹`.
    pub fn conj(&self, g: &QuotientElement, c: &QuotientElement) -> Result<QuotientElement> {
        g.check_degree(c)?;
        Ok(self.mul_unchecked(&self.mul_unchecked(c, g), &self.inv(c)))
    }

    pub fn element_order(&self, g: &QuotientElement) -> Order {
        let k = g.perm.order();
        if self.pow(g, k as i64).is_identity() {
            Order::Finite(k)
        } else {
            Order::Infinite
        }
    }

    /// The pair `P` with `g · A_{i,j} · g⁻¹ = A_P`, computed by conjugating the basis vector.
    pub fn action_on_basis(&self, g: &QuotientElement, pair: Pair) -> Result<Pair> {
        let n = g.degree();
        let a = QuotientElement::pure(PairVector::basis(n, pair)?);
        let image = self.conj(&a, g)?;
        let terms = image.vec.terms();
        match terms.as_slice() {
            [(p, 1)] => Ok(*p),
            _ => unreachable!("conjugate of a basis vector is a basis vector"),
        }
    }

    /// Re-expresses `g` (normal form for `self`) in the normal form of `other`.
    pub fn translate(&self, g: &QuotientElement, other: &Quotient) -> QuotientElement {
        other.normalize(&self.to_word(g))
    }
}

impl QuotientElement {
    pub fn identity(n: usize) -> Self {
        QuotientElement { perm: Permutation::identity(n), vec: PairVector::zero(n) }
    }

    pub fn new(perm: Permutation, vec: PairVector) -> Result<Self> {
        if perm.degree() != vec.degree() {
            return Err(Error::DegreeMismatch { left: perm.degree(), right: vec.degree() });
        }
        Ok(QuotientElement { perm, vec })
    }

    /// The pure element `A^v`.
    pub fn pure(vec: PairVector) -> Self {
        QuotientElement { perm: Permutation::identity(vec.degree()), vec }
    }

    /// `L(π)` with zero pure part.
    pub fn lift(perm: Permutation) -> Self {
        let n = perm.degree();
        QuotientElement { perm, vec: PairVector::zero(n) }
    }

    pub fn from_word(w: &BraidWord) -> Self {
        Quotient::default().normalize(w)
    }

    /// Parses a word in the text grammar and normalizes it.
    pub fn parse_word(n: usize, s: &str) -> Result<Self> {
        Ok(QuotientElement::from_word(&BraidWord::parse(n, s)?))
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn vec(&self) -> &PairVector {
        &self.vec
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.vec.is_zero()
    }

    pub fn is_pure(&self) -> bool {
        self.perm.is_identity()
    }

    fn check_degree(&self, other: &QuotientElement) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(())
    }

    pub fn mul(&self, other: &QuotientElement) -> Result<QuotientElement> {
        Quotient::default().mul(self, other)
    }

    pub fn inv(&self) -> QuotientElement {
        Quotient::default().inv(self)
    }

    pub fn pow(&self, m: i64) -> QuotientElement {
        Quotient::default().pow(self, m)
    }

    /// `c · self · c⁻¹`.
    pub fn conj(&self, c: &QuotientElement) -> Result<QuotientElement> {
        Quotient::default().conj(self, c)
    }

    pub fn element_order(&self) -> Order {
        Quotient::default().element_order(self)
    }

    /// The pair `P` with `self · A_{i,j} · self⁻¹ = A_P`, i.e. `perm⁻¹` applied to the pair.
    pub fn action_on_basis(&self, pair: Pair) -> Result<Pair> {
        self.perm.inverse().pair_action(pair)
    }

    pub fn to_word(&self) -> BraidWord {
        Quotient::default().to_word(self)
    }

    /// The image of `self` under `B_n → B_m`, `m >= n`, adding straight strands on the right.
    pub fn extend(&self, m: usize) -> Result<QuotientElement> {
        // positive lifts of permutations fixing n+1..m only use σ_1..σ_{n-1}
        Ok(QuotientElement { perm: self.perm.extend(m)?, vec: self.vec.extend(m)? })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("element serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.perm, self.vec)
    }
}

#[derive(Serialize)]
struct ElementOut<'a> {
    n: usize,
    perm: Vec<usize>,
    vec: &'a PairVector,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementIn {
    n: usize,
    perm: Vec<usize>,
    #[serde(default)]
    vec: BTreeMap<String, i64>,
}

impl Serialize for QuotientElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementOut { n: self.degree(), perm: self.perm.images(), vec: &self.vec }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuotientElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ElementIn::deserialize(d)?;
        if raw.perm.len() != raw.n {
            return Err(D::Error::custom(format!("perm has {} entries but n = {}", raw.perm.len(), raw.n)));
        }
        let perm = Permutation::from_images(&raw.perm).map_err(D::Error::custom)?;
        let vec = PairVector::from_map(raw.n, &raw.vec).map_err(D::Error::custom)?;
        Ok(QuotientElement { perm, vec })
    }
}
