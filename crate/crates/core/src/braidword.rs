//! Braid words in the Artin generators and the abelianized pure braid lattice.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::{Pair, Permutation};

/// 0-based lexicographic index of the pair `{i, j}`, `i < j`, among all pairs on `n` points.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * (2 * n - i) / 2 + (j - i) - 1
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Integer coefficients indexed by the pairs `{i, j}`, `1 <= i < j <= n`.
///
/// The coordinate at `{i, j}` is the exponent of the generator `A_{i,j}` of
/// the free abelian group `P_n / [P_n, P_n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairVector {
    n: usize,
    coeffs: Vec<i64>,
}

impl PairVector {
    pub fn zero(n: usize) -> Self {
        PairVector { n, coeffs: vec![0; pair_count(n)] }
    }

    /// Builds a vector from coefficients listed in lexicographic pair order.
    pub fn from_coeffs(n: usize, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != pair_count(n) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coefficients for n = {n}, got {}",
                pair_count(n),
                coeffs.len()
            )));
        }
        Ok(PairVector { n, coeffs })
    }

    /// Builds a vector from `(i, j, coeff)` triples; repeated pairs accumulate.
    pub fn from_terms(n: usize, terms: &[(usize, usize, i64)]) -> Result<Self> {
        let mut v = PairVector::zero(n);
        for &(i, j, c) in terms {
            let p = Pair::new(i, j)?;
            p.check(n)?;
            v.coeffs[pair_index(n, p.i(), p.j())] += c;
        }
        Ok(v)
    }

    /// The basis vector of `A_{i,j}`.
    pub fn basis(n: usize, pair: Pair) -> Result<Self> {
        PairVector::from_terms(n, &[(pair.i(), pair.j(), 1)])
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn get(&self, pair: Pair) -> i64 {
        self.coeffs[pair_index(self.n, pair.i(), pair.j())]
    }

    pub fn set(&mut self, pair: Pair, value: i64) {
        let k = pair_index(self.n, pair.i(), pair.j());
        self.coeffs[k] = value;
    }

    pub(crate) fn add_at(&mut self, pair: Pair, delta: i64) {
        let k = pair_index(self.n, pair.i(), pair.j());
        self.coeffs[k] += delta;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_degree(&self, other: &PairVector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &PairVector) -> Result<PairVector> {
        self.check_degree(other)?;
        Ok(self.plus(other))
    }

    pub(crate) fn plus(&self, other: &PairVector) -> PairVector {
        PairVector {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &PairVector) -> Result<PairVector> {
        self.check_degree(other)?;
        Ok(self.plus(&other.neg()))
    }

    pub fn neg(&self) -> PairVector {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> PairVector {
        PairVector { n: self.n, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `ρ(π)(v)`: the coordinate at `Q` is `v` at `π(Q)`.
    ///
    /// This is how conjugation by an element with permutation `π` acts on the
    /// pure part: `g · A^v · g⁻¹ = A^{ρ(π)(v)}`.
    pub fn permute(&self, p: &Permutation) -> Result<PairVector> {
        if p.degree() != self.n {
            return Err(Error::DegreeMismatch { left: p.degree(), right: self.n });
        }
        Ok(self.permute_unchecked(p))
    }

    pub(crate) fn permute_unchecked(&self, p: &Permutation) -> PairVector {
        let mut out = PairVector::zero(self.n);
        for (k, pair) in Pair::all(self.n).enumerate() {
            out.coeffs[k] = self.get(p.pair_image(pair));
        }
        out
    }

    /// Nonzero entries in pair order.
    pub fn terms(&self) -> Vec<(Pair, i64)> {
        Pair::all(self.n).zip(self.coeffs.iter().copied()).filter(|&(_, c)| c != 0).collect()
    }

    /// The same vector on `m >= n` strands, zero on pairs touching the new strands.
    pub fn extend(&self, m: usize) -> Result<PairVector> {
        if m < self.n {
            return Err(Error::Range(format!("cannot embed {} strands into {m}", self.n)));
        }
        let mut out = PairVector::zero(m);
        for (pair, c) in self.terms() {
            out.set(pair, c);
        }
        Ok(out)
    }

    /// Parses the map form `{"i,j": c, ...}`.
    pub fn from_map(n: usize, map: &BTreeMap<String, i64>) -> Result<Self> {
        let mut v = PairVector::zero(n);
        for (k, &c) in map {
            let pair = Pair::parse(k)?;
            pair.check(n)?;
            v.add_at(pair, c);
        }
        Ok(v)
    }

    pub fn to_map(&self) -> BTreeMap<String, i64> {
        self.terms().into_iter().map(|(p, c)| (p.key(), c)).collect()
    }
}

impl fmt::Display for PairVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let body: Vec<String> = terms.iter().map(|(p, c)| format!("{p}:{c}")).collect();
        f.write_str(&body.join(", "))
    }
}

impl Serialize for PairVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        // keep pair order rather than string order
        let terms = self.terms();
        let mut m = s.serialize_map(Some(terms.len()))?;
        for (p, c) in terms {
            m.serialize_entry(&p.key(), &c)?;
        }
        m.end()
    }
}

/// A word in `σ_1, …, σ_{n-1}`: letter `+k` is `σ_k`, letter `-k` is `σ_k⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Range("strand count must be at least 1".into()));
        }
        for &e in &letters {
            if e == 0 || e.unsigned_abs() as usize >= n {
                return Err(Error::InvalidLetter { letter: e, n });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    /// Parses whitespace-separated nonzero integers, e.g. `"2 -1 5 -4"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|t| i64::from_str(t).map_err(|e| Error::Parse(format!("letter {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(n, letters)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch { left: self.n, right: other.n });
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { n: self.n, letters }
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord { n: self.n, letters: self.letters.iter().rev().map(|e| -e).collect() }
    }

    /// `self` repeated `m` times; negative `m` repeats the inverse.
    pub fn power(&self, m: i64) -> BraidWord {
        let base = if m < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * m.unsigned_abs() as usize);
        for _ in 0..m.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { n: self.n, letters }
    }

    /// Cancels adjacent `k, -k` until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i64> = Vec::with_capacity(self.letters.len());
        for &e in &self.letters {
            if out.last() == Some(&-e) {
                out.pop();
            } else {
                out.push(e);
            }
        }
        BraidWord { n: self.n, letters: out }
    }

    /// Left-to-right product of the transpositions `(k, k+1)`.
    pub fn underlying_permutation(&self) -> Permutation {
        // order[pos] = strand currently at pos
        let mut order: Vec<usize> = (1..=self.n).collect();
        for &e in &self.letters {
            let k = e.unsigned_abs() as usize;
            order.swap(k - 1, k);
        }
        // strand order[pos] ends at pos + 1
        let mut images = vec![0; self.n];
        for (pos, &strand) in order.iter().enumerate() {
            images[strand - 1] = pos + 1;
        }
        Permutation::from_images(&images).expect("strand sweep yields a bijection")
    }

    /// Image of a pure word in `P_n / [P_n, P_n]`.
    ///
    /// Strands are labelled by their starting positions. Each letter `±k`
    /// crosses the strands currently at positions `k, k+1` and adds `±1` to
    /// their pair; every full twist of two strands contributes two crossings.
    pub fn linking_vector(&self) -> Result<PairVector> {
        let mut order: Vec<usize> = (1..=self.n).collect();
        let mut twice = PairVector::zero(self.n);
        for &e in &self.letters {
            let k = e.unsigned_abs() as usize;
            twice.add_at(Pair::new_unchecked(order[k - 1], order[k]), e.signum());
            order.swap(k - 1, k);
        }
        if order.iter().enumerate().any(|(pos, &s)| s != pos + 1) {
            return Err(Error::NotPure);
        }
        let mut coeffs = Vec::with_capacity(twice.coeffs.len());
        for c in twice.coeffs {
            assert!(c % 2 == 0, "odd crossing count between strands of a pure braid");
            coeffs.push(c / 2);
        }
        Ok(PairVector { n: self.n, coeffs })
    }

    /// The same word on `m >= n` strands.
    pub fn extend(&self, m: usize) -> Result<BraidWord> {
        if m < self.n {
            return Err(Error::Range(format!("cannot embed {} strands into {m}", self.n)));
        }
        Ok(BraidWord { n: m, letters: self.letters.clone() })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.letters.iter().map(|e| e.to_string()).collect();
        f.write_str(&body.join(" "))
    }
}

/// Word for `A_{i,j} = σ_{j-1} ⋯ σ_{i+1} σ_i² σ_{i+1}⁻¹ ⋯ σ_{j-1}⁻¹`.
pub fn generator_word(n: usize, pair: Pair) -> Result<BraidWord> {
    pair.check(n)?;
    let (i, j) = (pair.i() as i64, pair.j() as i64);
    let mut letters: Vec<i64> = (i + 1..j).rev().collect();
    letters.extend([i, i]);
    letters.extend((i + 1..j).map(|k| -k));
    BraidWord::new(n, letters)
}
