//! Permutations of `{1..n}`.
//!
//! Products are read left to right: `p.compose(&q)` applies `p` first, so
//! `(p·q)(i) = q(p(i))`. This matches the way braid words are read, and the
//! permutation of a braid word is the left-to-right product of the
//! transpositions of its letters.
//!
//! All public interfaces use 1-based points. Storage is 0-based.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered pair `{i, j}` of points with `1 <= i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    i: usize,
    j: usize,
}

impl Pair {
    /// Builds the unordered pair `{a, b}`; the points may be given in either order.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 {
            return Err(Error::PairOutOfRange { i: a, j: b, n: a.max(b) });
        }
        Ok(Pair { i: a.min(b), j: a.max(b) })
    }

    pub(crate) fn new_unchecked(a: usize, b: usize) -> Self {
        debug_assert!(a != b && a > 0 && b > 0);
        Pair { i: a.min(b), j: a.max(b) }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// Checks that the pair lives on `n` strands.
    pub fn check(&self, n: usize) -> Result<()> {
        if self.j > n {
            Err(Error::PairOutOfRange { i: self.i, j: self.j, n })
        } else {
            Ok(())
        }
    }

    /// All pairs on `n` points in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Pair> {
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| Pair { i, j }))
    }

    /// Parses `"i,j"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected \"i,j\", got {s:?}")))?;
        let a = a.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let b = b.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Pair::new(a, b)
    }

    pub fn key(&self) -> String {
        format!("{},{}", self.i, self.j)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.i, self.j)
    }
}

/// A bijection of `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    // images[i] = image of point i + 1, minus one
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds a permutation from its 1-based image list.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..={n}")));
            }
            seen[img - 1] = true;
            zero_based.push(img - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    /// Builds a permutation from disjoint cycles on `{1..n}`. Each cycle
    /// `(a, b, c)` sends `a -> b -> c -> a`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::InvalidPermutation(format!("point {a} out of range 1..={n}")));
                }
                if touched[a] {
                    return Err(Error::InvalidPermutation(format!("point {a} repeated in cycles")));
                }
                touched[a] = true;
                images[a - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    /// The transposition `(a, b)` in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Permutation::from_cycles(n, &[&[a, b]])
    }

    /// Parses cycle notation such as `"(1,3,2)(4,5,6)"`; `"()"` is the identity.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "()" {
            return Ok(Permutation::identity(n));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("malformed cycle notation {s:?}")))?;
            let points = body
                .0
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(points);
            rest = body.1;
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.images[i]
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(())
    }

    /// Left-to-right product: `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other)?;
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `c · self · c⁻¹` in the left-to-right convention.
    pub fn conjugate_by(&self, c: &Permutation) -> Result<Permutation> {
        self.check_degree(c)?;
        Ok(c.then(self).then(&c.inverse()))
    }

    pub fn pow(&self, m: i64) -> Permutation {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its least point, sorted by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&i| self.apply(i) == i).collect()
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.degree(), self.cycles().iter().map(|c| c.len()).collect())
    }

    /// Smallest `m >= 1` with `self^m = id`.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// Number of inversions, i.e. pairs `i < j` with `p(i) > p(j)`.
    pub fn inversions(&self) -> usize {
        let n = self.degree();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count()
    }

    /// Induced action on unordered pairs: `{i, j} -> {p(i), p(j)}`.
    pub fn pair_action(&self, pair: Pair) -> Result<Pair> {
        pair.check(self.degree())?;
        Ok(self.pair_image(pair))
    }

    pub(crate) fn pair_image(&self, pair: Pair) -> Pair {
        Pair::new_unchecked(self.apply(pair.i), self.apply(pair.j))
    }

    /// The same permutation regarded as an element of `S_m`, `m >= n`, fixing `n+1..m`.
    pub fn extend(&self, m: usize) -> Result<Permutation> {
        if m < self.degree() {
            return Err(Error::Range(format!("cannot embed S_{} into S_{m}", self.degree())));
        }
        let mut images = self.images.clone();
        images.extend(self.degree()..m);
        Ok(Permutation { images })
    }

    /// Every permutation of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations { next: Some((0..n).collect()) }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// Iterator over `S_n`, see [`Permutation::all`].
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut a = current.clone();
        // standard lexicographic successor
        if let Some(k) = (0..a.len().saturating_sub(1)).rev().find(|&k| a[k] < a[k + 1]) {
            let l = (k + 1..a.len()).rev().find(|&l| a[k] < a[l]).unwrap();
            a.swap(k, l);
            a[k + 1..].reverse();
            self.next = Some(a);
        }
        Some(Permutation { images: current })
    }
}

/// Multiset of nontrivial cycle lengths, stored non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CycleType {
    n: usize,
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(n: usize, mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p >= 2);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { n, parts }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.parts.iter().fold(1u64, |acc, &p| acc.lcm(&(p as u64)))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", body.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn compose_reads_left_to_right() {
        let p = cyc(3, "(1,2)");
        let q = cyc(3, "(2,3)");
        assert_eq!(p.compose(&q).unwrap(), cyc(3, "(1,3,2)"));
        assert_eq!(p.compose(&Permutation::identity(3)).unwrap(), p);
        assert!(p.compose(&p).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = Permutation::identity(3).compose(&Permutation::identity(4)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn orders_and_cycle_types() {
        assert_eq!(Permutation::identity(5).order(), 1);
        let alpha = cyc(7, "(1,3,4,2,5,6,7)");
        let beta = cyc(7, "(1,2,3)(4,5,6)");
        assert_eq!(alpha.order(), 7);
        assert_eq!(beta.order(), 3);
        assert_eq!(beta.cycle_type().parts(), &[3, 3]);
        assert_eq!(alpha.cycle_type().parts(), &[7]);
        assert!(Permutation::identity(4).cycle_type().is_trivial());
    }

    #[test]
    fn pair_action_examples() {
        let t = cyc(3, "(1,2)");
        assert_eq!(t.pair_action(Pair::new(1, 3).unwrap()).unwrap(), Pair::new(2, 3).unwrap());
        let t = cyc(5, "(3,4)");
        assert_eq!(t.pair_action(Pair::new(3, 4).unwrap()).unwrap(), Pair::new(3, 4).unwrap());
        let id = Permutation::identity(4);
        for pair in Pair::all(4) {
            assert_eq!(id.pair_action(pair).unwrap(), pair);
        }
        assert!(matches!(id.pair_action(Pair::new(2, 5).unwrap()), Err(Error::PairOutOfRange { .. })));
    }

    #[test]
    fn cycle_notation_round_trips() {
        for s in ["()", "(1,3,2)(4,5,6)", "(1,3,4,2,5,6,7)", "(2,5)"] {
            assert_eq!(cyc(7, s).to_string(), s);
        }
        assert!(Permutation::parse(3, "(1,1)").is_err());
        assert!(Permutation::parse(3, "(1,4)").is_err());
        assert!(Permutation::parse(3, "(1,2").is_err());
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(&[2, 1, 3]).is_ok());
        assert!(Permutation::from_images(&[2, 2, 3]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[]).is_err());
    }

    #[test]
    fn all_enumerates_symmetric_group() {
        assert_eq!(Permutation::all(1).count(), 1);
        assert_eq!(Permutation::all(4).count(), 24);
        let set: std::collections::HashSet<_> = Permutation::all(5).collect();
        assert_eq!(set.len(), 120);
    }

    #[test]
    fn pow_and_inverse() {
        let a = cyc(7, "(1,3,4,2,5,6,7)");
        assert!(a.pow(7).is_identity());
        assert_eq!(a.pow(-1), a.inverse());
        assert_eq!(a.pow(3).compose(&a.pow(-3)).unwrap(), Permutation::identity(7));
    }

    #[test]
    fn inversion_count() {
        assert_eq!(Permutation::identity(4).inversions(), 0);
        assert_eq!(Permutation::from_images(&[4, 3, 2, 1]).unwrap().inversions(), 6);
    }
}
