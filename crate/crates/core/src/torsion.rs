//! Finite-order elements: the braids `α_{r,k}` and `δ_{r,k}`, products of
//! `δ` blocks, and deciding whether a permutation lifts to a finite-order element.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::braidword::{BraidWord, PairVector};
use crate::error::{Error, Result};
use crate::orbits::pair_orbits;
use crate::permutation::{Pair, Permutation};
use crate::quotient::QuotientElement;

/// Odd block sizes `3 <= k_1 <= … <= k_s` with `Σ k_i <= n`.
///
/// Block `l` occupies the strands `K_{l-1}+1 ..= K_l` where `K_l = k_1 + … + k_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockSpec {
    n: usize,
    blocks: Vec<usize>,
}

impl BlockSpec {
    pub fn new(n: usize, blocks: Vec<usize>) -> Result<Self> {
        for &k in &blocks {
            if k < 3 || k % 2 == 0 {
                return Err(Error::InvalidBlockSpec(format!("block {k} is not an odd integer >= 3")));
            }
        }
        if blocks.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidBlockSpec(format!("blocks {blocks:?} are not non-decreasing")));
        }
        let total: usize = blocks.iter().sum();
        if total > n {
            return Err(Error::InvalidBlockSpec(format!("blocks sum to {total} > n = {n}")));
        }
        Ok(BlockSpec { n, blocks })
    }

    /// Parses `"3,3,5"`; the empty string gives no blocks.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let blocks = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| usize::from_str(t).map_err(|e| Error::InvalidBlockSpec(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        BlockSpec::new(n, blocks)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// `K_{l-1}` for each block `l`, i.e. the number of strands before it.
    pub fn offsets(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, &k| {
                let start = *acc;
                *acc += k;
                Some(start)
            })
            .collect()
    }

    pub fn support(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn lcm(&self) -> u64 {
        self.blocks.iter().fold(1u64, |acc, &k| acc.lcm(&(k as u64)))
    }

    /// `θ`: the product of the cycles `(K+1, K+2, …, K+k)` over the blocks.
    pub fn theta(&self) -> Permutation {
        let cycles: Vec<Vec<usize>> = self
            .offsets()
            .iter()
            .zip(&self.blocks)
            .map(|(&off, &k)| (off + 1..=off + k).collect())
            .collect();
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(self.n, &refs).expect("blocks are disjoint and in range")
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.blocks.iter().map(|k| k.to_string()).collect();
        f.write_str(&body.join(","))
    }
}

/// `σ_{r+1} σ_{r+2} ⋯ σ_{r+k-1}`.
pub fn alpha_word(r: usize, k: usize, n: usize) -> Result<BraidWord> {
    if k < 2 || r + k > n {
        return Err(Error::Range(format!("alpha needs k >= 2 and r + k <= n, got r = {r}, k = {k}, n = {n}")));
    }
    BraidWord::new(n, (r + 1..r + k).map(|i| i as i64).collect())
}

pub fn alpha(r: usize, k: usize, n: usize) -> Result<QuotientElement> {
    Ok(QuotientElement::from_word(&alpha_word(r, k, n)?))
}

/// `σ_{r+k-1} ⋯ σ_{r+(k+1)/2} σ_{r+(k-1)/2}⁻¹ ⋯ σ_{r+1}⁻¹`.
pub fn delta_word(r: usize, k: usize, n: usize) -> Result<BraidWord> {
    if k < 3 || k.is_multiple_of(2) || r + k > n {
        return Err(Error::Range(format!(
            "delta needs odd k >= 3 and r + k <= n, got r = {r}, k = {k}, n = {n}"
        )));
    }
    let half = (k - 1) / 2;
    let mut letters: Vec<i64> = (r + half + 1..=r + k - 1).rev().map(|i| i as i64).collect();
    letters.extend((r + 1..=r + half).rev().map(|i| -(i as i64)));
    BraidWord::new(n, letters)
}

pub fn delta_block(r: usize, k: usize, n: usize) -> Result<QuotientElement> {
    Ok(QuotientElement::from_word(&delta_word(r, k, n)?))
}

/// Concatenation of the `δ` words of consecutive blocks.
pub fn delta_composite_word(spec: &BlockSpec) -> BraidWord {
    let mut letters = Vec::new();
    for (off, &k) in spec.offsets().into_iter().zip(spec.blocks()) {
        letters.extend_from_slice(delta_word(off, k, spec.n).expect("spec is validated").letters());
    }
    BraidWord::new(spec.n, letters).expect("letters are in range")
}

/// `δ = δ_{0,k_1} δ_{k_1,k_2} ⋯`, of order `lcm(k_1, …, k_s)` with permutation `θ`.
pub fn delta_composite(spec: &BlockSpec) -> QuotientElement {
    QuotientElement::from_word(&delta_composite_word(spec))
}

/// Whether `A·δ` has order `lcm(blocks)`: every orbit sum of `A` under conjugation by `δ` vanishes.
pub fn finite_order_candidates(spec: &BlockSpec, a: &PairVector) -> Result<bool> {
    if a.degree() != spec.n {
        return Err(Error::DegreeMismatch { left: a.degree(), right: spec.n });
    }
    let theta = spec.theta();
    Ok(pair_orbits(&theta).iter().all(|orbit| orbit.iter().map(|&p| a.get(p)).sum::<i64>() == 0))
}

/// `N·α_{0,n}` with `N = -Σ A_{1,i+1}` over `1 <= i <= (n-1)/2`; an element of order `n`.
pub fn order_n_element(n: usize) -> Result<QuotientElement> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Range(format!("order_n_element needs odd n >= 3, got {n}")));
    }
    let terms: Vec<(usize, usize, i64)> = (1..=(n - 1) / 2).map(|i| (1, i + 1, -1)).collect();
    let pure = QuotientElement::pure(PairVector::from_terms(n, &terms)?);
    pure.mul(&alpha(0, n, n)?)
}

/// Looks for `N` with `(N·L(p))^m = 1`, `m = order(p)`.
///
/// With `t` the pure part of `L(p)^m`, which is constant on the orbits of `p`
/// on pairs, such an `N` exists iff on each orbit of size `q` the value of `t`
/// is divisible by `m/q`. The correction `-t·q/m` is placed on the least pair
/// of each orbit. Returns the element `N·L(p)`, or `None` if no lift of `p` has
/// finite order.
pub fn torsion_witness(p: &Permutation) -> Result<Option<QuotientElement>> {
    if p.is_identity() {
        return Err(Error::Range("torsion witness needs a non-identity permutation".into()));
    }
    let n = p.degree();
    let m = p.order() as i64;
    let lift = QuotientElement::lift(p.clone());
    let t = lift.pow(m).vec().clone();
    let mut witness = PairVector::zero(n);
    for orbit in pair_orbits(p) {
        let q = orbit.len() as i64;
        let value = t.get(orbit[0]);
        debug_assert!(orbit.iter().all(|&pair| t.get(pair) == value));
        let k = m / q;
        if value % k != 0 {
            return Ok(None);
        }
        let least: Pair = *orbit.iter().min().expect("orbits are nonempty");
        witness.set(least, -value / k);
    }
    let g = QuotientElement::pure(witness).mul(&lift)?;
    if !g.pow(m).is_identity() {
        return Err(Error::InconsistentSystem(format!("witness for {p} failed direct powering")));
    }
    Ok(Some(g))
}

/// Pairwise commuting `δ_{K_{l-1}, k_l}` of orders `k_l`, generating `Z_{k_1} × ⋯ × Z_{k_s}`.
pub fn abelian_realization(spec: &BlockSpec) -> Vec<QuotientElement> {
    spec.offsets()
        .into_iter()
        .zip(spec.blocks())
        .map(|(off, &k)| delta_block(off, k, spec.n).expect("spec is validated"))
        .collect()
}
