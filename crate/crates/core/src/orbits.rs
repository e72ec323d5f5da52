//! Orbits of the conjugation action on the basis `{A_{i,j}}` of the pure part.
//!
//! An orbit is listed in the direction of the action, starting at its least
//! pair; orbits are sorted by their first pair.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::Result;
use crate::permutation::{Pair, Permutation};
use crate::quotient::QuotientElement;
use crate::torsion::{delta_composite, BlockSpec};

/// Cycles of a bijection on pairs, each starting at its least pair, in order of first pair.
fn cycles_of(n: usize, f: impl Fn(Pair) -> Pair) -> Vec<Vec<Pair>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for start in Pair::all(n) {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = vec![start];
        seen.insert(start);
        let mut p = f(start);
        while p != start {
            seen.insert(p);
            orbit.push(p);
            p = f(p);
        }
        out.push(orbit);
    }
    out
}

/// Orbits of `{i, j} -> {p(i), p(j)}`.
pub fn pair_orbits(p: &Permutation) -> Vec<Vec<Pair>> {
    cycles_of(p.degree(), |q| p.pair_image(q))
}

/// Rotates a cyclic list so it starts at its least pair.
fn rotate_to_least(mut orbit: Vec<Pair>) -> Vec<Pair> {
    if let Some(k) = orbit.iter().enumerate().min_by_key(|(_, p)| **p).map(|(k, _)| k) {
        orbit.rotate_left(k);
    }
    orbit
}

/// The orbits of conjugation by `element` on the basis pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTable {
    pub element: QuotientElement,
    pub orbits: Vec<Vec<Pair>>,
}

impl OrbitTable {
    fn canonical(element: QuotientElement, orbits: Vec<Vec<Pair>>) -> Self {
        let mut orbits: Vec<Vec<Pair>> = orbits.into_iter().map(rotate_to_least).collect();
        orbits.sort();
        OrbitTable { element, orbits }
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }

    /// JSON form: a list of orbits, each a list of `"i,j"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let keys: Vec<Vec<String>> = self.orbits.iter().map(|o| o.iter().map(Pair::key).collect()).collect();
        serde_json::to_value(keys).expect("strings serialize")
    }
}

impl fmt::Display for OrbitTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for orbit in &self.orbits {
            let body: Vec<String> = orbit.iter().map(|p| p.to_string()).collect();
            writeln!(f, "{}", body.join(" -> "))?;
        }
        Ok(())
    }
}

/// Cycle decomposition of `P -> action_on_basis(g, P)`.
pub fn enumerate_orbits(g: &QuotientElement) -> OrbitTable {
    let inv = g.perm().inverse();
    OrbitTable::canonical(g.clone(), cycles_of(g.degree(), |q| inv.pair_image(q)))
}

/// `[x]_m`: the representative of `x mod m` in `1..=m`.
pub fn bracket(x: i64, m: usize) -> usize {
    (x - 1).rem_euclid(m as i64) as usize + 1
}

/// Label of a basis element adapted to the blocks of `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BasisLabel {
    /// Both strands in block `r`; `h` is the gap class, `t` the position in the orbit.
    A { r: usize, h: usize, t: usize },
    /// Strand `K_{r-1} + t` of block `r` with a strand `j` beyond all blocks.
    B { r: usize, j: usize, t: usize },
    /// One strand in block `p`, the other in block `q > p`.
    C { p: usize, q: usize, v: usize, t: usize },
    /// Both strands beyond all blocks; fixed by `δ`.
    D { i: usize, j: usize },
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisLabel::A { r, h, t } => write!(f, "a({r},{h},{t})"),
            BasisLabel::B { r, j, t } => write!(f, "b({r},{j},{t})"),
            BasisLabel::C { p, q, v, t } => write!(f, "c({p},{q},{v},{t})"),
            BasisLabel::D { i, j } => write!(f, "d({i},{j})"),
        }
    }
}

/// The pair carrying a given label, from the closed-form formulas.
pub fn labelled_pair(spec: &BlockSpec, label: BasisLabel) -> Pair {
    let off = spec.offsets();
    let k = spec.blocks();
    match label {
        BasisLabel::A { r, h, t } => {
            let (start, end) = (off[r - 1], off[r - 1] + k[r - 1]);
            if t <= h {
                Pair::new_unchecked(start + h - t + 1, end - t + 1)
            } else {
                Pair::new_unchecked(end - t + 1, end - t + 1 + h)
            }
        }
        BasisLabel::B { r, j, t } => Pair::new_unchecked(off[r - 1] + t, j),
        BasisLabel::C { p, q, v, t } => {
            let (t, v) = (t as i64, v as i64);
            Pair::new_unchecked(off[p - 1] + bracket(2 - t, k[p - 1]), off[q - 1] + bracket(1 - t + v, k[q - 1]))
        }
        BasisLabel::D { i, j } => Pair::new_unchecked(i, j),
    }
}

/// Labels of each orbit of `δ(spec)` in the order of the action.
fn labelled_orbits(spec: &BlockSpec) -> Vec<Vec<BasisLabel>> {
    let n = spec.degree();
    let s = spec.blocks().len();
    let support = spec.support();
    let k = spec.blocks();
    let mut orbits = Vec::new();
    for r in 1..=s {
        for h in 1..=(k[r - 1] - 1) / 2 {
            orbits.push((1..=k[r - 1]).map(|t| BasisLabel::A { r, h, t }).collect());
        }
    }
    for r in 1..=s {
        for j in support + 1..=n {
            // conjugation by δ lowers t: A_{K+k,j} -> A_{K+k-1,j} -> … -> A_{K+1,j} -> A_{K+k,j}
            orbits.push((1..=k[r - 1]).rev().map(|t| BasisLabel::B { r, j, t }).collect());
        }
    }
    for p in 1..=s {
        for q in p + 1..=s {
            let l = k[p - 1].lcm(&k[q - 1]);
            let g = k[p - 1].gcd(&k[q - 1]);
            for v in 1..=g {
                orbits.push((1..=l).map(|t| BasisLabel::C { p, q, v, t }).collect());
            }
        }
    }
    for i in support + 1..=n {
        for j in i + 1..=n {
            orbits.push(vec![BasisLabel::D { i, j }]);
        }
    }
    orbits
}

/// The orbit table of `δ(spec)` built from the closed-form formulas, without group arithmetic.
pub fn closed_form_orbits(spec: &BlockSpec) -> OrbitTable {
    let orbits = labelled_orbits(spec)
        .into_iter()
        .map(|o| o.into_iter().map(|l| labelled_pair(spec, l)).collect())
        .collect();
    OrbitTable::canonical(delta_composite(spec), orbits)
}

/// Every basis label with the pair it names, in the order: type a, b, c, d.
pub fn relabeled_basis(spec: &BlockSpec) -> Vec<(BasisLabel, Pair)> {
    let mut out: Vec<(BasisLabel, Pair)> = labelled_orbits(spec)
        .into_iter()
        .flatten()
        .map(|l| (l, labelled_pair(spec, l)))
        .collect();
    out.sort_by_key(|(l, _)| *l);
    out
}

/// The orbits of conjugation by `α_{0,n}` as listed in closed form:
/// `A_{1,j+1} -> A_{2,j+2} -> … -> A_{n-j,n} -> A_{1,n-j+1} -> … -> A_{j,n}`,
/// plus `A_{1,n/2+1} -> … -> A_{n/2,n}` for even `n`.
pub fn alpha_closed_form_orbits(n: usize) -> Result<OrbitTable> {
    let element = crate::torsion::alpha(0, n, n)?;
    let mut orbits = Vec::new();
    for j in 1..=(n - 1) / 2 {
        let mut orbit: Vec<Pair> = (1..=n - j).map(|i| Pair::new_unchecked(i, i + j)).collect();
        orbit.extend((1..=j).map(|i| Pair::new_unchecked(i, i + n - j)));
        orbits.push(orbit);
    }
    if n.is_multiple_of(2) {
        orbits.push((1..=n / 2).map(|i| Pair::new_unchecked(i, i + n / 2)).collect());
    }
    Ok(OrbitTable::canonical(element, orbits))
}
