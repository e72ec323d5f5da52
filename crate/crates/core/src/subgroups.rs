//! Preimages of permutation groups, their holonomy representations, and
//! torsion-freeness checks.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::braidword::{pair_count, pair_index, PairVector};
use crate::error::{Error, Result};
use crate::permutation::{Pair, Permutation};
use crate::quotient::QuotientElement;
use crate::torsion::torsion_witness;
use crate::zlinalg::{abelianization, solve_integer, AbelianInvariants, IntMatrix};

/// A subgroup `H <= S_n` given by generators, with its elements enumerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomySubgroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl HolonomySubgroup {
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != n {
                return Err(Error::DegreeMismatch { left: g.degree(), right: n });
            }
        }
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        let mut queue = VecDeque::from([Permutation::identity(n)]);
        seen.insert(Permutation::identity(n));
        while let Some(p) = queue.pop_front() {
            for g in &generators {
                let q = p.then(g);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        Ok(HolonomySubgroup { n, generators, elements: seen.into_iter().collect() })
    }

    /// Parses generators in cycle notation.
    pub fn parse(n: usize, generators: &[&str]) -> Result<Self> {
        let gens = generators.iter().map(|s| Permutation::parse(n, s)).collect::<Result<Vec<_>>>()?;
        HolonomySubgroup::new(n, gens)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in sorted order; the identity comes first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_two_group(&self) -> bool {
        self.order().is_power_of_two()
    }
}

/// Matrix of `v -> ρ(p)(v)` in the lexicographic pair basis: entry `(Q, p(Q))` is 1.
///
/// With this convention the matrix of `p·q` (left to right) is `M_p · M_q`.
pub fn holonomy_matrix(p: &Permutation) -> IntMatrix {
    let pairs: Vec<Pair> = Pair::all(p.degree()).collect();
    holonomy_matrix_in_basis(p, &pairs).expect("lexicographic basis is complete")
}

/// The same action written in a custom ordering of the pairs.
pub fn holonomy_matrix_in_basis(p: &Permutation, basis: &[Pair]) -> Result<IntMatrix> {
    let n = p.degree();
    if basis.len() != pair_count(n) {
        return Err(Error::ShapeMismatch(format!("basis has {} pairs, expected {}", basis.len(), pair_count(n))));
    }
    let mut position = vec![usize::MAX; pair_count(n)];
    for (k, pair) in basis.iter().enumerate() {
        pair.check(n)?;
        position[pair_index(n, pair.i(), pair.j())] = k;
    }
    if position.contains(&usize::MAX) {
        return Err(Error::ShapeMismatch("basis repeats a pair".into()));
    }
    let mut m = IntMatrix::zeros(basis.len(), basis.len());
    for (row, &pair) in basis.iter().enumerate() {
        let image = p.pair_image(pair);
        m[(row, position[pair_index(n, image.i(), image.j())])] = BigInt::from(1);
    }
    Ok(m)
}

/// Whether only the identity of `S_n` acts trivially on pairs.
///
/// Exhaustive for `n <= 7`. For larger `n` a permutation fixing every pair
/// fixes every point `i` as the intersection of `{i, j}` and `{i, k}`.
pub fn faithfulness_check(n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::Range(format!("faithfulness needs n >= 3 (n = {n} is excluded)")));
    }
    if n > 7 {
        return Ok(true);
    }
    let id = IntMatrix::identity(pair_count(n));
    Ok(Permutation::all(n).filter(|p| !p.is_identity()).all(|p| holonomy_matrix(&p) != id))
}

/// The preimage of `H` in `B_n/[P_n, P_n]`: a crystallographic group with lattice `Z^{n(n-1)/2}`.
#[derive(Debug, Clone)]
pub struct Preimage {
    pub subgroup: HolonomySubgroup,
    pub rank: usize,
    pub holonomy: Vec<(Permutation, IntMatrix)>,
}

impl Preimage {
    pub fn contains(&self, g: &QuotientElement) -> bool {
        g.degree() == self.subgroup.degree() && self.subgroup.contains(g.perm())
    }

    pub fn holonomy_order(&self) -> usize {
        self.subgroup.order()
    }
}

pub fn preimage_subgroup(h: &HolonomySubgroup) -> Preimage {
    let holonomy = h.generators().iter().map(|p| (p.clone(), holonomy_matrix(p))).collect();
    Preimage { subgroup: h.clone(), rank: pair_count(h.degree()), holonomy }
}

/// All elements of the subgroup generated by finite-order `gens`, sorted.
///
/// Fails with `ClosureTooLarge` once more than `cap` elements are found.
pub fn closure(gens: &[QuotientElement], cap: usize) -> Result<Vec<QuotientElement>> {
    let n = match gens.first() {
        Some(g) => g.degree(),
        None => return Ok(Vec::new()),
    };
    let identity = QuotientElement::identity(n);
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.mul(s)?;
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return Err(Error::ClosureTooLarge(cap));
                }
                queue.push_back(h);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Whether the preimage of `H` is torsion-free: no non-identity element of `H` lifts to finite order.
pub fn bieberbach_check(h: &HolonomySubgroup) -> Result<bool> {
    for p in h.elements().iter().filter(|p| !p.is_identity()) {
        if torsion_witness(p)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `L = ⟨g, L₁⟩` is torsion-free, where `L₁` is spanned by `lattice_gens`
/// together with the pure part of `g^m`, `m` the (prime) order of `perm(g)`.
///
/// Every element outside `L₁` is `θ·g^j` with `θ ∈ L₁`, `1 <= j < m`, and
/// `(θ·g^j)^m` has pure part `S(θ) + j·t` where `S` sums `ρ(h)` over `⟨perm(g)⟩`
/// and `t = vec(g^m)`. Torsion exists iff `S·B·λ = -j·t` has an integer solution.
pub fn sublattice_torsion_check(g: &QuotientElement, lattice_gens: &[PairVector]) -> Result<bool> {
    let n = g.degree();
    let p = g.perm();
    let m = p.order();
    if m < 2 || !(2..m).all(|d| !m.is_multiple_of(d)) {
        return Err(Error::Range(format!("coset representative must have prime order permutation, got order {m}")));
    }
    for v in lattice_gens {
        if v.degree() != n {
            return Err(Error::DegreeMismatch { left: v.degree(), right: n });
        }
    }
    let t = g.pow(m as i64).vec().clone();
    let mut columns = vec![t.clone()];
    columns.extend(lattice_gens.iter().cloned());
    let basis = columns_matrix(n, &columns);
    for c in &columns {
        let image = c.permute_unchecked(p);
        if solve_integer(&basis, &to_big(&image)).is_err() {
            return Err(Error::NonInvariantLattice(format!("{image} is not in the lattice")));
        }
    }
    let summed: Vec<PairVector> = columns
        .iter()
        .map(|c| {
            (0..m).fold(PairVector::zero(n), |acc, i| acc.plus(&c.permute_unchecked(&p.pow(i as i64))))
        })
        .collect();
    let s_basis = columns_matrix(n, &summed);
    for j in 1..m as i64 {
        match solve_integer(&s_basis, &to_big(&t.scale(-j))) {
            Ok(_) => return Ok(false),
            Err(Error::NoSolution) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

fn columns_matrix(n: usize, columns: &[PairVector]) -> IntMatrix {
    let mut m = IntMatrix::zeros(pair_count(n), columns.len());
    for (j, c) in columns.iter().enumerate() {
        for (i, &x) in c.coeffs().iter().enumerate() {
            m[(i, j)] = BigInt::from(x);
        }
    }
    m
}

fn to_big(v: &PairVector) -> Vec<BigInt> {
    v.coeffs().iter().map(|&x| BigInt::from(x)).collect()
}

/// A finite presentation whose generators are concrete elements.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: Vec<(String, QuotientElement)>,
    /// Each relator is a product of `generator^exponent` terms.
    pub relators: Vec<Vec<(usize, i64)>>,
}

impl Presentation {
    pub fn evaluate(&self, relator: &[(usize, i64)]) -> Result<QuotientElement> {
        let n = self.generators[0].1.degree();
        relator
            .iter()
            .try_fold(QuotientElement::identity(n), |acc, &(g, e)| acc.mul(&self.generators[g].1.pow(e)))
    }

    /// Whether every relator evaluates to the identity.
    pub fn relators_hold(&self) -> Result<bool> {
        for r in &self.relators {
            if !self.evaluate(r)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, r) in self.relators.iter().enumerate() {
            for &(g, e) in r {
                m[(i, g)] += BigInt::from(e);
            }
        }
        m
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        abelianization(&self.relation_matrix())
    }
}

fn commutator(a: usize, b: usize) -> Vec<(usize, i64)> {
    vec![(a, 1), (b, 1), (a, -1), (b, -1)]
}

/// One row of the `B_3` catalog.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub subgroup: Vec<String>,
    pub holonomy_order: usize,
    pub bieberbach: bool,
    pub det_spectrum: Vec<i64>,
    pub relators_hold: bool,
    /// `[free_rank, torsion...]`
    pub abelianization: Vec<u64>,
    #[serde(skip)]
    pub presentation: Presentation,
}

fn entry(name: &str, gens: &[&str], presentation: Presentation) -> Result<CatalogEntry> {
    let h = HolonomySubgroup::parse(3, gens)?;
    let mut dets: Vec<i64> = h
        .elements()
        .iter()
        .map(|p| holonomy_matrix(p).determinant().map(|d| d.to_i64().expect("determinant is ±1")))
        .collect::<Result<_>>()?;
    dets.sort_unstable();
    dets.dedup();
    let ab = presentation.abelianization();
    let mut abel = vec![ab.free_rank as u64];
    abel.extend(ab.torsion.iter().map(|t| t.to_u64().expect("small torsion")));
    Ok(CatalogEntry {
        name: name.to_string(),
        subgroup: h.generators().iter().map(|p| p.to_string()).collect(),
        holonomy_order: h.order(),
        bieberbach: bieberbach_check(&h)?,
        det_spectrum: dets,
        relators_hold: presentation.relators_hold()?,
        abelianization: abel,
        presentation,
    })
}

/// Preimages of the subgroups of `S_3` up to conjugacy, each with a presentation
/// checked relator by relator and its abelianization.
pub fn b3_catalog() -> Result<Vec<CatalogEntry>> {
    let nf = |s: &str| QuotientElement::parse_word(3, s).expect("fixed words are valid");
    let a12 = nf("1 1");
    let a13 = nf("2 1 1 -2");
    let a23 = nf("2 2");

    let trivial = Presentation {
        generators: vec![("A12".into(), a12.clone()), ("A13".into(), a13.clone()), ("A23".into(), a23.clone())],
        relators: vec![commutator(0, 1), commutator(0, 2), commutator(1, 2)],
    };

    // generators A12, A23, A13, α = σ1σ2
    let cyclic = Presentation {
        generators: vec![
            ("A12".into(), a12.clone()),
            ("A23".into(), a23.clone()),
            ("A13".into(), a13.clone()),
            ("alpha".into(), nf("1 2")),
        ],
        relators: vec![
            commutator(0, 2),
            commutator(0, 1),
            commutator(2, 1),
            vec![(3, 3), (1, -1), (2, -1), (0, -1)],
            vec![(3, 1), (0, 1), (3, -1), (1, -1)],
            vec![(3, 1), (2, 1), (3, -1), (0, -1)],
            vec![(3, 1), (1, 1), (3, -1), (2, -1)],
        ],
    };

    // generators A12, A23, A13, σ1
    let transposition = Presentation {
        generators: vec![
            ("A12".into(), a12.clone()),
            ("A23".into(), a23.clone()),
            ("A13".into(), a13.clone()),
            ("sigma1".into(), nf("1")),
        ],
        relators: vec![
            commutator(0, 2),
            commutator(0, 1),
            commutator(2, 1),
            vec![(3, 2), (0, -1)],
            vec![(3, 1), (0, 1), (3, -1), (0, -1)],
            vec![(3, 1), (2, 1), (3, -1), (1, -1)],
            vec![(3, 1), (1, 1), (3, -1), (2, -1)],
        ],
    };

    let whole = Presentation {
        generators: vec![("sigma1".into(), nf("1")), ("sigma2".into(), nf("2"))],
        relators: vec![
            vec![(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)],
            vec![(0, -1), (1, 1), (0, -1), (1, 1), (0, -1), (1, 1)],
        ],
    };

    Ok(vec![
        entry("trivial", &[], trivial)?,
        entry("cyclic3", &["(1,3,2)"], cyclic)?,
        entry("transposition", &["(1,2)"], transposition)?,
        entry("S3", &["(1,2)", "(1,3,2)"], whole)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn holonomy_matrices() {
        let t = Permutation::parse(3, "(1,2)").unwrap();
        let mt = holonomy_matrix(&t);
        assert_eq!(mt, m(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]));
        assert_eq!(mt.determinant().unwrap(), BigInt::from(-1));
        let c = QuotientElement::parse_word(3, "-1 2").unwrap().perm().clone();
        let basis = [Pair::new(1, 2).unwrap(), Pair::new(2, 3).unwrap(), Pair::new(1, 3).unwrap()];
        assert_eq!(
            holonomy_matrix_in_basis(&c, &basis).unwrap(),
            m(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]])
        );
        assert_eq!(holonomy_matrix(&Permutation::identity(4)), IntMatrix::identity(6));
    }

    #[test]
    fn faithfulness() {
        assert!(faithfulness_check(3).unwrap());
        assert!(faithfulness_check(4).unwrap());
        assert!(faithfulness_check(6).unwrap());
        assert!(faithfulness_check(2).is_err());
    }

    #[test]
    fn preimages() {
        let h = HolonomySubgroup::parse(3, &[]).unwrap();
        let pre = preimage_subgroup(&h);
        assert_eq!(pre.rank, 3);
        assert!(pre.contains(&QuotientElement::parse_word(3, "1 1 2 2").unwrap()));
        assert!(!pre.contains(&QuotientElement::parse_word(3, "1").unwrap()));
        let z2 = preimage_subgroup(&HolonomySubgroup::parse(3, &["(1,2)"]).unwrap());
        assert_eq!(z2.holonomy_order(), 2);
        let s3 = preimage_subgroup(&HolonomySubgroup::parse(3, &["(1,2)", "(1,2,3)"]).unwrap());
        assert_eq!(s3.holonomy_order(), 6);
        assert!(s3.contains(&QuotientElement::parse_word(3, "1 -2 1 2 2").unwrap()));
    }

    #[test]
    fn bieberbach() {
        assert!(bieberbach_check(&HolonomySubgroup::parse(3, &["(1,2)"]).unwrap()).unwrap());
        assert!(!bieberbach_check(&HolonomySubgroup::parse(3, &["(1,3,2)"]).unwrap()).unwrap());
        assert!(bieberbach_check(&HolonomySubgroup::parse(4, &["(1,2)(3,4)"]).unwrap()).unwrap());
    }

    #[test]
    fn sublattice_examples() {
        let e = |i, j, c| PairVector::from_terms(3, &[(i, j, c)]).unwrap();
        let g = QuotientElement::parse_word(3, "1 1 -1 2").unwrap();
        assert!(sublattice_torsion_check(&g, &[e(1, 2, 3), e(1, 3, 3), e(2, 3, 3)]).unwrap());
        let g2 = QuotientElement::parse_word(3, "-1 2").unwrap();
        assert!(!sublattice_torsion_check(&g2, &[e(1, 2, 2), e(1, 3, 2), e(2, 3, 2)]).unwrap());
        let d = QuotientElement::parse_word(3, "2 -1").unwrap();
        assert!(!sublattice_torsion_check(&d, &[e(1, 2, 1), e(1, 3, 1), e(2, 3, 1)]).unwrap());
        assert!(matches!(
            sublattice_torsion_check(&g, &[e(1, 2, 3)]),
            Err(Error::NonInvariantLattice(_))
        ));
    }

    #[test]
    fn catalog() {
        let cat = b3_catalog().unwrap();
        let abel: Vec<Vec<u64>> = cat.iter().map(|e| e.abelianization.clone()).collect();
        assert_eq!(abel, vec![vec![3], vec![1, 3], vec![2], vec![1]]);
        assert!(cat.iter().all(|e| e.relators_hold));
        let bieb: Vec<bool> = cat.iter().map(|e| e.bieberbach).collect();
        assert_eq!(bieb, vec![true, false, true, false]);
        assert_eq!(cat[2].det_spectrum, vec![-1, 1]);
        assert_eq!(cat[1].det_spectrum, vec![1]);
    }
}
