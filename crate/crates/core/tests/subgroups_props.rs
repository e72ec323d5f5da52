use std::collections::BTreeSet;

use braid_quotient::braidword::pair_index;
use braid_quotient::subgroups::{
    bieberbach_check, closure, holonomy_matrix, sublattice_torsion_check, HolonomySubgroup,
};
use braid_quotient::{Pair, PairVector, Permutation, QuotientElement};
use num_bigint::BigInt;

/// Sign of the permutation induced on pairs, from its inversion count.
fn pair_permutation_sign(p: &Permutation) -> i64 {
    let n = p.degree();
    let images: Vec<usize> = Pair::all(n)
        .map(|q| {
            let r = p.pair_action(q).unwrap();
            pair_index(n, r.i(), r.j())
        })
        .collect();
    let mut inversions = 0;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if images[a] > images[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 { 1 } else { -1 }
}

#[test]
fn holonomy_is_a_homomorphism() {
    for n in 2..=5 {
        let all: Vec<Permutation> = Permutation::all(n).collect();
        for p in &all {
            let mp = holonomy_matrix(p);
            let det = mp.determinant().unwrap();
            assert_eq!(det, BigInt::from(pair_permutation_sign(p)), "{p}");
            for q in &all {
                // ρ(pq) = ρ(p)ρ(q) with ρ(p)(v)_Q = v_{p(Q)}
                let pq = holonomy_matrix(&p.compose(q).unwrap());
                assert_eq!(pq, mp.mul(&holonomy_matrix(q)).unwrap());
            }
        }
    }
}

#[test]
fn holonomy_matches_vector_action() {
    for p in Permutation::all(4) {
        let m = holonomy_matrix(&p);
        for pair in Pair::all(4) {
            let e = PairVector::basis(4, pair).unwrap();
            let col: Vec<BigInt> = e.coeffs().iter().map(|&c| BigInt::from(c)).collect();
            let image: Vec<i64> = m.mul_vec(&col).unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect();
            assert_eq!(image, e.permute(&p).unwrap().coeffs());
        }
    }
}

/// All subgroups of `P` generated by at most three elements.
fn subgroups_of(p: &HolonomySubgroup) -> BTreeSet<Vec<Permutation>> {
    let els = p.elements();
    let mut out = BTreeSet::new();
    for a in els {
        for b in els {
            for c in els {
                let h = HolonomySubgroup::new(p.degree(), vec![a.clone(), b.clone(), c.clone()]).unwrap();
                out.insert(h.elements().to_vec());
            }
        }
    }
    out
}

#[test]
fn two_groups_are_bieberbach() {
    // Sylow 2-subgroups: every 2-subgroup of S_n is conjugate into one of these
    let sylow = [
        (2, vec!["(1,2)"]),
        (3, vec!["(1,2)"]),
        (4, vec!["(1,2,3,4)", "(1,3)"]),
        (5, vec!["(1,2,3,4)", "(1,3)"]),
        (6, vec!["(1,2,3,4)", "(1,3)", "(5,6)"]),
    ];
    for (n, gens) in sylow {
        let p = HolonomySubgroup::parse(n, &gens).unwrap();
        assert!(p.is_two_group());
        let subs = subgroups_of(&p);
        for elements in &subs {
            let h = HolonomySubgroup::new(n, elements.clone()).unwrap();
            assert!(h.is_two_group());
            assert!(bieberbach_check(&h).unwrap(), "n = {n}, subgroup of order {}", h.order());
        }
        if n == 6 {
            assert_eq!(p.order(), 16);
            assert!(subs.len() > 20);
        }
    }
    assert!(!bieberbach_check(&HolonomySubgroup::parse(6, &["(1,2,3)(4,5)"]).unwrap()).unwrap());
}

/// Searches `θ·g^j`, `θ` a combination of `gens` and `vec(g^m)` with coefficients in `[-6, 6]`.
fn brute_force_torsion(g: &QuotientElement, gens: &[PairVector]) -> bool {
    let m = g.perm().order() as i64;
    let mut basis = gens.to_vec();
    basis.push(g.pow(m).vec().clone());
    let k = basis.len();
    let total = 13usize.pow(k as u32);
    for code in 0..total {
        let mut theta = PairVector::zero(g.degree());
        for (i, b) in basis.iter().enumerate() {
            let c = (code / 13usize.pow(i as u32) % 13) as i64 - 6;
            theta = theta.add(&b.scale(c)).unwrap();
        }
        for j in 1..m {
            let h = QuotientElement::pure(theta.clone()).mul(&g.pow(j)).unwrap();
            if h.pow(m).is_identity() {
                return true;
            }
        }
    }
    false
}

#[test]
fn sublattice_check_agrees_with_search() {
    let e = |i, j, c| PairVector::from_terms(3, &[(i, j, c)]).unwrap();
    let cases = [
        ("1 1 -1 2", 3),
        ("-1 2", 2),
        ("-1 2", 3),
        ("2 -1", 1),
        ("1 1 -1 2", 2),
    ];
    for (word, scale) in cases {
        let g = QuotientElement::parse_word(3, word).unwrap();
        let gens = [e(1, 2, scale), e(1, 3, scale), e(2, 3, scale)];
        let free = sublattice_torsion_check(&g, &gens).unwrap();
        assert_eq!(free, !brute_force_torsion(&g, &gens), "{word} with lattice {scale}Z^3");
    }
}

#[test]
fn closure_counts() {
    let s1 = QuotientElement::parse_word(3, "1").unwrap();
    assert!(matches!(closure(&[s1], 50), Err(braid_quotient::Error::ClosureTooLarge(50))));
    let d = QuotientElement::parse_word(3, "2 -1").unwrap();
    assert_eq!(closure(&[d], 10).unwrap().len(), 3);
    assert_eq!(closure(&[], 10).unwrap().len(), 0);
}
