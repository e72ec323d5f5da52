mod common;

use braid_quotient::conjugacy::{are_conjugate, Conjugacy};
use braid_quotient::{BraidWord, Order, Pair, PairVector, Permutation, Quotient, QuotientElement, Section};
use common::{random_element, random_finite_element, random_word, rng};
use proptest::prelude::*;
use rand::Rng;

fn element(n: usize) -> impl Strategy<Value = QuotientElement> {
    let k = n as i64 - 1;
    prop::collection::vec((1..=k).prop_flat_map(|l| prop_oneof![Just(l), Just(-l)]), 0..=16)
        .prop_map(move |letters| QuotientElement::from_word(&BraidWord::new(n, letters).unwrap()))
}

fn triple() -> impl Strategy<Value = (QuotientElement, QuotientElement, QuotientElement)> {
    (2usize..=8).prop_flat_map(|n| (element(n), element(n), element(n)))
}

proptest! {
    #[test]
    fn mul_is_associative((a, b, c) in triple()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_is_two_sided((a, _, _) in triple()) {
        let id = QuotientElement::identity(a.degree());
        prop_assert_eq!(a.mul(&a.inv()).unwrap(), id.clone());
        prop_assert_eq!(a.inv().mul(&a).unwrap(), id);
    }

    #[test]
    fn pow_matches_repeated_mul((a, _, _) in triple(), m in -6i64..=6) {
        let mut expected = QuotientElement::identity(a.degree());
        let step = if m >= 0 { a.clone() } else { a.inv() };
        for _ in 0..m.abs() {
            expected = expected.mul(&step).unwrap();
        }
        prop_assert_eq!(a.pow(m), expected);
    }

    #[test]
    fn to_word_round_trips((a, _, _) in triple()) {
        prop_assert_eq!(QuotientElement::from_word(&a.to_word()), a.clone());
        let json = a.to_json().to_string();
        prop_assert_eq!(QuotientElement::from_json(&json).unwrap(), a);
    }

    #[test]
    fn pure_elements_commute((a, b, _) in triple()) {
        let pa = QuotientElement::pure(a.vec().clone());
        let pb = QuotientElement::pure(b.vec().clone());
        prop_assert_eq!(pa.conj(&pb).unwrap(), pa.clone());
        prop_assert_eq!(pa.mul(&pb).unwrap(), pb.mul(&pa).unwrap());
    }
}

#[test]
fn normalize_of_concat_is_mul() {
    let mut r = rng(0x5eed_0001);
    for n in 3..=9 {
        for _ in 0..1000 {
            let u = random_word(&mut r, n, 16);
            let v = random_word(&mut r, n, 16);
            let whole = QuotientElement::from_word(&u.concat(&v).unwrap());
            let product = QuotientElement::from_word(&u).mul(&QuotientElement::from_word(&v)).unwrap();
            assert_eq!(whole, product, "n = {n}, u = {u}, v = {v}");
        }
    }
}

#[test]
fn sections_agree() {
    let mut r = rng(0x5eed_0002);
    let canonical = Quotient::new(Section::Canonical);
    for n in 3..=7 {
        for _ in 0..150 {
            let g = random_finite_element(&mut r, n);
            let h = if r.gen_bool(0.5) { random_finite_element(&mut r, n) } else { g.conj(&random_element(&mut r, n)).unwrap() };
            let w = random_word(&mut r, n, 10);
            let conj_outcome = are_conjugate(&g, &h).unwrap();
            for section in [Section::ReverseScan, Section::Negative] {
                let other = Quotient::new(section);
                let (g2, h2) = (canonical.translate(&g, &other), canonical.translate(&h, &other));
                assert_eq!(other.element_order(&g2), g.element_order());
                let e = other.normalize(&w);
                assert_eq!(other.element_order(&e), canonical.normalize(&w).element_order());
                for pair in Pair::all(n) {
                    assert_eq!(other.action_on_basis(&e, pair).unwrap(), canonical.action_on_basis(&canonical.normalize(&w), pair).unwrap());
                }
                // a conjugator found with one section still conjugates in the other
                if let Conjugacy::Conjugate(c) = &conj_outcome {
                    let c2 = canonical.translate(c, &other);
                    assert_eq!(other.conj(&g2, &c2).unwrap(), h2);
                } else {
                    assert_ne!(g.perm().cycle_type(), h.perm().cycle_type());
                }
                // the product in either section names the same group element
                let prod = other.mul(&g2, &h2).unwrap();
                assert_eq!(other.translate(&prod, &canonical), g.mul(&h).unwrap());
            }
        }
    }
}

/// The induced action of `σ_k` on `P_n/[P_n, P_n]`, written out case by case.
fn sigma_table(k: usize, i: usize, j: usize) -> (usize, usize) {
    if j == k {
        (i, k + 1)
    } else if j == k + 1 && i < k {
        (i, k)
    } else if j == k + 1 && i == k {
        (k, k + 1)
    } else if i == k && k < j - 1 {
        (i + 1, j)
    } else if i == k + 1 {
        (k, j)
    } else {
        (i, j)
    }
}

#[test]
fn sigma_action_table() {
    for n in 2..=7 {
        for k in 1..n {
            let s = QuotientElement::parse_word(n, &k.to_string()).unwrap();
            for pair in Pair::all(n) {
                let (a, b) = sigma_table(k, pair.i(), pair.j());
                let expected = PairVector::basis(n, Pair::new(a, b).unwrap()).unwrap();
                let basis = QuotientElement::pure(PairVector::basis(n, pair).unwrap());
                assert_eq!(basis.conj(&s).unwrap(), QuotientElement::pure(expected), "σ_{k} on {pair}");
                assert_eq!(s.action_on_basis(pair).unwrap(), Pair::new(a, b).unwrap());
            }
        }
    }
}

#[test]
fn no_even_torsion() {
    let mut r = rng(0x5eed_0003);
    let mut finite = 0;
    for n in 2..=9 {
        for _ in 0..1250 {
            let g = if r.gen_bool(0.5) { random_element(&mut r, n) } else { random_finite_element(&mut r, n) };
            match g.element_order() {
                Order::Finite(k) => {
                    finite += 1;
                    assert!(k % 2 == 1, "element of even order {k}: {g}");
                    assert!(g.pow(k as i64).is_identity());
                }
                Order::Infinite => assert!(!g.pow(g.perm().order() as i64).is_identity()),
            }
        }
    }
    assert!(finite > 1000);
}

#[test]
fn canonical_lift_of_three_cycle() {
    let p = Permutation::parse(3, "(1,3,2)").unwrap();
    let lift = braid_quotient::canonical_lift(&p);
    // every positive word of length 2 with that permutation
    let mut candidates = Vec::new();
    for a in 1..=2 {
        for b in 1..=2 {
            let w = BraidWord::new(3, vec![a, b]).unwrap();
            if w.underlying_permutation() == p {
                candidates.push(w);
            }
        }
    }
    assert!(candidates.contains(&lift));
    assert_eq!(lift.len(), p.inversions());
    for n in 1..=6 {
        for p in Permutation::all(n) {
            let w = braid_quotient::canonical_lift(&p);
            assert_eq!(w.underlying_permutation(), p);
            assert_eq!(w.len(), p.inversions());
            assert!(w.letters().iter().all(|&l| l > 0));
        }
    }
}

#[test]
fn worked_examples() {
    let nf = |n, s: &str| QuotientElement::parse_word(n, s).unwrap();
    assert!(nf(3, "-1 2 -1 2 -1 2").is_identity());
    assert_eq!(nf(3, "1 1"), QuotientElement::pure(PairVector::from_terms(3, &[(1, 2, 1)]).unwrap()));
    let ones = QuotientElement::pure(PairVector::from_coeffs(3, vec![1, 1, 1]).unwrap());
    assert_eq!(nf(3, "1 2").pow(3), ones);
    assert_eq!(nf(3, "1").element_order(), Order::Infinite);
    let a = nf(4, "1 2 3");
    assert_eq!(a.action_on_basis(Pair::new(1, 2).unwrap()).unwrap(), Pair::new(2, 3).unwrap());
    assert_eq!(a.action_on_basis(Pair::new(1, 4).unwrap()).unwrap(), Pair::new(1, 2).unwrap());
    assert!(QuotientElement::identity(4).inv().is_identity());
    assert!(nf(3, "1").mul(&nf(4, "1")).is_err());
}
