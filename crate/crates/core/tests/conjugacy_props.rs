mod common;

use std::collections::{BTreeMap, BTreeSet};

use braid_quotient::conjugacy::{are_conjugate, conjugator_to_delta, count_classes, standardize, Conjugacy};
use braid_quotient::torsion::{delta_composite, torsion_witness};
use braid_quotient::{Order, Permutation};
use common::{random_element, random_finite_element, rng};
use rand::Rng;

#[test]
fn conjugacy_iff_cycle_type() {
    let mut r = rng(0x5eed_0301);
    for n in 3..=8 {
        let mut positives = 0;
        for _ in 0..500 {
            let g = random_finite_element(&mut r, n);
            let h = if r.gen_bool(0.5) { g.conj(&random_element(&mut r, n)).unwrap() } else { random_finite_element(&mut r, n) };
            let same_type = g.perm().cycle_type() == h.perm().cycle_type();
            match are_conjugate(&g, &h).unwrap() {
                Conjugacy::Conjugate(c) => {
                    assert!(same_type);
                    assert_eq!(g.conj(&c).unwrap(), h);
                    positives += 1;
                }
                Conjugacy::NotConjugate => assert!(!same_type, "{g} and {h}"),
                Conjugacy::Unknown => panic!("finite-order elements gave an unknown answer"),
            }
        }
        assert!(positives >= 250, "n = {n}: only {positives} conjugate pairs");
    }
}

#[test]
fn correction_after_standardizing_is_pure() {
    let mut r = rng(0x5eed_0302);
    for n in 3..=8 {
        for _ in 0..100 {
            let g = random_finite_element(&mut r, n);
            let (c0, spec) = standardize(&g).unwrap();
            let c = conjugator_to_delta(&g).unwrap();
            assert_eq!(g.conj(&c).unwrap(), delta_composite(&spec));
            assert!(c.mul(&c0.inv()).unwrap().is_pure());
        }
    }
}

#[test]
fn class_counts_match_exhaustive_search() {
    for n in 3..=7 {
        let mut specs: BTreeMap<u64, BTreeSet<Vec<usize>>> = BTreeMap::new();
        for p in Permutation::all(n).filter(|p| !p.is_identity() && p.order() % 2 == 1) {
            let g = torsion_witness(&p).unwrap().unwrap();
            let (_, spec) = standardize(&g).unwrap();
            specs.entry(p.order()).or_default().insert(spec.blocks().to_vec());
        }
        for k in (3..=15u64).step_by(2) {
            let found = specs.get(&k).map_or(0, |s| s.len());
            assert_eq!(count_classes(n, k).unwrap(), found, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn infinite_order_pairs_are_undecided_or_separated() {
    let mut r = rng(0x5eed_0303);
    for _ in 0..200 {
        let g = random_element(&mut r, 5);
        let h = random_element(&mut r, 5);
        let outcome = are_conjugate(&g, &h).unwrap();
        if g.element_order() == Order::Infinite && h.element_order() == Order::Infinite && g != h {
            let same = g.perm().cycle_type() == h.perm().cycle_type();
            assert_eq!(outcome == Conjugacy::Unknown, same);
        }
        if let Conjugacy::Conjugate(c) = outcome {
            assert_eq!(g.conj(&c).unwrap(), h);
        }
    }
}
