mod common;

use braid_quotient::orbits::{
    alpha_closed_form_orbits, bracket, closed_form_orbits, enumerate_orbits, relabeled_basis,
};
use braid_quotient::torsion::{alpha, delta_composite};
use braid_quotient::{Order, Pair};
use common::{random_element, random_finite_element, rng, specs_up_to};

#[test]
fn closed_forms_match_enumeration() {
    for n in 3..=9 {
        for spec in specs_up_to(n) {
            let closed = closed_form_orbits(&spec);
            assert_eq!(closed, enumerate_orbits(&delta_composite(&spec)), "spec {spec} in n = {n}");
            // every pair is labelled exactly once
            let mut pairs: Vec<Pair> = relabeled_basis(&spec).into_iter().map(|(_, p)| p).collect();
            pairs.sort();
            assert_eq!(pairs, Pair::all(n).collect::<Vec<_>>());
        }
    }
}

#[test]
fn alpha_orbits_match_closed_form() {
    for n in 3..=9 {
        let table = enumerate_orbits(&alpha(0, n, n).unwrap());
        assert_eq!(table, alpha_closed_form_orbits(n).unwrap(), "n = {n}");
        let mut lengths = table.lengths();
        lengths.sort();
        let mut expected = vec![n; (n - 1) / 2];
        if n % 2 == 0 {
            expected.insert(0, n / 2);
        }
        assert_eq!(lengths, expected, "n = {n}");
    }
}

#[test]
fn orbit_lengths_divide_order() {
    let mut r = rng(0x5eed_0201);
    for n in 3..=9 {
        for _ in 0..200 {
            let g = if n % 2 == 0 { random_element(&mut r, n) } else { random_finite_element(&mut r, n) };
            let table = enumerate_orbits(&g);
            if let Order::Finite(k) = g.element_order() {
                assert!(table.lengths().iter().all(|&l| k % l as u64 == 0), "{g}");
            }
            // orbits follow the conjugation action
            for orbit in &table.orbits {
                for (a, b) in orbit.iter().zip(orbit.iter().cycle().skip(1)) {
                    assert_eq!(g.action_on_basis(*a).unwrap(), *b);
                }
            }
        }
    }
}

#[test]
fn bracket_is_a_residue() {
    for m in 1..=9usize {
        for x in -30i64..30 {
            let b = bracket(x, m);
            assert!((1..=m).contains(&b));
            assert_eq!((x - b as i64).rem_euclid(m as i64), 0);
        }
    }
}
