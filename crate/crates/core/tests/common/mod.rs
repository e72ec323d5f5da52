#![allow(dead_code)]

use braid_quotient::orbits::enumerate_orbits;
use braid_quotient::torsion::{delta_composite, BlockSpec};
use braid_quotient::{BraidWord, PairVector, Permutation, QuotientElement};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let k = rng.gen_range(1..n as i64);
            if rng.gen_bool(0.5) { k } else { -k }
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}

pub fn random_element(rng: &mut ChaCha8Rng, n: usize) -> QuotientElement {
    QuotientElement::from_word(&random_word(rng, n, 12))
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).unwrap()
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> PairVector {
    let m = n * (n - 1) / 2;
    PairVector::from_coeffs(n, (0..m).map(|_| rng.gen_range(-bound..=bound)).collect()).unwrap()
}

/// Shifts coefficients so that every orbit of `δ(spec)` sums to zero.
pub fn project_to_zero_orbit_sums(spec: &BlockSpec, a: &PairVector) -> PairVector {
    let mut out = a.clone();
    for orbit in enumerate_orbits(&delta_composite(spec)).orbits {
        let s: i64 = orbit.iter().map(|&q| a.get(q)).sum();
        out.set(orbit[0], a.get(orbit[0]) - s);
    }
    out
}

/// Block specs with `Σ blocks <= n`, including the empty spec.
pub fn specs_up_to(n: usize) -> Vec<BlockSpec> {
    fn go(rem: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        let mut k = min;
        while k <= rem {
            cur.push(k);
            go(rem - k, k, cur, out);
            cur.pop();
            k += 2;
        }
    }
    let mut raw = Vec::new();
    go(n, 3, &mut Vec::new(), &mut raw);
    raw.into_iter().map(|b| BlockSpec::new(n, b).unwrap()).collect()
}

/// A random finite-order element: `A·δ(spec)` with zero orbit sums, conjugated by a random element.
pub fn random_finite_element(rng: &mut ChaCha8Rng, n: usize) -> QuotientElement {
    let specs: Vec<BlockSpec> = specs_up_to(n);
    let spec = specs.choose(rng).unwrap();
    let a = project_to_zero_orbit_sums(spec, &random_vector(rng, n, 3));
    let g = QuotientElement::pure(a).mul(&delta_composite(spec)).unwrap();
    let c = random_element(rng, n);
    g.conj(&c).unwrap()
}
