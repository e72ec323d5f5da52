use braid_quotient::zlinalg::{hnf, invariant_factors, snf, solve_integer_i64};
use braid_quotient::{Error, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r)
            .prop_map(|rows| IntMatrix::from_i64_rows(&rows).unwrap())
    })
}

/// A product of random elementary unimodular matrices.
fn unimodular(size: usize, ops: &[(usize, usize, i64, bool)]) -> IntMatrix {
    let mut m = IntMatrix::identity(size);
    for &(a, b, k, swap) in ops {
        let (a, b) = (a % size, b % size);
        if swap {
            for j in 0..size {
                let t = m[(a, j)].clone();
                m[(a, j)] = m[(b, j)].clone();
                m[(b, j)] = t;
            }
        } else if a != b {
            for j in 0..size {
                let add = &m[(b, j)] * BigInt::from(k);
                m[(a, j)] += add;
            }
        }
    }
    m
}

fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64, bool)>> {
    prop::collection::vec((0usize..5, 0usize..5, -3i64..=3, any::<bool>()), 0..8)
}

fn is_unit_det(m: &IntMatrix) -> bool {
    m.determinant().unwrap().abs().is_one()
}

fn is_diagonal_chain(d: &IntMatrix) -> bool {
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    let diag: Vec<BigInt> = (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect();
    diag.iter().all(|x| !x.is_negative())
        && diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() })
}

proptest! {
    #[test]
    fn hnf_reconstructs(m in matrix()) {
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(is_unit_det(&u));
        // echelon with positive pivots
        let mut last = None;
        for i in 0..h.rows() {
            if let Some(p) = (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
                prop_assert!(h[(i, p)].is_positive());
                prop_assert!(last.is_none_or(|l| p > l));
                for k in 0..i {
                    prop_assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
                }
                last = Some(p);
            } else {
                last = Some(usize::MAX - 1);
            }
        }
    }

    #[test]
    fn snf_reconstructs(m in matrix()) {
        let (d, u, v) = snf(&m);
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d.clone());
        prop_assert!(is_unit_det(&u) && is_unit_det(&v));
        prop_assert!(is_diagonal_chain(&d));
    }

    #[test]
    fn snf_is_unimodular_invariant(m in matrix(), left in ops(), right in ops()) {
        let p = unimodular(m.rows(), &left);
        let q = unimodular(m.cols(), &right);
        let moved = p.mul(&m).unwrap().mul(&q).unwrap();
        prop_assert_eq!(invariant_factors(&moved), invariant_factors(&m));
    }

    #[test]
    fn solutions_verify(m in matrix(), x in prop::collection::vec(-5i64..=5, 5), k in prop::collection::vec(-3i64..=3, 5)) {
        let x: Vec<BigInt> = x[..m.cols()].iter().map(|&a| BigInt::from(a)).collect();
        let b = m.mul_vec(&x).unwrap();
        let b64: Vec<i64> = b.iter().map(|v| i64::try_from(v).unwrap()).collect();
        let sol = solve_integer_i64(&m, &b64).unwrap();
        prop_assert_eq!(m.mul_vec(&sol.particular).unwrap(), b.clone());
        let mut shifted = sol.particular.clone();
        for (basis, c) in sol.kernel.iter().zip(&k) {
            prop_assert!(m.mul_vec(basis).unwrap().iter().all(Zero::is_zero));
            for (s, e) in shifted.iter_mut().zip(basis) {
                *s += e * BigInt::from(*c);
            }
        }
        prop_assert_eq!(m.mul_vec(&shifted).unwrap(), b);
    }
}

#[test]
fn unsolvable_systems() {
    let m = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
    // 2x + 4y = 1 has no integer solution
    assert_eq!(solve_integer_i64(&m, &[1, 0]).unwrap_err(), Error::NoSolution);
    let sol = solve_integer_i64(&m, &[2, 6]).unwrap();
    assert_eq!(sol.particular_i64().unwrap(), vec![1, 0]);
    assert!(sol.kernel.is_empty());
    assert!(matches!(solve_integer_i64(&m, &[1]), Err(Error::ShapeMismatch(_))));
}

#[test]
fn invariant_factor_examples() {
    let m = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
    let f: Vec<i64> = invariant_factors(&m).iter().map(|x| i64::try_from(x).unwrap()).collect();
    assert_eq!(f, vec![2, 6, 12]);
}
