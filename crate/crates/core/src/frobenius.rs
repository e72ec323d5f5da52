//! The Frobenius group of order 21 inside `B_7/[P_7, P_7]`.
//!
//! `x = σ₂σ₁⁻¹σ₅σ₄⁻¹` and `y` have permutations `β = (1,2,3)(4,5,6)` and
//! `α = (1,3,4,2,5,6,7)`, but `⟨x, y⟩` is not Frobenius. Twisting `y` by a pure
//! element `N` gives `v = N·y`, and `⟨x, v⟩ ≅ F₂₁` exactly when the coefficients
//! of `N` solve an integer linear system. All such subgroups are conjugate to
//! `⟨x, v₀⟩` with `v₀ = N₀·y`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::braidword::{pair_count, pair_index, PairVector};
use crate::conjugacy::{are_conjugate, Conjugacy};
use crate::error::{Error, Result};
use crate::orbits::pair_orbits;
use crate::permutation::{Pair, Permutation};
use crate::quotient::{Order, QuotientElement};
use crate::subgroups::closure;
use crate::zlinalg::{rank, solve_integer, solve_integer_i64, IntMatrix};

pub const N: usize = 7;
pub const X_WORD: &str = "2 -1 5 -4";
pub const Y_WORD: &str = "2 3 6 5 4 -3 -2 -1 -3 -2";

/// `(1,3,4,2,5,6,7)`
pub fn alpha_perm() -> Permutation {
    Permutation::from_cycles(N, &[&[1, 3, 4, 2, 5, 6, 7]]).expect("valid cycle")
}

/// `(1,2,3)(4,5,6)`
pub fn beta_perm() -> Permutation {
    Permutation::from_cycles(N, &[&[1, 2, 3], &[4, 5, 6]]).expect("valid cycles")
}

pub fn build_xy() -> (QuotientElement, QuotientElement) {
    let x = QuotientElement::parse_word(N, X_WORD).expect("fixed word");
    let y = QuotientElement::parse_word(N, Y_WORD).expect("fixed word");
    (x, y)
}

/// The pure element `x·y·x⁻¹·y⁻²`, or `NotPure` when the permutations do not satisfy the relation.
pub fn defect(x: &QuotientElement, y: &QuotientElement) -> Result<PairVector> {
    let d = y.conj(x)?.mul(&y.pow(-2))?;
    if !d.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(d.vec().clone())
}

/// `N₀ = A_{3,5} + A_{1,6} − A_{2,7} − A_{5,7}`.
pub fn n0() -> PairVector {
    PairVector::from_terms(N, &[(3, 5, 1), (1, 6, 1), (2, 7, -1), (5, 7, -1)]).expect("valid pairs")
}

/// `v₀ = N₀·y`.
pub fn v0() -> QuotientElement {
    twisted_y(&n0())
}

/// `N·y`.
pub fn twisted_y(n: &PairVector) -> QuotientElement {
    let (_, y) = build_xy();
    QuotientElement::pure(n.clone()).mul(&y).expect("degree 7")
}

/// The integer system whose solutions `N` make `⟨x, N·y⟩` Frobenius.
///
/// One row per pair `Q`: `−N_{β(Q)} + N_Q + N_{α(Q)} = D_Q` with `D` the defect,
/// which is `x·(Ny)·x⁻¹ = (Ny)²` read on pure parts. Three more rows ask the
/// coefficients over each `α`-orbit to sum to zero, which is `(Ny)⁷ = 1`.
pub fn frobenius_system() -> (IntMatrix, Vec<i64>) {
    let (x, y) = build_xy();
    let d = defect(&x, &y).expect("x and y satisfy the relation up to pure parts");
    let m = pair_count(N);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for q in Pair::all(N) {
        let mut row = vec![0i64; m];
        row[pair_index(N, q.i(), q.j())] += 1;
        let b = x.perm().pair_image(q);
        row[pair_index(N, b.i(), b.j())] -= 1;
        let a = y.perm().pair_image(q);
        row[pair_index(N, a.i(), a.j())] += 1;
        rows.push(row);
        rhs.push(d.get(q));
    }
    for orbit in pair_orbits(y.perm()) {
        let mut row = vec![0i64; m];
        for q in orbit {
            row[pair_index(N, q.i(), q.j())] = 1;
        }
        rows.push(row);
        rhs.push(0);
    }
    (IntMatrix::from_i64_rows(&rows).expect("rectangular"), rhs)
}

/// Whether `N` solves [`frobenius_system`].
pub fn is_solution(n: &PairVector) -> bool {
    if n.degree() != N {
        return false;
    }
    let (m, rhs) = frobenius_system();
    let x: Vec<BigInt> = n.coeffs().iter().map(|&c| BigInt::from(c)).collect();
    let lhs = m.mul_vec(&x).expect("21 columns");
    lhs.iter().zip(&rhs).all(|(l, r)| *l == BigInt::from(*r))
}

/// `(pair, coefficients of r₁..r₆, constant)` for the closed-form family.
const FAMILY: [((usize, usize), [i64; 6], i64); 21] = [
    ((1, 2), [0, -1, 1, 1, 0, -1], 1),
    ((1, 3), [0, -1, 0, 0, 0, -1], 0),
    ((4, 7), [0, 1, -1, 0, 0, 1], 0),
    ((1, 7), [0, 1, -1, -1, -1, 1], 0),
    ((3, 6), [0, -1, 1, 0, 0, 0], 0),
    ((6, 7), [0, 0, 0, 1, 1, 0], 0),
    ((1, 5), [0, 1, 0, 0, 0, 0], 0),
    ((5, 6), [-1, -1, 1, 0, 0, -1], 0),
    ((2, 7), [0, 0, -1, -1, -1, 0], -1),
    ((2, 5), [1, 0, 0, 0, 0, 1], 0),
    ((4, 6), [-1, -1, 1, 1, 1, -1], 0),
    ((2, 4), [0, 1, -1, -1, 0, 0], -1),
    ((3, 5), [1, 1, -1, -1, 0, 1], 0),
    ((3, 4), [0, 0, 1, 1, 0, 0], 1),
    ((1, 4), [0, 0, 0, 0, 0, 1], 0),
    ((2, 6), [0, 0, 1, 0, 0, 0], 0),
    ((3, 7), [0, 1, -1, -1, -1, 0], 0),
    ((4, 5), [-1, -1, 0, 0, 0, -1], 0),
    ((1, 6), [0, 0, 0, 0, 1, 0], 0),
    ((2, 3), [1, 0, 0, 0, 0, 0], 0),
    ((5, 7), [0, 0, 0, 1, 0, 0], 0),
];

/// The 21×6 matrix and constant term of `r ↦ N(r)`, rows in pair order.
fn family_affine() -> (IntMatrix, Vec<i64>) {
    let m = pair_count(N);
    let mut rows = vec![vec![0i64; 6]; m];
    let mut constant = vec![0i64; m];
    for ((i, j), coeffs, c) in FAMILY {
        let k = pair_index(N, i, j);
        rows[k] = coeffs.to_vec();
        constant[k] = c;
    }
    (IntMatrix::from_i64_rows(&rows).expect("rectangular"), constant)
}

/// The solution with parameters `r₁..r₆`.
pub fn solution_from_r(r: [i64; 6]) -> PairVector {
    let mut v = PairVector::zero(N);
    for ((i, j), coeffs, c) in FAMILY {
        let value = c + coeffs.iter().zip(&r).map(|(a, b)| a * b).sum::<i64>();
        v.set(Pair::new_unchecked(i, j), value);
    }
    v
}

/// The parameters `r` with `solution_from_r(r) = N`.
pub fn parameters_of(n: &PairVector) -> Result<[i64; 6]> {
    if n.degree() != N {
        return Err(Error::DegreeMismatch { left: n.degree(), right: N });
    }
    let (m, constant) = family_affine();
    let b: Vec<i64> = n.coeffs().iter().zip(&constant).map(|(a, c)| a - c).collect();
    let sol = solve_integer_i64(&m, &b).map_err(|_| Error::NotASolution(format!("{n} is not in the family")))?;
    let r = sol.particular_i64().ok_or_else(|| Error::Range("parameters overflow i64".into()))?;
    Ok(r.try_into().expect("six parameters"))
}

/// All solutions of [`frobenius_system`]: `particular + span(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusFamily {
    pub particular: PairVector,
    pub kernel: Vec<PairVector>,
}

impl FrobeniusFamily {
    pub fn rank(&self) -> usize {
        self.kernel.len()
    }
}

fn to_pair_vector(v: &[BigInt]) -> Result<PairVector> {
    let coeffs: Option<Vec<i64>> = v.iter().map(|x| x.to_i64()).collect();
    PairVector::from_coeffs(N, coeffs.ok_or_else(|| Error::Range("coefficient overflows i64".into()))?)
}

fn columns_in_lattice(cols: &IntMatrix, lattice: &IntMatrix) -> bool {
    (0..cols.cols()).all(|j| solve_integer(lattice, &cols.column(j)).is_ok())
}

/// Solves the system and checks it against `N₀` and the closed-form family.
pub fn solve_family() -> Result<FrobeniusFamily> {
    let (m, rhs) = frobenius_system();
    let sol = solve_integer_i64(&m, &rhs).map_err(|_| Error::InconsistentSystem("no integer solution".into()))?;
    let particular = to_pair_vector(&sol.particular)?;
    let kernel = sol.kernel.iter().map(|k| to_pair_vector(k)).collect::<Result<Vec<_>>>()?;
    if !is_solution(&particular) || !is_solution(&n0()) {
        return Err(Error::InconsistentSystem("particular solution fails the system".into()));
    }
    // the closed form must give the same affine lattice
    let (fm, constant) = family_affine();
    if !is_solution(&PairVector::from_coeffs(N, constant)?) {
        return Err(Error::InconsistentSystem("closed form at r = 0 fails the system".into()));
    }
    let kernel_cols = IntMatrix::from_rows(kernel.len(), &transpose(&kernel)).expect("rectangular");
    if rank(&fm) != kernel.len()
        || !columns_in_lattice(&fm, &kernel_cols)
        || !columns_in_lattice(&kernel_cols, &fm)
    {
        return Err(Error::InconsistentSystem("closed form does not span the kernel".into()));
    }
    Ok(FrobeniusFamily { particular, kernel })
}

fn transpose(vs: &[PairVector]) -> Vec<Vec<i64>> {
    (0..pair_count(N)).map(|k| vs.iter().map(|v| v.coeffs()[k]).collect()).collect()
}

/// A verified relation `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: &'static str,
    pub lhs: QuotientElement,
    pub rhs: QuotientElement,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "relation": self.name,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "holds": self.holds(),
        })
    }
}

/// `⟨x, v⟩ ≅ F₂₁` with its defining relations checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusWitness {
    pub n: PairVector,
    pub x: QuotientElement,
    pub v: QuotientElement,
    pub certificate: Vec<RelationCheck>,
}

impl FrobeniusWitness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.n.to_map(),
            "x": self.x.to_json(),
            "v": self.v.to_json(),
            "certificate": self.certificate.iter().map(RelationCheck::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn build_frobenius(n: &PairVector) -> Result<FrobeniusWitness> {
    if n.degree() != N {
        return Err(Error::DegreeMismatch { left: n.degree(), right: N });
    }
    if !is_solution(n) {
        return Err(Error::NotASolution(n.to_string()));
    }
    let (x, _) = build_xy();
    let v = twisted_y(n);
    let id = QuotientElement::identity(N);
    let certificate = vec![
        RelationCheck { name: "x^3 = 1", lhs: x.pow(3), rhs: id.clone() },
        RelationCheck { name: "v^7 = 1", lhs: v.pow(7), rhs: id },
        RelationCheck { name: "x v x^-1 = v^2", lhs: v.conj(&x)?, rhs: v.pow(2) },
    ];
    if let Some(bad) = certificate.iter().find(|c| !c.holds()) {
        return Err(Error::InconsistentSystem(format!("relation {} fails for N = {n}", bad.name)));
    }
    Ok(FrobeniusWitness { n: n.clone(), x, v, certificate })
}

/// Pairs sharing each `s_k`: `θ_Q = s_k` for `Q` in group `k`. Each group is an `x`-orbit.
const S_GROUPS: [[(usize, usize); 3]; 7] = [
    [(1, 2), (1, 3), (2, 3)],
    [(2, 7), (1, 7), (3, 7)],
    [(3, 6), (2, 5), (1, 4)],
    [(3, 5), (2, 4), (1, 6)],
    [(4, 6), (5, 6), (4, 5)],
    [(4, 7), (6, 7), (5, 7)],
    [(1, 5), (3, 4), (2, 6)],
];

/// `s₁..s₇` for parameters `r`, with `s₄ = 0`.
fn s_values(r: [i64; 6]) -> [i64; 7] {
    let [r1, r2, r3, r4, r5, r6] = r;
    let s4 = 0;
    let s1 = s4 + (-r6 + r4 + r3 - r2 + 1);
    let s6 = s1 + (r6 - r3 + r2);
    let s3 = s6 + (r3 - r2);
    let s7 = s3 + r2;
    let s2 = s7 + (-r5 - r4 - r3);
    let s5 = s2 + (-r6 + r5 + r4 + r3 - r2 - r1);
    [s1, s2, s3, s4, s5, s6, s7]
}

/// A pure `Θ` with `Θ·x·Θ⁻¹ = x` and `Θ·v₀·Θ⁻¹ = N·y`.
pub fn conjugator_between(n: &PairVector) -> Result<PairVector> {
    if !is_solution(n) {
        return Err(Error::NotASolution(n.to_string()));
    }
    let s = s_values(parameters_of(n)?);
    let mut theta = PairVector::zero(N);
    for (group, sk) in S_GROUPS.iter().zip(s) {
        for &(i, j) in group {
            theta.set(Pair::new_unchecked(i, j), sk);
        }
    }
    let (x, _) = build_xy();
    let t = QuotientElement::pure(theta.clone());
    if x.conj(&t)? != x || v0().conj(&t)? != twisted_y(n) {
        return Err(Error::InconsistentSystem(format!("Θ = {theta} fails verification")));
    }
    Ok(theta)
}

/// A conjugator taking a Frobenius subgroup onto `⟨x, v₀⟩`, with its factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusConjugation {
    /// `Θ⁻¹·λ₂⁻¹·λ₁·ĉ`
    #[serde(skip)]
    pub conjugator: QuotientElement,
    #[serde(skip)]
    pub permutation_step: QuotientElement,
    #[serde(skip)]
    pub lambda1: QuotientElement,
    #[serde(skip)]
    pub lambda2: QuotientElement,
    pub theta: PairVector,
    pub parameters: [i64; 6],
}

impl FrobeniusConjugation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "conjugator": self.conjugator.to_json(),
            "conjugator_word": self.conjugator.to_word().free_reduce().to_string(),
            "permutation_step": self.permutation_step.to_json(),
            "lambda1": self.lambda1.to_json(),
            "lambda2": self.lambda2.to_json(),
            "theta": self.theta.to_map(),
            "parameters": self.parameters,
        })
    }
}

fn order_is(g: &QuotientElement, k: u64) -> bool {
    g.element_order() == Order::Finite(k)
}

/// Checks `g3³ = g7⁷ = 1` and `g3·g7·g3⁻¹ = g7²` in `B_7/[P_7, P_7]`.
pub fn check_frobenius_relations(g3: &QuotientElement, g7: &QuotientElement) -> Result<()> {
    if g3.degree() != N || g7.degree() != N {
        return Err(Error::NotFrobenius(format!("generators must have degree {N}")));
    }
    if !order_is(g3, 3) || !order_is(g7, 7) {
        return Err(Error::NotFrobenius("generators must have orders 3 and 7".into()));
    }
    if g7.conj(g3)? != g7.pow(2) {
        return Err(Error::NotFrobenius("g3·g7·g3⁻¹ differs from g7²".into()));
    }
    Ok(())
}

/// The lift `ĉ` of a permutation with `perm(ĉ·g7·ĉ⁻¹) = α`.
fn permutation_step(g7: &QuotientElement) -> Result<QuotientElement> {
    let cycle = g7.perm().cycles().into_iter().next().expect("7-cycle");
    let target = alpha_perm().cycles().into_iter().next().expect("7-cycle");
    let mut images = vec![0; N];
    for (t, a) in target.iter().zip(&cycle) {
        images[t - 1] = *a;
    }
    Ok(QuotientElement::lift(Permutation::from_images(&images)?))
}

fn centralizer_candidates() -> Vec<QuotientElement> {
    ["", "1 -2", "4 -5"].iter().map(|w| QuotientElement::parse_word(N, w).expect("fixed word")).collect()
}

/// A verified `C` with `C·⟨g3, g7⟩·C⁻¹ = ⟨x, v₀⟩`.
pub fn standardize_frobenius(g3: &QuotientElement, g7: &QuotientElement) -> Result<FrobeniusConjugation> {
    check_frobenius_relations(g3, g7)?;
    let (x, y) = build_xy();
    let (alpha, beta) = (alpha_perm(), beta_perm());

    let c_hat = permutation_step(g7)?;
    let h1 = closure(&[g3.conj(&c_hat)?, g7.conj(&c_hat)?], 21).map_err(|e| match e {
        Error::ClosureTooLarge(_) => Error::NotFrobenius("generated subgroup has more than 21 elements".into()),
        other => other,
    })?;
    let find = |p: &Permutation| {
        h1.iter()
            .find(|g| g.perm() == p)
            .cloned()
            .ok_or_else(|| Error::NotFrobenius(format!("no element with permutation {p}")))
    };
    let (x_tilde, y_tilde) = (find(&beta)?, find(&alpha)?);

    let lambda1 = match are_conjugate(&x_tilde, &x)? {
        Conjugacy::Conjugate(c) => c,
        _ => return Err(Error::InconsistentSystem("order-3 elements with equal permutation not conjugate".into())),
    };
    let y1 = y_tilde.conj(&lambda1)?;

    let alpha_powers: Vec<Permutation> = (1..7).map(|k| alpha.pow(k)).collect();
    let mut chosen = None;
    for lambda2 in centralizer_candidates() {
        let l2inv = lambda2.inv();
        if x.conj(&l2inv)? != x {
            continue;
        }
        let w = y1.conj(&l2inv)?;
        if alpha_powers.contains(w.perm()) {
            let k = (1..7).find(|&k| w.pow(k).perm() == &alpha).expect("a power of α");
            chosen = Some((lambda2, w.pow(k)));
            break;
        }
    }
    let (lambda2, v) =
        chosen.ok_or_else(|| Error::InconsistentSystem("no centralizer correction reaches ⟨α⟩".into()))?;

    let twist = v.mul(&y.inv())?;
    debug_assert!(twist.is_pure());
    let n = twist.vec().clone();
    let theta = conjugator_between(&n)?;
    let parameters = parameters_of(&n)?;

    let conjugator = QuotientElement::pure(theta.neg())
        .mul(&lambda2.inv())?
        .mul(&lambda1)?
        .mul(&c_hat)?;
    let image: BTreeSet<QuotientElement> =
        closure(&[g3.conj(&conjugator)?, g7.conj(&conjugator)?], 21)?.into_iter().collect();
    let standard: BTreeSet<QuotientElement> = closure(&[x, v0()], 21)?.into_iter().collect();
    if image != standard {
        return Err(Error::InconsistentSystem("conjugated subgroup differs from ⟨x, v₀⟩".into()));
    }
    Ok(FrobeniusConjugation { conjugator, permutation_step: c_hat, lambda1, lambda2, theta, parameters })
}
