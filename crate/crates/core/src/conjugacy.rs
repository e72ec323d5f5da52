//! Conjugacy of finite-order elements.
//!
//! Two finite-order elements are conjugate iff their permutations have the
//! same cycle type. The witness is built in two steps: a permutation-level
//! conjugation moving the permutation to the standard block form `θ`, then a
//! pure correction solving `x_{i-1} - x_i = m_i` along each orbit of `δ`.

use num_integer::Integer;

use crate::braidword::PairVector;
use crate::error::{Error, Result};
use crate::orbits::enumerate_orbits;
use crate::permutation::{CycleType, Permutation};
use crate::quotient::{Order, QuotientElement};
use crate::torsion::{delta_composite, BlockSpec};

/// The block spec matching the cycle type of a permutation with only odd cycles.
fn spec_for(p: &Permutation) -> Result<BlockSpec> {
    let mut blocks = p.cycle_type().parts().to_vec();
    blocks.reverse();
    BlockSpec::new(p.degree(), blocks)
}

/// A lift `c` of a permutation with `conj(g, c)` having permutation `θ(spec)`.
///
/// Cycles of `perm(g)` are ordered by (length, least point); each is sent to
/// its block with the least point first. Fixed points fill the remaining
/// positions in increasing order.
pub fn standardize(g: &QuotientElement) -> Result<(QuotientElement, BlockSpec)> {
    if !g.element_order().is_finite() {
        return Err(Error::InfiniteOrder);
    }
    let p = g.perm();
    let n = p.degree();
    let spec = spec_for(p)?;
    let mut cycles = p.cycles();
    cycles.sort_by_key(|c| (c.len(), c[0]));
    // images[b] = point of g sitting at standard position b + 1
    let mut images: Vec<usize> = cycles.into_iter().flatten().collect();
    images.extend(p.fixed_points());
    let c = QuotientElement::lift(Permutation::from_images(&images)?);
    let standard = g.conj(&c)?;
    if standard.perm() != &spec.theta() {
        return Err(Error::InconsistentSystem(format!("standardizing {} did not reach θ", g.perm())));
    }
    debug_assert_eq!(n, spec.degree());
    Ok((c, spec))
}

/// `c` with `conj(g, c) = δ(spec)` for the standardized block spec of `g`.
pub fn conjugator_to_delta(g: &QuotientElement) -> Result<QuotientElement> {
    let (c0, spec) = standardize(g)?;
    let standard = g.conj(&c0)?;
    let delta = delta_composite(&spec);
    let a = standard.mul(&delta.inv())?;
    debug_assert!(a.is_pure());
    let mut x = PairVector::zero(g.degree());
    for orbit in enumerate_orbits(&delta).orbits {
        // orbit[i+1] = δ · orbit[i] · δ⁻¹; x_q = 0 and x_{i-1} = m_i + … + m_q
        let mut acc = 0;
        for i in (1..orbit.len()).rev() {
            acc += a.vec().get(orbit[i]);
            x.set(orbit[i - 1], acc);
        }
    }
    let c = QuotientElement::pure(x).mul(&c0)?;
    if g.conj(&c)? != delta {
        return Err(Error::InconsistentSystem(format!("conjugator to δ failed for {g}")));
    }
    Ok(c)
}

/// Outcome of a conjugacy test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjugacy {
    /// `conj(g, witness) = h`, verified.
    Conjugate(QuotientElement),
    NotConjugate,
    /// Both elements have infinite order and the same cycle type.
    Unknown,
}

/// Decides whether `h = c·g·c⁻¹` for some `c`, with a verified witness when it does.
pub fn are_conjugate(g: &QuotientElement, h: &QuotientElement) -> Result<Conjugacy> {
    if g.degree() != h.degree() {
        return Err(Error::DegreeMismatch { left: g.degree(), right: h.degree() });
    }
    if g.perm().cycle_type() != h.perm().cycle_type() {
        return Ok(Conjugacy::NotConjugate);
    }
    if g == h {
        return Ok(Conjugacy::Conjugate(QuotientElement::identity(g.degree())));
    }
    match (g.element_order(), h.element_order()) {
        (Order::Finite(_), Order::Finite(_)) => {
            let c = conjugator_to_delta(h)?.inv().mul(&conjugator_to_delta(g)?)?;
            if &g.conj(&c)? != h {
                return Err(Error::InconsistentSystem("conjugacy witness failed verification".into()));
            }
            Ok(Conjugacy::Conjugate(c))
        }
        (Order::Infinite, Order::Infinite) => Ok(Conjugacy::Unknown),
        _ => Ok(Conjugacy::NotConjugate),
    }
}

/// Block specs (multisets of odd parts `>= 3`, sum `<= n`) whose lcm is `k`.
pub fn class_specs(n: usize, k: u64) -> Result<Vec<BlockSpec>> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::Range(format!("class count needs odd k >= 3, got {k}")));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    collect_specs(n, 3, &mut current, &mut |blocks: &[usize]| {
        if blocks.iter().fold(1u64, |acc, &b| acc.lcm(&(b as u64))) == k {
            out.push(BlockSpec::new(n, blocks.to_vec()).expect("enumerated specs are valid"));
        }
    });
    Ok(out)
}

fn collect_specs(remaining: usize, min: usize, current: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if !current.is_empty() {
        visit(current);
    }
    let mut part = min;
    while part <= remaining {
        current.push(part);
        collect_specs(remaining - part, part, current, visit);
        current.pop();
        part += 2;
    }
}

/// Number of conjugacy classes of elements of odd order `k` in `B_n/[P_n, P_n]`.
pub fn count_classes(n: usize, k: u64) -> Result<usize> {
    Ok(class_specs(n, k)?.len())
}

/// The cycle type a standardized element of `spec` has.
pub fn spec_cycle_type(spec: &BlockSpec) -> CycleType {
    CycleType::new(spec.degree(), spec.blocks().to_vec())
}
