//! Exact arithmetic in the quotients `B_n / [P_n, P_n]` of the Artin braid groups
//! by the commutator subgroup of the pure braid group.

pub mod braidword;
pub mod conjugacy;
pub mod error;
pub mod frobenius;
pub mod orbits;
pub mod permutation;
pub mod quotient;
pub mod subgroups;
pub mod torsion;
pub mod zlinalg;

pub use braidword::{BraidWord, PairVector};
pub use error::{Error, Result};
pub use permutation::{CycleType, Pair, Permutation};
pub use quotient::{canonical_lift, Order, Quotient, QuotientElement, Section};
pub use torsion::BlockSpec;
pub use zlinalg::IntMatrix;
