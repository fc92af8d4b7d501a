//! The ordered monoid `M`: `α ≤ β` iff `t·α = β` for a translation `t`
//! (with `t` applied first). Grade, predecessors, chains, orbit invariants,
//! greatest lower bounds and stabilizers.

mod chain;
mod glb;
mod orbit;
mod sample;
mod stabilizer;

pub use chain::{
    max_chain, predecessor, predecessor_from_candidate, predecessor_surjective, random_candidate, ChainCertificate,
};
pub use glb::{glb, glb_criterion, maximal_index, restriction_image};
pub use orbit::{descend_to_group, orbit_invariant, orbit_witness, OrbitInvariant};
pub use sample::{
    extend_maximal_family, random_chain, random_maximal_family, random_monoid, random_region_element, random_step,
};
pub use stabilizer::{kernel_element, stabilizer_conjugate, RayEnumeration};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elements::{ElementError, GenMap};
use crate::lattice::{LatticeError, Point, RegionDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("element is not in M (some quadrant is not translated along the diagonal)")]
    NotInM,
    #[error("quadrant index {0} out of range")]
    BadQuadrant(usize),
    #[error("grade is zero: no predecessor exists")]
    GradeZero,
    #[error("grade is {0}, expected exactly 1")]
    GradeNotOne(i64),
    #[error("grade {grade} is below the floor {floor}")]
    BelowFloor { grade: i64, floor: i64 },
    #[error("not a strictly ascending chain at position {0}")]
    NotAChain(usize),
    #[error("orbit invariants differ")]
    InvariantMismatch,
    #[error("element {0} of the family is not maximal below alpha")]
    NotMaximalBelow(usize),
    #[error("the family has no greatest lower bound of the required form")]
    CriterionFailed,
    #[error("candidate map does not land injectively in the region")]
    ImageNotInRegion,
    #[error("element moves {0}, which lies outside the region")]
    NotSupported(Point),
    #[error("element moves the carrier line of ray {0}")]
    NotInKernel(String),
    #[error("region has no rays to enumerate")]
    NoRays,
    #[error("constructed witness failed verification")]
    WitnessFailed,
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `t_1^{a_1} ⋯ t_n^{a_n}`; the exponent vector determines the translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Translation {
    pub exponents: Vec<i64>,
}

impl Translation {
    pub fn identity(n: usize) -> Self {
        Translation { exponents: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn grade(&self) -> i64 {
        self.exponents.iter().sum()
    }

    pub fn to_genmap(&self) -> GenMap {
        GenMap::translation(&self.exponents)
    }
}

fn require_m(a: &GenMap) -> Result<(), PosetError> {
    if a.is_diagonal() {
        Ok(())
    } else {
        Err(PosetError::NotInM)
    }
}

/// The translation `t` with `t·a = b`, if `a ≤ b`.
pub fn leq(a: &GenMap, b: &GenMap) -> Option<Translation> {
    if a.n() != b.n() {
        return None;
    }
    let exponents: Vec<i64> = a.m().iter().zip(b.m()).map(|(u, v)| v.0 - u.0).collect();
    if exponents.iter().any(|&c| c < 0) {
        return None;
    }
    let t = Translation { exponents };
    (t.to_genmap().compose(a).ok()? == *b).then_some(t)
}

/// `t_α` with every exponent `max(x0, y0) − 1`: after it, every point is
/// beyond the threshold of `a`, so `t_α·a` is a translation.
pub fn cofinal_translation(a: &GenMap) -> Translation {
    let l = a.x0().max(a.y0());
    Translation { exponents: vec![l - 1; a.n()] }
}

/// A common upper bound: `t_a·t_b`, where `t_a = t_α·a` and `t_b = t_β·b` are
/// the translations reached through the cofinal translations.
pub fn upper_bound(a: &GenMap, b: &GenMap) -> Result<GenMap, PosetError> {
    require_m(a)?;
    require_m(b)?;
    if a.n() != b.n() {
        return Err(ElementError::QuadrantMismatch(a.n(), b.n()).into());
    }
    let ta = cofinal_translation(a).to_genmap().compose(a)?;
    let tb = cofinal_translation(b).to_genmap().compose(b)?;
    Ok(ta.compose(&tb)?)
}

/// Canonical decomposition of `S − S·a`.
pub fn decompose(a: &GenMap) -> Result<RegionDecomposition, PosetError> {
    require_m(a)?;
    Ok(a.image_complement())
}

/// `gr(a) = Σ m_i`.
pub fn grade(a: &GenMap) -> Result<i64, PosetError> {
    require_m(a)?;
    Ok(a.m().iter().map(|p| p.0).sum())
}

/// Bijective `g` must preserve the grade; any `g ∈ M` may only raise it.
pub fn grade_invariance_check(a: &GenMap, g: &GenMap) -> Result<bool, PosetError> {
    let before = grade(a)?;
    let after = grade(&a.compose(g)?)?;
    let class = g.classify();
    if class.in_gn {
        Ok(before == after)
    } else if class.in_m {
        Ok(before <= after)
    } else {
        Err(PosetError::NotInM)
    }
}

/// All translations of grade at most `k`, by grade and then in descending
/// lexicographic order of exponent vectors.
pub fn enumerate_t_leq(n: usize, k: i64) -> Vec<Translation> {
    fn fill(rest: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Translation>) {
        if rest == 1 {
            prefix.push(total);
            out.push(Translation { exponents: prefix.clone() });
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            fill(rest - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=k.max(-1) {
        fill(n, total, &mut Vec::new(), &mut out);
    }
    // A word in the generators realizing t has length gr(t) = Σ exponents.
    debug_assert!(out.iter().all(|t| t.to_genmap().image_complement().vrays.len() as i64 == t.grade()));
    out
}
