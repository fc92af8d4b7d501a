use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{decompose, grade, PosetError};
use crate::elements::GenMap;
use crate::lattice::{CandidateMap, Point, RegionDecomposition};

fn check_quadrant(a: &GenMap, i: usize) -> Result<(), PosetError> {
    if (1..=a.n()).contains(&i) {
        Ok(())
    } else {
        Err(PosetError::BadQuadrant(i))
    }
}

/// Shifted vector `m` of a predecessor below `t_i`.
fn lowered(a: &GenMap, i: usize) -> Vec<(i64, i64)> {
    let mut m = a.m().to_vec();
    m[i - 1].0 -= 1;
    m[i - 1].1 -= 1;
    m
}

/// The `β` with `t_i·β = a` that agrees with `t_i⁻¹·a` on `S·t_i` and sends
/// column 1 and row 1 of quadrant `i` into `S − S·a` as described by `cand`.
pub fn predecessor_from_candidate(
    a: &GenMap,
    region: &RegionDecomposition,
    cand: &CandidateMap,
) -> Result<GenMap, PosetError> {
    let i = cand.quadrant;
    check_quadrant(a, i)?;
    cand.image(region).ok_or(PosetError::ImageNotInRegion)?;
    let (v, h) = cand.tails(region).ok_or(PosetError::ImageNotInRegion)?;
    let f = cand.finite.len() as i64;
    let x0 = a.x0() + 1;
    let y0 = (a.y0() + 1).max(f + 1);
    Ok(GenMap::from_fn(a.n(), x0, y0, lowered(a, i), |p| {
        if p.quadrant != i {
            a.apply(p)
        } else if p.x == 1 {
            if p.y <= f {
                cand.finite[(p.y - 1) as usize]
            } else {
                v.nth(p.y - f)
            }
        } else if p.y == 1 {
            h.nth(p.x - 1)
        } else {
            a.apply(Point::new(p.x - 1, p.y - 1, i))
        }
    }))
}

/// A random way of mapping the boundary of quadrant `i` into `region`: any
/// vertical and horizontal ray, small offsets, and a few finite points taken
/// from the finite part or from the skipped beginnings of the chosen rays.
pub fn random_candidate(region: &RegionDecomposition, i: usize, rng: &mut impl Rng) -> Option<CandidateMap> {
    if region.vrays.is_empty() || region.hrays.is_empty() {
        return None;
    }
    let vray = rng.gen_range(0..region.vrays.len());
    let hray = rng.gen_range(0..region.hrays.len());
    let v_offset = rng.gen_range(0..=2);
    let h_offset = rng.gen_range(0..=2);
    let mut pool: BTreeSet<Point> = region.finite_part.clone();
    let (v, h) = (region.vrays[vray], region.hrays[hray]);
    pool.extend((0..v_offset).map(|k| v.nth(k + 1)));
    pool.extend((0..h_offset).map(|k| h.nth(k + 1)));
    let mut pool: Vec<Point> = pool.into_iter().collect();
    pool.shuffle(rng);
    let take = rng.gen_range(0..=pool.len().min(3));
    pool.truncate(take);
    let cand = CandidateMap { quadrant: i, vray, v_offset, hray, h_offset, finite: pool };
    cand.image(region).map(|_| cand)
}

/// Some `β ∈ M` with `t_i·β = a`. Without a seed the first vertical and
/// horizontal rays of the decomposition are used directly; a seed selects a
/// random admissible alternative.
pub fn predecessor(a: &GenMap, i: usize, seed: Option<u64>) -> Result<GenMap, PosetError> {
    check_quadrant(a, i)?;
    let region = decompose(a)?;
    if region.vrays.is_empty() {
        return Err(PosetError::GradeZero);
    }
    let cand = match seed {
        None => CandidateMap::plain(i, 0, 0),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            random_candidate(&region, i, &mut rng).unwrap_or_else(|| CandidateMap::plain(i, 0, 0))
        }
    };
    predecessor_from_candidate(a, &region, &cand)
}

/// For `gr(a) = 1`: the bijective `β` with `t_i·β = a`. Row 1 of quadrant `i`
/// runs along the horizontal ray; column 1 first covers the finite part and
/// then climbs the vertical ray, so that nothing of `S − S·a` is missed.
pub fn predecessor_surjective(a: &GenMap, i: usize) -> Result<GenMap, PosetError> {
    check_quadrant(a, i)?;
    let g = grade(a)?;
    if g != 1 {
        return Err(PosetError::GradeNotOne(g));
    }
    let region = decompose(a)?;
    let (v, h) = (region.vrays[0], region.hrays[0]);
    let finite: Vec<Point> = region.finite_part.iter().copied().collect();
    let r = finite.len() as i64;
    let x0 = a.x0() + 1;
    let y0 = (a.y0() + 1).max(r + 2);
    Ok(GenMap::from_fn(a.n(), x0, y0, lowered(a, i), |p| {
        if p.quadrant != i {
            a.apply(p)
        } else if p.y == 1 {
            h.nth(p.x)
        } else if p.x == 1 {
            let k = p.y - 1;
            if k <= r {
                finite[(k - 1) as usize]
            } else {
                v.nth(k - r)
            }
        } else {
            a.apply(Point::new(p.x - 1, p.y - 1, i))
        }
    }))
}

/// An ascending chain `α_floor < … < α_top = a`, with
/// `t_{steps[j]}·elements[j] = elements[j+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    #[serde(skip)]
    pub elements: Vec<GenMap>,
    pub steps: Vec<usize>,
}

impl ChainCertificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-check every step by composition.
    pub fn verify(&self) -> bool {
        self.elements.len() == self.steps.len() + 1
            && self.steps.iter().enumerate().all(|(j, &i)| {
                GenMap::t(self.elements[j].n(), i).compose(&self.elements[j]).ok().as_ref()
                    == Some(&self.elements[j + 1])
            })
    }
}

/// Descend from `a` by canonical predecessors below `t_1` until the grade
/// reaches `floor`.
pub fn max_chain(a: &GenMap, floor: i64) -> Result<ChainCertificate, PosetError> {
    let g = grade(a)?;
    if g < floor {
        return Err(PosetError::BelowFloor { grade: g, floor });
    }
    let mut elements = vec![a.clone()];
    for _ in floor..g {
        let next = predecessor(elements.last().expect("nonempty"), 1, None)?;
        elements.push(next);
    }
    elements.reverse();
    let steps = vec![1; elements.len() - 1];
    Ok(ChainCertificate { elements, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predecessor_of_t1_is_identity() {
        assert_eq!(predecessor(&GenMap::t(2, 1), 1, None).unwrap(), GenMap::identity(2));
        assert_eq!(predecessor(&GenMap::identity(2), 1, None), Err(PosetError::GradeZero));
    }

    #[test]
    fn surjective_predecessor_cases() {
        let b = predecessor_surjective(&GenMap::t(2, 1), 1).unwrap();
        assert!(b.classify().is_bijective);
        let b = predecessor_surjective(&GenMap::t(2, 2), 1).unwrap();
        assert_eq!(GenMap::t(2, 1).compose(&b).unwrap(), GenMap::t(2, 2));
        assert!(b.classify().in_gn);
        assert_eq!(predecessor_surjective(&GenMap::translation(&[1, 1]), 1), Err(PosetError::GradeNotOne(2)));
    }

    #[test]
    fn chains_have_expected_length() {
        assert!(max_chain(&GenMap::identity(2), 0).unwrap().is_empty());
        let c = max_chain(&GenMap::translation(&[1, 1]), 0).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.verify());
        let c = max_chain(&GenMap::translation(&[3, 2]), 3).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.verify());
    }
}
