//! Seeded samplers for chains, maximal families and stabilizer elements.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{
    decompose, kernel_element, maximal_index, predecessor_from_candidate, random_candidate, restriction_image,
    RayEnumeration, Translation,
};
use crate::elements::{generators, random_houghton, sample_element, Bounds, ClassSpec, GenMap};
use crate::lattice::{CandidateMap, Point, RegionDecomposition};

/// `t·g` with `g ∈ G_n` within the default bounds and `t` a translation
/// whose exponents sum to a value drawn from `grades`.
pub fn random_monoid(rng: &mut impl Rng, n: usize, grades: RangeInclusive<i64>) -> GenMap {
    let total = rng.gen_range(grades);
    let mut e = vec![0i64; n];
    for _ in 0..total {
        e[rng.gen_range(0..n)] += 1;
    }
    let g = sample_element(rng, n, ClassSpec::Gn, &Bounds::default()).expect("default bounds are feasible");
    GenMap::translation(&e).compose(&g).expect("same quadrant count")
}

/// A nonzero translation with exponents in `{0, 1}`.
pub fn random_step(rng: &mut impl Rng, n: usize) -> Translation {
    loop {
        let exponents: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
        if exponents.iter().any(|&e| e > 0) {
            return Translation { exponents };
        }
    }
}

/// A strictly ascending chain `a_0 < a_1 < …` with `len` elements.
pub fn random_chain(rng: &mut impl Rng, n: usize, len: usize) -> Vec<GenMap> {
    let mut chain = vec![random_monoid(rng, n, 0..=2)];
    for _ in 1..len {
        let t = random_step(rng, n).to_genmap();
        let next = t.compose(chain.last().expect("nonempty")).expect("same quadrant count");
        chain.push(next);
    }
    chain
}

/// `p` elements `β_j` with `t_{i_j}·β_j = alpha` for distinct quadrants
/// `i_j`, whose boundary images use distinct rays and disjoint finite sets.
/// `None` if `p` exceeds the number of quadrants or of rays.
pub fn random_maximal_family(rng: &mut impl Rng, alpha: &GenMap, p: usize) -> Option<Vec<GenMap>> {
    let region = decompose(alpha).ok()?;
    let n = alpha.n();
    if p > n || p > region.vrays.len() {
        return None;
    }
    let mut quads: Vec<usize> = (1..=n).collect();
    let mut vs: Vec<usize> = (0..region.vrays.len()).collect();
    let mut hs: Vec<usize> = (0..region.hrays.len()).collect();
    quads.shuffle(rng);
    vs.shuffle(rng);
    hs.shuffle(rng);
    let mut pool: Vec<Point> = region.finite_part.iter().copied().collect();
    pool.shuffle(rng);
    (0..p)
        .map(|j| {
            let (v, h) = (region.vrays[vs[j]], region.hrays[hs[j]]);
            let v_offset = rng.gen_range(0..=2);
            let h_offset = rng.gen_range(0..=2);
            let mut finite: Vec<Point> = Vec::new();
            for _ in 0..rng.gen_range(0..=2) {
                if let Some(q) = pool.pop() {
                    finite.push(q);
                }
            }
            // Points skipped at the start of the member's own rays may be used too.
            finite.extend((1..=v_offset).map(|k| v.nth(k)).filter(|_| rng.gen_bool(0.5)));
            finite.extend((1..=h_offset).map(|k| h.nth(k)).filter(|_| rng.gen_bool(0.5)));
            finite.shuffle(rng);
            let cand = CandidateMap { quadrant: quads[j], vray: vs[j], v_offset, hray: hs[j], h_offset, finite };
            predecessor_from_candidate(alpha, &region, &cand).ok()
        })
        .collect()
}

/// One more maximal element below `alpha`, in a quadrant unused by `family`
/// and with a boundary image disjoint from theirs, if a random search finds
/// one.
pub fn extend_maximal_family(rng: &mut impl Rng, alpha: &GenMap, family: &[GenMap]) -> Option<GenMap> {
    let used = family.iter().map(|b| maximal_index(alpha, b)).collect::<Option<Vec<usize>>>()?;
    let images: Vec<RegionDecomposition> = family.iter().zip(&used).map(|(b, &i)| restriction_image(b, i)).collect();
    let free: Vec<usize> = (1..=alpha.n()).filter(|i| !used.contains(i)).collect();
    let region = decompose(alpha).ok()?;
    for _ in 0..200 {
        let i = *free.choose(rng)?;
        let cand = random_candidate(&region, i, rng)?;
        let image = cand.image(&region)?;
        if images.iter().all(|other| other.common_point(&image).is_none()) {
            return predecessor_from_candidate(alpha, &region, &cand).ok();
        }
    }
    None
}

/// An element of `G_n` that moves only points of `region` and keeps every
/// ray on its carrier: a random Houghton permutation of the rays carried
/// over by [`kernel_element`], followed by swaps of region points.
/// `None` if the region has no rays.
pub fn random_region_element(rng: &mut impl Rng, n: usize, region: &RegionDecomposition) -> Option<GenMap> {
    let en = RayEnumeration::new(region);
    if en.ray_count() == 0 {
        return None;
    }
    let steps = rng.gen_range(0..=3);
    let h = random_houghton(rng, en.ray_count(), 4, steps);
    let mut g = kernel_element(n, region, &h).ok()?;
    let pts: Vec<Point> = region.window_points(n, region.extent() + 2).into_iter().collect();
    for _ in 0..rng.gen_range(0..=2) {
        let a = *pts.choose(rng)?;
        let b = *pts.choose(rng)?;
        g = g.compose(&generators::point_swap(n, a, b)).ok()?;
    }
    Some(g)
}
