//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use houghton::elements::{GenMap, HoughtonMap, RawGenMap, RawHoughtonMap};
use houghton::lattice::Point;
use houghton::topology::SimplicialComplex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture exists")
}

pub fn raw_fixture(name: &str) -> RawGenMap {
    serde_json::from_str(&fixture(name)).expect("fixture parses")
}

/// The two-quadrant example with threshold `(5,4)`, `m_1 = (2,1)`,
/// `m_2 = (−2,−1)` and four exceptional lines.
pub fn skew2() -> GenMap {
    GenMap::try_from_raw(&raw_fixture("skew2.json")).expect("valid element")
}

/// The three-ray Houghton permutation with `m = (2,−1,−1)`, `x0 = 8`.
pub fn houghton3() -> HoughtonMap {
    let raw: RawHoughtonMap = serde_json::from_str(&fixture("houghton3.json")).expect("fixture parses");
    HoughtonMap::try_from_raw(&raw).expect("valid permutation")
}

/// Evaluate a file-level map by scanning its tables, without building a
/// [`GenMap`].
pub fn raw_apply(raw: &RawGenMap, p: Point) -> Point {
    let [mx, my] = raw.m[p.quadrant - 1];
    match (p.x >= raw.x0, p.y >= raw.y0) {
        (true, true) => Point::new(p.x + mx, p.y + my, p.quadrant),
        (false, true) => {
            let e = raw.colmap.iter().find(|e| e.from.pos == p.x && e.from.quadrant == p.quadrant).unwrap();
            Point::new(e.to.pos, p.y + e.shift, e.to.quadrant)
        }
        (true, false) => {
            let e = raw.rowmap.iter().find(|e| e.from.pos == p.y && e.from.quadrant == p.quadrant).unwrap();
            Point::new(p.x + e.shift, e.to.pos, e.to.quadrant)
        }
        (false, false) => raw.rect.iter().find(|e| e.from == p).unwrap().to,
    }
}

/// All points of `[1..w]²` in each quadrant.
pub fn window(n: usize, w: i64) -> Vec<Point> {
    let mut out = Vec::new();
    for q in 1..=n {
        for x in 1..=w {
            for y in 1..=w {
                out.push(Point::new(x, y, q));
            }
        }
    }
    out
}

/// A window large enough that pointwise agreement on it forces equality of
/// the two canonical maps (every threshold and shift is well inside).
pub fn safe_width(gs: &[&GenMap]) -> i64 {
    let reach = gs
        .iter()
        .map(|g| {
            let shifts = g.m().iter().map(|&(a, b)| a.abs().max(b.abs())).max().unwrap_or(0);
            g.x0().max(g.y0()) + shifts
        })
        .sum::<i64>();
    reach + 3
}

pub fn pointwise_equal(a: &GenMap, b: &GenMap, w: i64) -> bool {
    a.n() == b.n() && window(a.n(), w).into_iter().all(|p| a.apply(p) == b.apply(p))
}

// ------------------------------------------------------------- homology oracle

/// All faces of a complex, built straight from the facets.
pub fn faces_by_dim(k: &SimplicialComplex) -> Vec<Vec<Vec<usize>>> {
    let mut sets: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for f in k.facets() {
        for size in 1..=f.len() {
            for c in itertools::Itertools::combinations(f.iter().copied(), size) {
                if sets.len() < size {
                    sets.resize(size, BTreeSet::new());
                }
                sets[size - 1].insert(c);
            }
        }
    }
    sets.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Dense boundary matrix `∂_d`, rows indexed by `(d−1)`-faces.
pub fn dense_boundary(faces: &[Vec<Vec<usize>>], d: usize) -> Vec<Vec<i64>> {
    if d == 0 {
        return vec![vec![1; faces[0].len()]];
    }
    let lower = &faces[d - 1];
    let mut m = vec![vec![0i64; faces[d].len()]; lower.len()];
    for (c, f) in faces[d].iter().enumerate() {
        for skip in 0..f.len() {
            let mut g = f.clone();
            g.remove(skip);
            let r = lower.binary_search(&g).unwrap();
            m[r][c] = if skip % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Rank over `ℚ` by fraction-free elimination with row content removal.
pub fn rank_q(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let (f, g) = (a[rank][c].clone(), a[r][c].clone());
            let (top, rest) = a.split_at_mut(r);
            for (x, y) in rest[0][c..cols].iter_mut().zip(&top[rank][c..cols]) {
                *x = &*x * &f - y * &g;
            }
            let content = a[r].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !content.is_zero() {
                for x in a[r].iter_mut() {
                    *x = &*x / &content;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `𝔽_p`.
pub fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let inv = |x: i64| {
        let (mut r, mut e, mut b) = (1i64, p - 2, x);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let iv = inv(a[rank][c]);
        for r in rank + 1..a.len() {
            if a[r][c] != 0 {
                let f = a[r][c] * iv % p;
                let (top, rest) = a.split_at_mut(r);
                for (x, &y) in rest[0][c..cols].iter_mut().zip(&top[rank][c..cols]) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers over `ℚ` and, for each small prime `p`, the number
/// of invariant factors of `∂_{d+1}` divisible by `p`.
pub struct OracleHomology {
    pub betti: Vec<u64>,
    pub p_torsion: Vec<(i64, Vec<usize>)>,
}

pub const SMALL_PRIMES: [i64; 4] = [2, 3, 5, 7];

pub fn oracle_homology(k: &SimplicialComplex) -> OracleHomology {
    let faces = faces_by_dim(k);
    let top = faces.len();
    let mats: Vec<Vec<Vec<i64>>> = (0..top).map(|d| dense_boundary(&faces, d)).collect();
    let mut rq: Vec<usize> = mats.iter().map(|m| rank_q(m)).collect();
    rq.push(0);
    let betti = (0..top).map(|d| (faces[d].len() - rq[d] - rq[d + 1]) as u64).collect();
    let p_torsion = SMALL_PRIMES
        .iter()
        .map(|&p| {
            let mut rp: Vec<usize> = mats.iter().map(|m| rank_mod(m, p)).collect();
            rp.push(0);
            (p, (0..top).map(|d| rq[d + 1] - rp[d + 1]).collect())
        })
        .collect();
    OracleHomology { betti, p_torsion }
}

pub fn count_divisible(factors: &[BigInt], p: i64) -> usize {
    let p = BigInt::from(p);
    factors.iter().filter(|f| (*f % &p).is_zero() && f.is_positive()).count()
}

// ------------------------------------------------------------ shared checks

use houghton::poset::{glb, glb_criterion, grade, leq, predecessor};
use rand::Rng;

/// Checks `glb` on one family and returns how many lower bounds were
/// compared against it; panics on any violation.
pub fn check_glb_family(alpha: &GenMap, family: &[GenMap], rng: &mut impl Rng) -> usize {
    assert!(glb_criterion(alpha, family).unwrap());
    let d = glb(alpha, family).unwrap();
    for b in family {
        assert!(leq(&d, b).is_some());
    }
    assert_eq!(grade(&d).unwrap(), grade(alpha).unwrap() - family.len() as i64);

    // A lower bound built independently: the glb of a larger family.
    let mut checked = 0;
    if let Some(extra) = houghton::poset::extend_maximal_family(rng, alpha, family) {
        let mut bigger = family.to_vec();
        bigger.push(extra);
        let lower = glb(alpha, &bigger).unwrap();
        assert!(family.iter().all(|b| leq(&lower, b).is_some()));
        assert!(leq(&lower, &d).is_some(), "glb of a larger family is not below the glb");
        checked += 1;
    }

    // Random descents from δ and from β_1, kept when they lie below every β_j.
    let mut tries = 0;
    while checked < 20 && tries < 400 {
        tries += 1;
        let mut g = if rng.gen_bool(0.5) { d.clone() } else { family[0].clone() };
        for _ in 0..rng.gen_range(0..=2) {
            if let Ok(next) = predecessor(&g, rng.gen_range(1..=g.n()), Some(rng.gen())) {
                g = next;
            }
        }
        if family.iter().all(|b| leq(&g, b).is_some()) {
            assert!(leq(&g, &d).is_some(), "lower bound not below the glb");
            checked += 1;
        }
    }
    checked
}

/// Every product of at most `k` generators `t_i`, deduplicated.
pub fn translation_words(n: usize, k: usize) -> std::collections::HashSet<GenMap> {
    use itertools::Itertools;
    let mut words = std::collections::HashSet::new();
    words.insert(GenMap::identity(n));
    for len in 1..=k {
        for word in (0..len).map(|_| 1..=n).multi_cartesian_product() {
            let g = word.iter().fold(GenMap::identity(n), |g, &i| g.compose(&GenMap::t(n, i)).unwrap());
            words.insert(g);
        }
    }
    words
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn falling(n: u64, k: u64) -> u64 {
    (0..k).map(|j| n - j).product()
}

/// `χ̃(Σ_{n,k})` from the face counts `C(n,d+1)·k!/(k−d−1)!`.
pub fn chessboard_reduced_euler(n: u64, k: u64) -> i64 {
    let faces = (0..n.min(k)).map(|d| (binomial(n, d + 1) * falling(k, d + 1)) as i64);
    -1 + faces.enumerate().map(|(d, f)| if d % 2 == 0 { f } else { -f }).sum::<i64>()
}

pub fn assert_matches_oracle(k: &SimplicialComplex) {
    let h = houghton::topology::reduced_homology(k).unwrap();
    let o = oracle_homology(k);
    let dims = h.betti.len().max(o.betti.len());
    for d in 0..dims {
        assert_eq!(h.betti(d), o.betti.get(d).copied().unwrap_or(0), "betti {d}");
    }
    for (p, counts) in &o.p_torsion {
        for (d, &c) in counts.iter().enumerate() {
            let ours = h.torsion.get(d).map_or(0, |t| count_divisible(t, *p));
            assert_eq!(ours, c, "{p}-torsion in degree {d}");
        }
    }
    assert_eq!(h.euler_characteristic(), h.betti_euler());
}
