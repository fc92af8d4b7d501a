//! Seeded generation of group and monoid elements for tests and suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ElementError, GenMap, HoughtonMap};
use crate::lattice::{Line, Point};

/// Which set the sampled element has to belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassSpec {
    /// The translation monoid `T`.
    Translation,
    /// The monoid `M` of diagonal injections.
    Monoid,
    /// The group `G_n` (bijective and diagonal).
    Gn,
    /// The group `G̃_n` (bijective).
    GTilde,
}

/// Size limits: both thresholds at most `max_threshold`, every shift
/// component at most `max_shift` in absolute value, `Σ m_i` at most
/// `max_grade`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_threshold: i64,
    pub max_shift: i64,
    pub max_grade: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_threshold: 5, max_shift: 4, max_grade: 4 }
    }
}

/// Explicit building blocks of `G_n` and `G̃_n`.
pub mod generators {
    use super::*;

    /// Quadrant `from` moves by `(−1,−1)`, quadrant `to` by `(1,1)`; column 1
    /// and row 1 of `from` are laid onto column 1 and row 1 of `to`.
    pub fn diagonal_shift(n: usize, from: usize, to: usize) -> GenMap {
        assert!(from != to && from <= n && to <= n);
        let mut m = vec![(0, 0); n];
        m[from - 1] = (-1, -1);
        m[to - 1] = (1, 1);
        GenMap::from_fn(n, 2, 2, m, |p| {
            if p.quadrant == from {
                if p.x == 1 || p.y == 1 {
                    Point::new(p.x, p.y, to)
                } else {
                    Point::new(p.x - 1, p.y - 1, from)
                }
            } else if p.quadrant == to {
                Point::new(p.x + 1, p.y + 1, to)
            } else {
                p
            }
        })
    }

    /// Quadrant `right` moves by `(1,0)`, quadrant `left` by `(−1,0)`, and
    /// column 1 of `left` becomes column 1 of `right`. Lies in `G̃_n` with
    /// `φ = e_right − e_left`.
    pub fn horizontal_shift(n: usize, right: usize, left: usize) -> GenMap {
        assert!(right != left && right <= n && left <= n);
        let mut m = vec![(0, 0); n];
        m[right - 1] = (1, 0);
        m[left - 1] = (-1, 0);
        GenMap::from_fn(n, 2, 1, m, |p| {
            if p.quadrant == right {
                Point::new(p.x + 1, p.y, right)
            } else if p.quadrant == left {
                if p.x == 1 {
                    Point::new(1, p.y, right)
                } else {
                    Point::new(p.x - 1, p.y, left)
                }
            } else {
                p
            }
        })
    }

    /// Mirror image of [`horizontal_shift`]; `φ = e_down − e_up`.
    pub fn vertical_shift(n: usize, up: usize, down: usize) -> GenMap {
        assert!(up != down && up <= n && down <= n);
        let mut m = vec![(0, 0); n];
        m[up - 1] = (0, 1);
        m[down - 1] = (0, -1);
        GenMap::from_fn(n, 1, 2, m, |p| {
            if p.quadrant == up {
                Point::new(p.x, p.y + 1, up)
            } else if p.quadrant == down {
                if p.y == 1 {
                    Point::new(p.x, 1, up)
                } else {
                    Point::new(p.x, p.y - 1, down)
                }
            } else {
                p
            }
        })
    }

    /// Exchange two whole columns.
    pub fn column_swap(n: usize, a: Line, b: Line) -> GenMap {
        let x0 = a.pos.max(b.pos) + 1;
        GenMap::from_fn(n, x0, 1, vec![(0, 0); n], |p| {
            let c = Line::new(p.x, p.quadrant);
            let to = if c == a {
                b
            } else if c == b {
                a
            } else {
                c
            };
            Point::new(to.pos, p.y, to.quadrant)
        })
    }

    /// Exchange two whole rows.
    pub fn row_swap(n: usize, a: Line, b: Line) -> GenMap {
        let y0 = a.pos.max(b.pos) + 1;
        GenMap::from_fn(n, 1, y0, vec![(0, 0); n], |p| {
            let r = Line::new(p.y, p.quadrant);
            let to = if r == a {
                b
            } else if r == b {
                a
            } else {
                r
            };
            Point::new(p.x, to.pos, to.quadrant)
        })
    }

    /// The transposition of two points.
    pub fn point_swap(n: usize, a: Point, b: Point) -> GenMap {
        let x0 = a.x.max(b.x) + 1;
        let y0 = a.y.max(b.y) + 1;
        GenMap::from_fn(n, x0, y0, vec![(0, 0); n], |p| {
            if p == a {
                b
            } else if p == b {
                a
            } else {
                p
            }
        })
    }

    /// Ray `up` moves out by one, ray `down` moves in by one and hands its
    /// first point to the start of ray `up`.
    pub fn ray_shift(n: usize, up: usize, down: usize) -> HoughtonMap {
        let mut m = vec![0; n];
        m[up - 1] = 1;
        m[down - 1] = -1;
        HoughtonMap::from_fn(n, 2, m, |p| {
            if p.quadrant == up {
                Line::new(p.pos + 1, up)
            } else if p.quadrant == down {
                if p.pos == 1 {
                    Line::new(1, up)
                } else {
                    Line::new(p.pos - 1, down)
                }
            } else {
                p
            }
        })
    }

    /// Transposition of two points of `ℕ×{1..n}`.
    pub fn ray_point_swap(n: usize, a: Line, b: Line) -> HoughtonMap {
        let x0 = a.pos.max(b.pos) + 1;
        HoughtonMap::from_fn(n, x0, vec![0; n], |p| {
            if p == a {
                b
            } else if p == b {
                a
            } else {
                p
            }
        })
    }
}

fn fits(g: &GenMap, b: &Bounds) -> bool {
    g.x0() <= b.max_threshold
        && g.y0() <= b.max_threshold
        && g.m().iter().all(|&(u, v)| u.abs() <= b.max_shift && v.abs() <= b.max_shift)
        && g.m().iter().map(|p| p.0).sum::<i64>() <= b.max_grade
}

fn random_generator(rng: &mut impl Rng, n: usize, reach: i64, tilde: bool) -> GenMap {
    let pos = |rng: &mut dyn rand::RngCore| rng.gen_range(1..=reach);
    let quad = |rng: &mut dyn rand::RngCore| rng.gen_range(1..=n);
    let two = |rng: &mut dyn rand::RngCore| {
        let mut qs: Vec<usize> = (1..=n).collect();
        qs.shuffle(rng);
        (qs[0], qs[1])
    };
    let kinds = match (n >= 2, tilde) {
        (false, _) => 3,
        (true, false) => 5,
        (true, true) => 7,
    };
    match rng.gen_range(0..kinds) {
        0 => {
            let a = Point::new(pos(rng), pos(rng), quad(rng));
            let b = Point::new(pos(rng), pos(rng), quad(rng));
            generators::point_swap(n, a, b)
        }
        1 => generators::column_swap(n, Line::new(pos(rng), quad(rng)), Line::new(pos(rng), quad(rng))),
        2 => generators::row_swap(n, Line::new(pos(rng), quad(rng)), Line::new(pos(rng), quad(rng))),
        3 => {
            let (i, j) = two(rng);
            generators::diagonal_shift(n, i, j)
        }
        4 => {
            let (i, j) = two(rng);
            generators::diagonal_shift(n, i, j).invert().expect("bijective")
        }
        5 => {
            let (i, j) = two(rng);
            generators::horizontal_shift(n, i, j)
        }
        _ => {
            let (i, j) = two(rng);
            generators::vertical_shift(n, i, j)
        }
    }
}

fn random_word(rng: &mut impl Rng, n: usize, reach: i64, tilde: bool, len: usize) -> GenMap {
    let mut g = GenMap::identity(n);
    for _ in 0..len {
        g = g.compose(&random_generator(rng, n, reach, tilde)).expect("same n");
    }
    g
}

fn random_translation(rng: &mut impl Rng, n: usize, b: &Bounds) -> GenMap {
    let total = rng.gen_range(0..=b.max_grade);
    let mut e = vec![0i64; n];
    for _ in 0..total {
        let i = rng.gen_range(0..n);
        if e[i] < b.max_shift {
            e[i] += 1;
        }
    }
    GenMap::translation(&e)
}

/// Sample an element of `class` with `n` quadrants from an existing RNG.
pub fn sample_element(rng: &mut impl Rng, n: usize, class: ClassSpec, b: &Bounds) -> Result<GenMap, ElementError> {
    if n == 0 || b.max_threshold < 1 || b.max_shift < 0 || b.max_grade < 0 {
        return Err(ElementError::InfeasibleBounds(format!("{b:?} with n = {n}")));
    }
    if class == ClassSpec::Translation {
        return Ok(random_translation(rng, n, b));
    }
    let reach = (b.max_threshold - 1).max(1);
    for _ in 0..64 {
        let len = rng.gen_range(1..=3);
        let g = match class {
            ClassSpec::Gn => random_word(rng, n, reach, false, len),
            ClassSpec::GTilde => random_word(rng, n, reach, true, len),
            _ => {
                let (pre_len, post_len) = (rng.gen_range(0..=1), rng.gen_range(0..=2));
                let pre = random_word(rng, n, reach, false, pre_len);
                let post = random_word(rng, n, reach, false, post_len);
                let t = random_translation(rng, n, b);
                pre.compose(&t).and_then(|g| g.compose(&post)).expect("same n")
            }
        };
        if fits(&g, b) {
            return Ok(g);
        }
    }
    // The smallest members of each class always fit.
    Ok(match class {
        ClassSpec::Monoid => random_translation(rng, n, b),
        _ => GenMap::identity(n),
    })
}

/// Deterministic-per-seed element of `class` within `bounds`.
pub fn random_element(n: usize, class: ClassSpec, bounds: &Bounds, seed: u64) -> Result<GenMap, ElementError> {
    sample_element(&mut ChaCha8Rng::seed_from_u64(seed), n, class, bounds)
}

/// A random permutation in the Houghton group `H_n`.
pub fn random_houghton(rng: &mut impl Rng, n: usize, reach: i64, len: usize) -> HoughtonMap {
    let mut h = HoughtonMap::identity(n);
    for _ in 0..len {
        let step = if n >= 2 && rng.gen_bool(0.5) {
            let up = rng.gen_range(1..=n);
            let down = loop {
                let d = rng.gen_range(1..=n);
                if d != up {
                    break d;
                }
            };
            generators::ray_shift(n, up, down)
        } else {
            let a = Line::new(rng.gen_range(1..=reach), rng.gen_range(1..=n));
            let b = Line::new(rng.gen_range(1..=reach), rng.gen_range(1..=n));
            generators::ray_point_swap(n, a, b)
        };
        h = h.compose(&step).expect("same n");
    }
    h
}
