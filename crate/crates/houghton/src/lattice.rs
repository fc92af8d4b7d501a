//! Geometry of the ground set `S = (ℕ×ℕ)×{1..n}`: points, vertical and
//! horizontal rays, and disjoint decompositions of subsets into rays plus a
//! finite remainder.
//!
//! A [`RegionDecomposition`] is kept in a canonical form: rays are extended
//! downward as far as the underlying set allows, a point shared by a vertical
//! and a horizontal ray belongs to the vertical one (the horizontal ray starts
//! one step later), and the finite part holds exactly the points on no ray.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("two rays share the carrier line {0}")]
    DuplicateCarrier(String),
    #[error("coordinate out of range in {0}")]
    InvalidCoordinate(String),
    #[error("cannot parse point from {0:?}")]
    PointSyntax(String),
}

/// A point `((x, y), quadrant)` of `S`. Ordered by quadrant, then `x`, then `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[i64; 3]", try_from = "[i64; 3]")]
pub struct Point {
    pub quadrant: usize,
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64, quadrant: usize) -> Self {
        Point { quadrant, x, y }
    }

    pub fn is_valid(&self, n: usize) -> bool {
        self.x >= 1 && self.y >= 1 && self.quadrant >= 1 && self.quadrant <= n
    }
}

impl From<Point> for [i64; 3] {
    fn from(p: Point) -> Self {
        [p.x, p.y, p.quadrant as i64]
    }
}

impl TryFrom<[i64; 3]> for Point {
    type Error = LatticeError;
    fn try_from(v: [i64; 3]) -> Result<Self, Self::Error> {
        if v[0] < 1 || v[1] < 1 || v[2] < 1 {
            return Err(LatticeError::InvalidCoordinate(format!("{v:?}")));
        }
        Ok(Point::new(v[0], v[1], v[2] as usize))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({},{}),{})", self.x, self.y, self.quadrant)
    }
}

/// Accepts `((x,y),i)`, `[x, y, i]` or `x,y,i` (whitespace ignored).
impl FromStr for Point {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let nums: Vec<&str> = s.split(|c: char| !(c.is_ascii_digit() || c == '-')).filter(|t| !t.is_empty()).collect();
        if nums.len() != 3 || s.chars().any(|c| c.is_alphabetic()) {
            return Err(LatticeError::PointSyntax(s.to_string()));
        }
        let mut v = [0i64; 3];
        for (slot, t) in v.iter_mut().zip(&nums) {
            *slot = t.parse().map_err(|_| LatticeError::PointSyntax(s.to_string()))?;
        }
        Point::try_from(v)
    }
}

/// A line of the one-dimensional set `ℕ×{1..n}`: a column `(x, i)` or a row
/// `(y, i)` of `S`, or a point of a Houghton ray.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", try_from = "[i64; 2]")]
pub struct Line {
    pub quadrant: usize,
    pub pos: i64,
}

impl Line {
    pub const fn new(pos: i64, quadrant: usize) -> Self {
        Line { quadrant, pos }
    }
}

impl From<Line> for [i64; 2] {
    fn from(l: Line) -> Self {
        [l.pos, l.quadrant as i64]
    }
}

impl TryFrom<[i64; 2]> for Line {
    type Error = LatticeError;
    fn try_from(v: [i64; 2]) -> Result<Self, Self::Error> {
        if v[0] < 1 || v[1] < 1 {
            return Err(LatticeError::InvalidCoordinate(format!("{v:?}")));
        }
        Ok(Line::new(v[0], v[1] as usize))
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.quadrant)
    }
}

/// `{((carrier_x, y), quadrant) : y ≥ start_y}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VRay {
    pub quadrant: usize,
    pub carrier_x: i64,
    pub start_y: i64,
}

impl VRay {
    pub const fn new(carrier_x: i64, quadrant: usize, start_y: i64) -> Self {
        VRay { quadrant, carrier_x, start_y }
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.quadrant == self.quadrant && p.x == self.carrier_x && p.y >= self.start_y
    }

    pub fn carrier(&self) -> Line {
        Line::new(self.carrier_x, self.quadrant)
    }

    /// The `k`-th point of the ray, counting from 1.
    pub fn nth(&self, k: i64) -> Point {
        Point::new(self.carrier_x, self.start_y + k - 1, self.quadrant)
    }
}

/// `{((x, carrier_y), quadrant) : x ≥ start_x}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HRay {
    pub quadrant: usize,
    pub carrier_y: i64,
    pub start_x: i64,
}

impl HRay {
    pub const fn new(carrier_y: i64, quadrant: usize, start_x: i64) -> Self {
        HRay { quadrant, carrier_y, start_x }
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.quadrant == self.quadrant && p.y == self.carrier_y && p.x >= self.start_x
    }

    pub fn carrier(&self) -> Line {
        Line::new(self.carrier_y, self.quadrant)
    }

    pub fn nth(&self, k: i64) -> Point {
        Point::new(self.start_x + k - 1, self.carrier_y, self.quadrant)
    }
}

/// The common point of a vertical and a horizontal ray, if any.
pub fn ray_intersection(v: &VRay, h: &HRay) -> Option<Point> {
    (v.quadrant == h.quadrant && v.carrier_x >= h.start_x && h.carrier_y >= v.start_y)
        .then(|| Point::new(v.carrier_x, h.carrier_y, v.quadrant))
}

/// One piece of a raw (not necessarily disjoint) description of a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    V(VRay),
    H(HRay),
    P(Point),
}

/// A subset of `S` written as a disjoint union of rays and a finite set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegionDecomposition {
    pub vrays: Vec<VRay>,
    pub hrays: Vec<HRay>,
    pub finite_part: BTreeSet<Point>,
}

impl RegionDecomposition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.vrays.is_empty() && self.hrays.is_empty() && self.finite_part.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.finite_part.contains(p)
            || self.vrays.iter().any(|v| v.contains(p))
            || self.hrays.iter().any(|h| h.contains(p))
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let mut out: Vec<Piece> = self.vrays.iter().map(|v| Piece::V(*v)).collect();
        out.extend(self.hrays.iter().map(|h| Piece::H(*h)));
        out.extend(self.finite_part.iter().map(|p| Piece::P(*p)));
        out
    }

    /// Largest coordinate mentioned by any piece; every point of the region
    /// with both coordinates above this bound lies on no ray at all.
    pub fn extent(&self) -> i64 {
        let v = self.vrays.iter().map(|r| r.carrier_x.max(r.start_y));
        let h = self.hrays.iter().map(|r| r.carrier_y.max(r.start_x));
        let p = self.finite_part.iter().map(|p| p.x.max(p.y));
        v.chain(h).chain(p).max().unwrap_or(0)
    }

    /// Points of the region inside `[1..w]²` of each of the quadrants `1..=n`.
    pub fn window_points(&self, n: usize, w: i64) -> BTreeSet<Point> {
        let mut out = BTreeSet::new();
        for q in 1..=n {
            for x in 1..=w {
                for y in 1..=w {
                    let p = Point::new(x, y, q);
                    if self.contains(&p) {
                        out.insert(p);
                    }
                }
            }
        }
        out
    }

    /// Some point lying in both regions, if they meet. Exact: ray tails are
    /// compared through their carriers, never by enumeration.
    pub fn common_point(&self, other: &RegionDecomposition) -> Option<Point> {
        let mut best: Option<Point> = None;
        let mut note = |p: Point| {
            if best.is_none_or(|b| p < b) {
                best = Some(p);
            }
        };
        for a in &self.vrays {
            for b in &other.vrays {
                if a.carrier() == b.carrier() {
                    note(Point::new(a.carrier_x, a.start_y.max(b.start_y), a.quadrant));
                }
            }
            for b in &other.hrays {
                if let Some(p) = ray_intersection(a, b) {
                    note(p);
                }
            }
        }
        for a in &self.hrays {
            for b in &other.hrays {
                if a.carrier() == b.carrier() {
                    note(Point::new(a.start_x.max(b.start_x), a.carrier_y, a.quadrant));
                }
            }
            for b in &other.vrays {
                if let Some(p) = ray_intersection(b, a) {
                    note(p);
                }
            }
        }
        for p in self.finite_part.iter().filter(|p| other.contains(p)) {
            note(*p);
        }
        for p in other.finite_part.iter().filter(|p| self.contains(p)) {
            note(*p);
        }
        best
    }

    pub fn is_subset_of(&self, other: &RegionDecomposition) -> bool {
        let vrays_ok = self.vrays.iter().all(|v| {
            other.vrays.iter().any(|w| {
                w.carrier() == v.carrier()
                    && (v.start_y..w.start_y).all(|y| other.contains(&Point::new(v.carrier_x, y, v.quadrant)))
            })
        });
        let hrays_ok = self.hrays.iter().all(|h| {
            other.hrays.iter().any(|w| {
                w.carrier() == h.carrier()
                    && (h.start_x..w.start_x).all(|x| other.contains(&Point::new(x, h.carrier_y, h.quadrant)))
            })
        });
        vrays_ok && hrays_ok && self.finite_part.iter().all(|p| other.contains(p))
    }
}

/// Canonical decomposition of the union of `pieces`.
///
/// Vertical rays are pushed down while the column stays inside the set. A
/// horizontal ray then starts just after the last point of its row that is
/// either outside the set or already taken by a vertical ray. Whatever is
/// left over becomes the finite part.
pub fn canonicalize(pieces: &[Piece]) -> Result<RegionDecomposition, LatticeError> {
    let mut vraw: BTreeMap<Line, i64> = BTreeMap::new();
    let mut hraw: BTreeMap<Line, i64> = BTreeMap::new();
    let mut points: BTreeSet<Point> = BTreeSet::new();
    for piece in pieces {
        match piece {
            Piece::V(v) => {
                if v.carrier_x < 1 || v.start_y < 1 || v.quadrant < 1 {
                    return Err(LatticeError::InvalidCoordinate(format!("{v:?}")));
                }
                if vraw.insert(v.carrier(), v.start_y).is_some() {
                    return Err(LatticeError::DuplicateCarrier(format!("column {}", v.carrier())));
                }
            }
            Piece::H(h) => {
                if h.carrier_y < 1 || h.start_x < 1 || h.quadrant < 1 {
                    return Err(LatticeError::InvalidCoordinate(format!("{h:?}")));
                }
                if hraw.insert(h.carrier(), h.start_x).is_some() {
                    return Err(LatticeError::DuplicateCarrier(format!("row {}", h.carrier())));
                }
            }
            Piece::P(p) => {
                if !p.is_valid(usize::MAX) {
                    return Err(LatticeError::InvalidCoordinate(p.to_string()));
                }
                points.insert(*p);
            }
        }
    }
    let raw = RegionDecomposition {
        vrays: vraw.iter().map(|(c, s)| VRay::new(c.pos, c.quadrant, *s)).collect(),
        hrays: hraw.iter().map(|(c, s)| HRay::new(c.pos, c.quadrant, *s)).collect(),
        finite_part: points.clone(),
    };

    let vrays: Vec<VRay> = raw
        .vrays
        .iter()
        .map(|v| {
            let mut s = v.start_y;
            while s > 1 && raw.contains(&Point::new(v.carrier_x, s - 1, v.quadrant)) {
                s -= 1;
            }
            VRay::new(v.carrier_x, v.quadrant, s)
        })
        .collect();
    let on_vray = |p: &Point| vrays.iter().any(|v| v.contains(p));

    let mut leftovers: BTreeSet<Point> = points;
    let hrays: Vec<HRay> = raw
        .hrays
        .iter()
        .map(|h| {
            // The tail beyond every vertical carrier is free; walk left from there.
            let blocked = vrays
                .iter()
                .filter(|v| v.quadrant == h.quadrant && v.start_y <= h.carrier_y && v.carrier_x >= h.start_x)
                .map(|v| v.carrier_x + 1)
                .max()
                .unwrap_or(h.start_x);
            let mut t = blocked.max(h.start_x);
            for x in h.start_x..t {
                leftovers.insert(Point::new(x, h.carrier_y, h.quadrant));
            }
            loop {
                if t == 1 {
                    break;
                }
                let p = Point::new(t - 1, h.carrier_y, h.quadrant);
                if raw.contains(&p) && !on_vray(&p) {
                    t -= 1;
                } else {
                    break;
                }
            }
            HRay::new(h.carrier_y, h.quadrant, t)
        })
        .collect();

    let finite_part = leftovers.into_iter().filter(|p| !on_vray(p) && !hrays.iter().any(|h| h.contains(p))).collect();
    Ok(RegionDecomposition { vrays, hrays, finite_part })
}

/// A map from the boundary `S − S·t_i` (column 1 and row 1 of quadrant `i`)
/// into a region: column 1 first runs through `finite` in order and then up a
/// vertical ray from `v_offset` above its start; row 1 (from `x = 2`) runs
/// along a horizontal ray from `h_offset` past its start.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CandidateMap {
    pub quadrant: usize,
    pub vray: usize,
    pub v_offset: i64,
    pub hray: usize,
    pub h_offset: i64,
    pub finite: Vec<Point>,
}

impl CandidateMap {
    /// The map that uses the given rays from their starts and no finite points.
    pub fn plain(quadrant: usize, vray: usize, hray: usize) -> Self {
        CandidateMap { quadrant, vray, v_offset: 0, hray, h_offset: 0, finite: Vec::new() }
    }

    /// The rays actually used, with their offsets applied, or `None` if an
    /// index is out of range or an offset is negative.
    pub fn tails(&self, region: &RegionDecomposition) -> Option<(VRay, HRay)> {
        let v = region.vrays.get(self.vray)?;
        let h = region.hrays.get(self.hray)?;
        if self.v_offset < 0 || self.h_offset < 0 {
            return None;
        }
        Some((
            VRay::new(v.carrier_x, v.quadrant, v.start_y + self.v_offset),
            HRay::new(h.carrier_y, h.quadrant, h.start_x + self.h_offset),
        ))
    }

    /// The image of the boundary, provided it is a well-defined injective
    /// image inside `region`.
    pub fn image(&self, region: &RegionDecomposition) -> Option<RegionDecomposition> {
        let (v, h) = self.tails(region)?;
        let distinct = self.finite.iter().collect::<BTreeSet<_>>().len() == self.finite.len();
        let clear = self.finite.iter().all(|p| region.contains(p) && !v.contains(p) && !h.contains(p));
        if !distinct || !clear || ray_intersection(&v, &h).is_some() {
            return None;
        }
        Some(RegionDecomposition { vrays: vec![v], hrays: vec![h], finite_part: self.finite.iter().copied().collect() })
    }
}
