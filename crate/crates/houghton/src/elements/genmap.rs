use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{ElementError, HoughtonMap, MapClass};
use crate::lattice::{ray_intersection, HRay, Line, Point, RegionDecomposition, VRay};

/// Largest coordinate magnitude accepted from outside. Keeps every derived
/// sum and product far away from `i64` overflow.
pub const COORD_LIMIT: i64 = 1 << 40;

/// Image of a column (or row): the carrier line it lands on and the shift
/// along that line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineImage {
    pub target: Line,
    pub shift: i64,
}

/// An eventually-translational injection of `S`, in canonical form.
///
/// With threshold `p₀ = (x0, y0)` the plane of each quadrant splits into four
/// parts:
///
/// * `x ≥ x0, y ≥ y0`: translation by `m[i]` inside the same quadrant;
/// * `x < x0, y ≥ y0`: column `(x, i)` goes to column `colmap[(x,i)].target`,
///   shifted vertically by `colmap[(x,i)].shift`;
/// * `x ≥ x0, y < y0`: row `(y, i)` likewise through `rowmap`;
/// * `x < x0, y < y0`: the explicit table `rect`.
///
/// Values of this type are always injective and carry the minimal thresholds,
/// so structural equality is equality of maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenMap {
    n: usize,
    x0: i64,
    y0: i64,
    m: Vec<(i64, i64)>,
    colmap: BTreeMap<Line, LineImage>,
    rowmap: BTreeMap<Line, LineImage>,
    rect: BTreeMap<Point, Point>,
}

/// File-level form of a [`GenMap`]; field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGenMap {
    pub n: usize,
    pub x0: i64,
    pub y0: i64,
    pub m: Vec<[i64; 2]>,
    pub colmap: Vec<RawLineEntry>,
    pub rowmap: Vec<RawLineEntry>,
    pub rect: Vec<RawPointEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLineEntry {
    pub from: Line,
    pub to: Line,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPointEntry {
    pub from: Point,
    pub to: Point,
}

/// Reverse lookup tables for computing preimages.
struct Preimager {
    cols: HashMap<Line, Line>,
    rows: HashMap<Line, Line>,
    rect: HashMap<Point, Point>,
}

/// One piece of the image, remembered together with where it came from.
#[derive(Clone, Copy)]
enum ImagePiece {
    Column { src: Line, ray: VRay, shift: i64 },
    Row { src: Line, ray: HRay, shift: i64 },
}

impl ImagePiece {
    fn source(&self, p: Point) -> Point {
        match *self {
            ImagePiece::Column { src, shift, .. } => Point::new(src.pos, p.y - shift, src.quadrant),
            ImagePiece::Row { src, shift, .. } => Point::new(p.x - shift, src.pos, src.quadrant),
        }
    }
}

impl GenMap {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "need at least one quadrant");
        GenMap {
            n,
            x0: 1,
            y0: 1,
            m: vec![(0, 0); n],
            colmap: BTreeMap::new(),
            rowmap: BTreeMap::new(),
            rect: BTreeMap::new(),
        }
    }

    /// `t_1^{e_1} ⋯ t_n^{e_n}`: quadrant `i` moves by `(e_i, e_i)`.
    pub fn translation(exponents: &[i64]) -> Self {
        assert!(exponents.iter().all(|&e| e >= 0), "translation exponents must be non-negative");
        let mut g = GenMap::identity(exponents.len());
        g.m = exponents.iter().map(|&e| (e, e)).collect();
        g
    }

    /// The generator `t_i` of the translation monoid.
    pub fn t(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        GenMap::translation(&e)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn x0(&self) -> i64 {
        self.x0
    }
    pub fn y0(&self) -> i64 {
        self.y0
    }
    pub fn m(&self) -> &[(i64, i64)] {
        &self.m
    }
    pub fn colmap(&self) -> &BTreeMap<Line, LineImage> {
        &self.colmap
    }
    pub fn rowmap(&self) -> &BTreeMap<Line, LineImage> {
        &self.rowmap
    }
    pub fn rect(&self) -> &BTreeMap<Point, Point> {
        &self.rect
    }

    /// True when every quadrant is translated along the diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.m.iter().all(|(a, b)| a == b)
    }

    pub fn apply(&self, p: Point) -> Point {
        debug_assert!(p.is_valid(self.n), "point {p} outside S");
        let (mx, my) = self.m[p.quadrant - 1];
        match (p.x >= self.x0, p.y >= self.y0) {
            (true, true) => Point::new(p.x + mx, p.y + my, p.quadrant),
            (false, true) => {
                let e = self.colmap[&Line::new(p.x, p.quadrant)];
                Point::new(e.target.pos, p.y + e.shift, e.target.quadrant)
            }
            (true, false) => {
                let e = self.rowmap[&Line::new(p.y, p.quadrant)];
                Point::new(p.x + e.shift, e.target.pos, e.target.quadrant)
            }
            (false, false) => self.rect[&p],
        }
    }

    /// Where column `c` goes (for `y ≥ y0`), including asymptotic columns.
    pub fn col_image(&self, c: Line) -> LineImage {
        if c.pos < self.x0 {
            self.colmap[&c]
        } else {
            let (mx, my) = self.m[c.quadrant - 1];
            LineImage { target: Line::new(c.pos + mx, c.quadrant), shift: my }
        }
    }

    /// Where row `r` goes (for `x ≥ x0`), including asymptotic rows.
    pub fn row_image(&self, r: Line) -> LineImage {
        if r.pos < self.y0 {
            self.rowmap[&r]
        } else {
            let (mx, my) = self.m[r.quadrant - 1];
            LineImage { target: Line::new(r.pos + my, r.quadrant), shift: mx }
        }
    }

    // ---------------------------------------------------------------- input

    pub fn try_from_raw(raw: &RawGenMap) -> Result<Self, ElementError> {
        let bad = |s: String| Err(ElementError::Malformed(s));
        let n = raw.n;
        if n == 0 {
            return bad("n must be at least 1".into());
        }
        if raw.x0 < 1 || raw.y0 < 1 {
            return bad("thresholds must be at least 1".into());
        }
        if raw.m.len() != n {
            return bad(format!("m has {} entries, expected {n}", raw.m.len()));
        }
        let mut ints: Vec<i64> = vec![raw.x0, raw.y0];
        ints.extend(raw.m.iter().flatten());
        ints.extend(raw.colmap.iter().chain(&raw.rowmap).flat_map(|e| [e.from.pos, e.to.pos, e.shift]));
        ints.extend(raw.rect.iter().flat_map(|e| [e.from.x, e.from.y, e.to.x, e.to.y]));
        if ints.iter().any(|v| v.abs() > COORD_LIMIT) {
            return bad(format!("integer magnitude exceeds {COORD_LIMIT}"));
        }
        let area = (raw.x0 - 1).saturating_mul(raw.y0 - 1).saturating_mul(n as i64);
        if area > 50_000_000 {
            return bad("threshold rectangle is too large".into());
        }

        let q_ok = |q: usize| (1..=n).contains(&q);
        let mut colmap = BTreeMap::new();
        for e in &raw.colmap {
            if e.from.pos >= raw.x0 || !q_ok(e.from.quadrant) || !q_ok(e.to.quadrant) {
                return bad(format!("colmap entry {} -> {} outside its domain", e.from, e.to));
            }
            if colmap.insert(e.from, LineImage { target: e.to, shift: e.shift }).is_some() {
                return bad(format!("colmap lists column {} twice", e.from));
            }
        }
        if colmap.len() as i64 != (raw.x0 - 1) * n as i64 {
            return bad("colmap is not total on x < x0".into());
        }
        let mut rowmap = BTreeMap::new();
        for e in &raw.rowmap {
            if e.from.pos >= raw.y0 || !q_ok(e.from.quadrant) || !q_ok(e.to.quadrant) {
                return bad(format!("rowmap entry {} -> {} outside its domain", e.from, e.to));
            }
            if rowmap.insert(e.from, LineImage { target: e.to, shift: e.shift }).is_some() {
                return bad(format!("rowmap lists row {} twice", e.from));
            }
        }
        if rowmap.len() as i64 != (raw.y0 - 1) * n as i64 {
            return bad("rowmap is not total on y < y0".into());
        }
        let mut rect = BTreeMap::new();
        for e in &raw.rect {
            if e.from.x >= raw.x0 || e.from.y >= raw.y0 || !q_ok(e.from.quadrant) || !q_ok(e.to.quadrant) {
                return bad(format!("rect entry {} -> {} outside its domain", e.from, e.to));
            }
            if rect.insert(e.from, e.to).is_some() {
                return bad(format!("rect lists {} twice", e.from));
            }
        }
        if rect.len() as i64 != area {
            return bad("rect is not total on x < x0, y < y0".into());
        }

        let mut g =
            GenMap { n, x0: raw.x0, y0: raw.y0, m: raw.m.iter().map(|v| (v[0], v[1])).collect(), colmap, rowmap, rect };
        g.check()?;
        g.shrink_thresholds();
        Ok(g)
    }

    pub fn to_raw(&self) -> RawGenMap {
        let lines = |map: &BTreeMap<Line, LineImage>| {
            map.iter().map(|(k, v)| RawLineEntry { from: *k, to: v.target, shift: v.shift }).collect()
        };
        RawGenMap {
            n: self.n,
            x0: self.x0,
            y0: self.y0,
            m: self.m.iter().map(|&(a, b)| [a, b]).collect(),
            colmap: lines(&self.colmap),
            rowmap: lines(&self.rowmap),
            rect: self.rect.iter().map(|(k, v)| RawPointEntry { from: *k, to: *v }).collect(),
        }
    }

    /// Build a map from a pointwise rule. `f` must already be in asymptotic
    /// form beyond `(x0, y0)` with vectors `m`, and in column/row form on the
    /// strips; only the corner rectangle and one sample per line are read.
    pub fn from_fn(n: usize, x0: i64, y0: i64, m: Vec<(i64, i64)>, f: impl Fn(Point) -> Point) -> Self {
        let mut colmap = BTreeMap::new();
        let mut rowmap = BTreeMap::new();
        let mut rect = BTreeMap::new();
        for q in 1..=n {
            for x in 1..x0 {
                let img = f(Point::new(x, y0, q));
                colmap.insert(Line::new(x, q), LineImage { target: Line::new(img.x, img.quadrant), shift: img.y - y0 });
                for y in 1..y0 {
                    let p = Point::new(x, y, q);
                    rect.insert(p, f(p));
                }
            }
            for y in 1..y0 {
                let img = f(Point::new(x0, y, q));
                rowmap.insert(Line::new(y, q), LineImage { target: Line::new(img.y, img.quadrant), shift: img.x - x0 });
            }
        }
        let mut g = GenMap { n, x0, y0, m, colmap, rowmap, rect };
        debug_assert!(g.check().is_ok(), "from_fn produced an invalid map: {:?}", g.check());
        g.shrink_thresholds();
        g
    }

    // ----------------------------------------------------------- validation

    fn quadrant_corner(&self, q: usize) -> (i64, i64) {
        let (mx, my) = self.m[q - 1];
        (self.x0 + mx, self.y0 + my)
    }

    fn image_rays(&self) -> Vec<ImagePiece> {
        let cols = self.colmap.iter().map(|(src, e)| ImagePiece::Column {
            src: *src,
            ray: VRay::new(e.target.pos, e.target.quadrant, self.y0 + e.shift),
            shift: e.shift,
        });
        let rows = self.rowmap.iter().map(|(src, e)| ImagePiece::Row {
            src: *src,
            ray: HRay::new(e.target.pos, e.target.quadrant, self.x0 + e.shift),
            shift: e.shift,
        });
        cols.chain(rows).collect()
    }

    /// Image validity and global injectivity, with a colliding pair on failure.
    fn check(&self) -> Result<(), ElementError> {
        for q in 1..=self.n {
            let (a, b) = self.quadrant_corner(q);
            if a < 1 || b < 1 {
                return Err(ElementError::InvalidImage(format!("quadrant {q} is translated off the lattice")));
            }
        }
        for (src, e) in &self.colmap {
            if self.y0 + e.shift < 1 || e.target.pos < 1 {
                return Err(ElementError::InvalidImage(format!("column {src} leaves the lattice")));
            }
        }
        for (src, e) in &self.rowmap {
            if self.x0 + e.shift < 1 || e.target.pos < 1 {
                return Err(ElementError::InvalidImage(format!("row {src} leaves the lattice")));
            }
        }
        if let Some(p) = self.rect.values().find(|p| !p.is_valid(self.n)) {
            return Err(ElementError::InvalidImage(format!("rect image {p}")));
        }

        let collide = |first: Point, second: Point, image: Point| {
            let (first, second) = if first <= second { (first, second) } else { (second, first) };
            Err(ElementError::NotInjective { first, second, image })
        };
        let quad_source = |p: Point| {
            let (mx, my) = self.m[p.quadrant - 1];
            Point::new(p.x - mx, p.y - my, p.quadrant)
        };

        let rays = self.image_rays();
        let mut vcar: HashMap<Line, ImagePiece> = HashMap::new();
        let mut hcar: HashMap<Line, ImagePiece> = HashMap::new();
        for piece in &rays {
            match *piece {
                ImagePiece::Column { ray, .. } => {
                    let (a, b) = self.quadrant_corner(ray.quadrant);
                    if ray.carrier_x >= a {
                        let p = Point::new(ray.carrier_x, ray.start_y.max(b), ray.quadrant);
                        return collide(piece.source(p), quad_source(p), p);
                    }
                    if let Some(other) = vcar.insert(ray.carrier(), *piece) {
                        let ImagePiece::Column { ray: r2, .. } = other else { unreachable!() };
                        let p = Point::new(ray.carrier_x, ray.start_y.max(r2.start_y), ray.quadrant);
                        return collide(piece.source(p), other.source(p), p);
                    }
                }
                ImagePiece::Row { ray, .. } => {
                    let (a, b) = self.quadrant_corner(ray.quadrant);
                    if ray.carrier_y >= b {
                        let p = Point::new(ray.start_x.max(a), ray.carrier_y, ray.quadrant);
                        return collide(piece.source(p), quad_source(p), p);
                    }
                    if let Some(other) = hcar.insert(ray.carrier(), *piece) {
                        let ImagePiece::Row { ray: r2, .. } = other else { unreachable!() };
                        let p = Point::new(ray.start_x.max(r2.start_x), ray.carrier_y, ray.quadrant);
                        return collide(piece.source(p), other.source(p), p);
                    }
                }
            }
        }
        for vp in &rays {
            let ImagePiece::Column { ray: v, .. } = vp else { continue };
            for hp in &rays {
                let ImagePiece::Row { ray: h, .. } = hp else { continue };
                if let Some(p) = ray_intersection(v, h) {
                    return collide(vp.source(p), hp.source(p), p);
                }
            }
        }
        let mut seen: HashMap<Point, Point> = HashMap::new();
        for (src, p) in &self.rect {
            let (a, b) = self.quadrant_corner(p.quadrant);
            if p.x >= a && p.y >= b {
                return collide(*src, quad_source(*p), *p);
            }
            if let Some(piece) = vcar.get(&Line::new(p.x, p.quadrant)) {
                if let ImagePiece::Column { ray, .. } = piece {
                    if ray.contains(p) {
                        return collide(*src, piece.source(*p), *p);
                    }
                }
            }
            if let Some(piece) = hcar.get(&Line::new(p.y, p.quadrant)) {
                if let ImagePiece::Row { ray, .. } = piece {
                    if ray.contains(p) {
                        return collide(*src, piece.source(*p), *p);
                    }
                }
            }
            if let Some(other) = seen.insert(*p, *src) {
                return collide(*src, other, *p);
            }
        }
        Ok(())
    }

    /// Lower `x0` and `y0` while the data just below them already follows the
    /// asymptotic pattern. The admissible thresholds are closed under
    /// componentwise minimum, so this greedy descent reaches the unique
    /// minimal pair.
    fn shrink_thresholds(&mut self) {
        loop {
            if self.x0 > 1 && self.column_is_asymptotic(self.x0 - 1) {
                let x = self.x0 - 1;
                for q in 1..=self.n {
                    self.colmap.remove(&Line::new(x, q));
                    for y in 1..self.y0 {
                        self.rect.remove(&Point::new(x, y, q));
                    }
                }
                self.x0 = x;
            } else if self.y0 > 1 && self.row_is_asymptotic(self.y0 - 1) {
                let y = self.y0 - 1;
                for q in 1..=self.n {
                    self.rowmap.remove(&Line::new(y, q));
                    for x in 1..self.x0 {
                        self.rect.remove(&Point::new(x, y, q));
                    }
                }
                self.y0 = y;
            } else {
                break;
            }
        }
    }

    fn column_is_asymptotic(&self, x: i64) -> bool {
        (1..=self.n).all(|q| {
            let (mx, my) = self.m[q - 1];
            self.colmap[&Line::new(x, q)] == LineImage { target: Line::new(x + mx, q), shift: my }
                && (1..self.y0).all(|y| {
                    let e = self.rowmap[&Line::new(y, q)];
                    self.rect[&Point::new(x, y, q)] == Point::new(x + e.shift, e.target.pos, e.target.quadrant)
                })
        })
    }

    fn row_is_asymptotic(&self, y: i64) -> bool {
        (1..=self.n).all(|q| {
            let (mx, my) = self.m[q - 1];
            self.rowmap[&Line::new(y, q)] == LineImage { target: Line::new(y + my, q), shift: mx }
                && (1..self.x0).all(|x| {
                    let e = self.colmap[&Line::new(x, q)];
                    self.rect[&Point::new(x, y, q)] == Point::new(e.target.pos, y + e.shift, e.target.quadrant)
                })
        })
    }

    // ----------------------------------------------------------- structure

    fn preimager(&self) -> Preimager {
        Preimager {
            cols: self.colmap.iter().map(|(k, v)| (v.target, *k)).collect(),
            rows: self.rowmap.iter().map(|(k, v)| (v.target, *k)).collect(),
            rect: self.rect.iter().map(|(k, v)| (*v, *k)).collect(),
        }
    }

    fn preimage_with(&self, idx: &Preimager, p: Point) -> Option<Point> {
        let (mx, my) = self.m[p.quadrant - 1];
        if p.x - mx >= self.x0 && p.y - my >= self.y0 {
            return Some(Point::new(p.x - mx, p.y - my, p.quadrant));
        }
        if let Some(src) = idx.cols.get(&Line::new(p.x, p.quadrant)) {
            let y = p.y - self.colmap[src].shift;
            if y >= self.y0 {
                return Some(Point::new(src.pos, y, src.quadrant));
            }
        }
        if let Some(src) = idx.rows.get(&Line::new(p.y, p.quadrant)) {
            let x = p.x - self.rowmap[src].shift;
            if x >= self.x0 {
                return Some(Point::new(x, src.pos, src.quadrant));
            }
        }
        idx.rect.get(&p).copied()
    }

    /// The unique preimage of `p`, if `p` lies in the image.
    pub fn preimage(&self, p: Point) -> Option<Point> {
        self.preimage_with(&self.preimager(), p)
    }

    /// Canonical decomposition of `S − image`.
    ///
    /// In quadrant `j` the translated quadrant covers `x ≥ a, y ≥ b` with
    /// `(a, b) = p₀ + m_j`. Every column left of `a` that carries no image
    /// column is eventually free, and so is every row below `b` that carries
    /// no image row; all other free points sit inside a window bounded by the
    /// largest coordinate any piece mentions.
    pub fn image_complement(&self) -> RegionDecomposition {
        let idx = self.preimager();
        let in_image = |p: Point| self.preimage_with(&idx, p).is_some();
        let image_cols: HashSet<Line> = self.colmap.values().map(|e| e.target).collect();
        let image_rows: HashSet<Line> = self.rowmap.values().map(|e| e.target).collect();

        let mut bound = self.x0.max(self.y0);
        for q in 1..=self.n {
            let (a, b) = self.quadrant_corner(q);
            bound = bound.max(a).max(b);
        }
        for e in self.colmap.values() {
            bound = bound.max(e.target.pos).max(self.y0 + e.shift);
        }
        for e in self.rowmap.values() {
            bound = bound.max(e.target.pos).max(self.x0 + e.shift);
        }
        for p in self.rect.values() {
            bound = bound.max(p.x).max(p.y);
        }

        let mut vrays = Vec::new();
        let mut hrays = Vec::new();
        for q in 1..=self.n {
            let (a, _) = self.quadrant_corner(q);
            for x in 1..a {
                if image_cols.contains(&Line::new(x, q)) {
                    continue;
                }
                let top = (1..=bound).rev().find(|&y| in_image(Point::new(x, y, q))).unwrap_or(0);
                vrays.push(VRay::new(x, q, top + 1));
            }
        }
        let vbound = vrays.iter().map(|v| v.start_y.max(v.carrier_x)).max().unwrap_or(0).max(bound);
        for q in 1..=self.n {
            let (_, b) = self.quadrant_corner(q);
            for y in 1..b {
                if image_rows.contains(&Line::new(y, q)) {
                    continue;
                }
                let blocked = |x: i64| {
                    let p = Point::new(x, y, q);
                    in_image(p) || vrays.iter().any(|v| v.contains(&p))
                };
                let last = (1..=vbound).rev().find(|&x| blocked(x)).unwrap_or(0);
                hrays.push(HRay::new(y, q, last + 1));
            }
        }

        let window = hrays.iter().map(|h| h.start_x).max().unwrap_or(0).max(vbound);
        let mut finite_part = BTreeSet::new();
        for q in 1..=self.n {
            for x in 1..=window {
                for y in 1..=window {
                    let p = Point::new(x, y, q);
                    if !in_image(p) && !vrays.iter().any(|v| v.contains(&p)) && !hrays.iter().any(|h| h.contains(&p)) {
                        finite_part.insert(p);
                    }
                }
            }
        }
        vrays.sort();
        hrays.sort();
        RegionDecomposition { vrays, hrays, finite_part }
    }

    pub fn project_pi(&self) -> HoughtonMap {
        HoughtonMap::from_fn(self.n, self.x0, self.m.iter().map(|p| p.0).collect(), |c| self.col_image(c).target)
    }

    pub fn project_sigma(&self) -> HoughtonMap {
        HoughtonMap::from_fn(self.n, self.y0, self.m.iter().map(|p| p.1).collect(), |r| self.row_image(r).target)
    }

    /// `(m_{11} − m_{12}, …, m_{n1} − m_{n2})`.
    pub fn phi(&self) -> Vec<i64> {
        self.m.iter().map(|(a, b)| a - b).collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.image_complement().is_empty()
    }

    pub fn classify(&self) -> MapClass {
        let is_bijective =
            self.project_pi().is_bijective() && self.project_sigma().is_bijective() && self.is_bijective();
        let diagonal = self.is_diagonal();
        MapClass {
            is_bijective,
            in_gtilde: is_bijective,
            in_gn: is_bijective && diagonal,
            in_m: diagonal,
            in_t: diagonal && self.x0 == 1 && self.y0 == 1 && self.m.iter().all(|p| p.0 >= 0),
        }
    }

    // ----------------------------------------------------------- arithmetic

    /// `g` first, then `h`.
    pub fn compose(&self, h: &GenMap) -> Result<GenMap, ElementError> {
        if self.n != h.n {
            return Err(ElementError::QuadrantMismatch(self.n, h.n));
        }
        // Beyond these thresholds every strip of `self` lands beyond the
        // thresholds of `h`, so the composite is in column/row/asymptotic form.
        let min_r = self.rowmap.values().map(|e| e.shift).chain(self.m.iter().map(|p| p.0)).min().unwrap_or(0);
        let min_q = self.colmap.values().map(|e| e.shift).chain(self.m.iter().map(|p| p.1)).min().unwrap_or(0);
        let x0 = self.x0.max(h.x0 - min_r).max(1);
        let y0 = self.y0.max(h.y0 - min_q).max(1);
        let m = self.m.iter().zip(&h.m).map(|(a, b)| (a.0 + b.0, a.1 + b.1)).collect();
        Ok(GenMap::from_fn(self.n, x0, y0, m, |p| h.apply(self.apply(p))))
    }

    pub fn invert(&self) -> Result<GenMap, ElementError> {
        if !self.is_bijective() {
            return Err(ElementError::NotBijective);
        }
        let max_r = self.rowmap.values().map(|e| e.shift).chain(self.m.iter().map(|p| p.0)).max().unwrap_or(0);
        let max_q = self.colmap.values().map(|e| e.shift).chain(self.m.iter().map(|p| p.1)).max().unwrap_or(0);
        let x0 = (self.x0 + max_r).max(1);
        let y0 = (self.y0 + max_q).max(1);
        let m = self.m.iter().map(|&(a, b)| (-a, -b)).collect();
        let idx = self.preimager();
        Ok(GenMap::from_fn(self.n, x0, y0, m, |p| {
            self.preimage_with(&idx, p).expect("bijective map has a preimage everywhere")
        }))
    }
}
