use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::ElementError;
use crate::lattice::Line;

/// An eventually-translational injection of `ℕ×{1..n}`: `(x, i) ↦ (x + m_i, i)`
/// for `x ≥ x0`, and an explicit table below the threshold. The threshold is
/// always minimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HoughtonMap {
    n: usize,
    x0: i64,
    m: Vec<i64>,
    exceptional: BTreeMap<Line, Line>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHoughtonMap {
    pub n: usize,
    pub x0: i64,
    pub m: Vec<i64>,
    pub exceptional: Vec<RawHoughtonEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHoughtonEntry {
    pub from: Line,
    pub to: Line,
}

impl HoughtonMap {
    pub fn identity(n: usize) -> Self {
        HoughtonMap { n, x0: 1, m: vec![0; n], exceptional: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn x0(&self) -> i64 {
        self.x0
    }
    pub fn m(&self) -> &[i64] {
        &self.m
    }
    pub fn exceptional(&self) -> &BTreeMap<Line, Line> {
        &self.exceptional
    }

    pub fn apply(&self, p: Line) -> Line {
        if p.pos >= self.x0 {
            Line::new(p.pos + self.m[p.quadrant - 1], p.quadrant)
        } else {
            self.exceptional[&p]
        }
    }

    /// Build from a pointwise rule that is already a translation beyond `x0`.
    pub fn from_fn(n: usize, x0: i64, m: Vec<i64>, f: impl Fn(Line) -> Line) -> Self {
        let exceptional = (1..=n).flat_map(|q| (1..x0).map(move |x| Line::new(x, q))).map(|p| (p, f(p))).collect();
        let mut h = HoughtonMap { n, x0, m, exceptional };
        debug_assert!(h.check().is_ok(), "from_fn produced an invalid map: {:?}", h.check());
        h.shrink();
        h
    }

    pub fn try_from_raw(raw: &RawHoughtonMap) -> Result<Self, ElementError> {
        let bad = |s: &str| Err(ElementError::Malformed(s.to_string()));
        if raw.n == 0 || raw.x0 < 1 || raw.m.len() != raw.n {
            return bad("need n ≥ 1, x0 ≥ 1 and one shift per ray");
        }
        let mut exceptional = BTreeMap::new();
        for e in &raw.exceptional {
            let ok = |l: Line| (1..=raw.n).contains(&l.quadrant);
            if e.from.pos >= raw.x0 || !ok(e.from) || !ok(e.to) {
                return bad("exceptional entry outside its domain");
            }
            if exceptional.insert(e.from, e.to).is_some() {
                return bad("exceptional entry listed twice");
            }
        }
        if exceptional.len() as i64 != (raw.x0 - 1) * raw.n as i64 {
            return bad("exceptional table is not total on x < x0");
        }
        let mut h = HoughtonMap { n: raw.n, x0: raw.x0, m: raw.m.clone(), exceptional };
        h.check()?;
        h.shrink();
        Ok(h)
    }

    pub fn to_raw(&self) -> RawHoughtonMap {
        RawHoughtonMap {
            n: self.n,
            x0: self.x0,
            m: self.m.clone(),
            exceptional: self.exceptional.iter().map(|(a, b)| RawHoughtonEntry { from: *a, to: *b }).collect(),
        }
    }

    fn check(&self) -> Result<(), ElementError> {
        for (q, mq) in self.m.iter().enumerate() {
            if self.x0 + mq < 1 {
                return Err(ElementError::InvalidImage(format!("ray {} is shifted off ℕ", q + 1)));
            }
        }
        let mut seen: HashMap<Line, Line> = HashMap::new();
        for (src, img) in &self.exceptional {
            if img.pos < 1 {
                return Err(ElementError::InvalidImage(format!("{src} maps to {img}")));
            }
            if img.pos >= self.x0 + self.m[img.quadrant - 1] {
                let other = Line::new(img.pos - self.m[img.quadrant - 1], img.quadrant);
                return Err(ElementError::NotInjectiveLine {
                    first: src.to_string(),
                    second: other.to_string(),
                    image: img.to_string(),
                });
            }
            if let Some(other) = seen.insert(*img, *src) {
                return Err(ElementError::NotInjectiveLine {
                    first: other.to_string(),
                    second: src.to_string(),
                    image: img.to_string(),
                });
            }
        }
        Ok(())
    }

    fn shrink(&mut self) {
        while self.x0 > 1 {
            let x = self.x0 - 1;
            let tail = (1..=self.n).all(|q| self.exceptional[&Line::new(x, q)] == Line::new(x + self.m[q - 1], q));
            if !tail {
                break;
            }
            for q in 1..=self.n {
                self.exceptional.remove(&Line::new(x, q));
            }
            self.x0 = x;
        }
    }

    /// Number of points missed by the image. For an injection this is `Σ m_i`:
    /// ray `i` misses its first `x0 + m_i − 1` points, of which the table
    /// covers `n(x0 − 1)` in total.
    pub fn complement_size(&self) -> i64 {
        self.m.iter().sum()
    }

    pub fn is_bijective(&self) -> bool {
        self.complement_size() == 0
    }

    pub fn preimage(&self, p: Line) -> Option<Line> {
        let back = Line::new(p.pos - self.m[p.quadrant - 1], p.quadrant);
        if back.pos >= self.x0 {
            return Some(back);
        }
        self.exceptional.iter().find(|(_, img)| **img == p).map(|(src, _)| *src)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &HoughtonMap) -> Result<HoughtonMap, ElementError> {
        if self.n != other.n {
            return Err(ElementError::QuadrantMismatch(self.n, other.n));
        }
        let min_shift = self.m.iter().copied().min().unwrap_or(0);
        let x0 = self.x0.max(other.x0 - min_shift).max(1);
        let m = self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect();
        Ok(HoughtonMap::from_fn(self.n, x0, m, |p| other.apply(self.apply(p))))
    }

    pub fn invert(&self) -> Result<HoughtonMap, ElementError> {
        if !self.is_bijective() {
            return Err(ElementError::NotBijective);
        }
        let max_shift = self.m.iter().copied().max().unwrap_or(0);
        let x0 = (self.x0 + max_shift).max(1);
        let rev: HashMap<Line, Line> = self.exceptional.iter().map(|(a, b)| (*b, *a)).collect();
        let m = self.m.iter().map(|v| -v).collect();
        Ok(HoughtonMap::from_fn(self.n, x0, m, |p| {
            let back = Line::new(p.pos - self.m[p.quadrant - 1], p.quadrant);
            if back.pos >= self.x0 {
                back
            } else {
                rev[&p]
            }
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift(n: usize, up: usize, down: usize) -> HoughtonMap {
        // Ray `up` moves out by one, ray `down` moves in by one and its first
        // point is handed over to the start of ray `up`.
        let mut m = vec![0; n];
        m[up - 1] = 1;
        m[down - 1] = -1;
        HoughtonMap::from_fn(n, 2, m, |p| {
            if p.quadrant == down && p.pos == 1 {
                Line::new(1, up)
            } else if p.quadrant == up {
                Line::new(p.pos + 1, up)
            } else if p.quadrant == down {
                Line::new(p.pos - 1, down)
            } else {
                p
            }
        })
    }

    #[test]
    fn shifts_on_disjoint_rays_commute() {
        let a = shift(4, 1, 2);
        let b = shift(4, 3, 4);
        assert_eq!(a.compose(&b).unwrap(), b.compose(&a).unwrap());
    }

    #[test]
    fn inverse_and_identity() {
        let a = shift(3, 1, 3);
        assert!(a.is_bijective());
        let inv = a.invert().unwrap();
        assert_eq!(a.compose(&inv).unwrap(), HoughtonMap::identity(3));
        assert_eq!(inv.compose(&a).unwrap(), HoughtonMap::identity(3));
        assert_eq!(a.compose(&HoughtonMap::identity(3)).unwrap(), a);
    }
}
