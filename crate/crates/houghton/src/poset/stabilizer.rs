use super::PosetError;
use crate::elements::{ElementError, GenMap, HoughtonMap};
use crate::lattice::{Line, Point, RegionDecomposition};

#[derive(Clone, Copy, Debug)]
enum Ray {
    V { carrier: Line, start: i64 },
    H { carrier: Line, start: i64 },
}

/// Identification of a region `A ∪ P` with `ℕ×{1..k₁+k₂}`: vertical rays
/// first, then horizontal rays, each in sorted order; the finite part is
/// placed in front of the first ray.
#[derive(Clone, Debug)]
pub struct RayEnumeration {
    rays: Vec<Ray>,
    finite: Vec<Point>,
}

impl RayEnumeration {
    pub fn new(region: &RegionDecomposition) -> Self {
        let v = region.vrays.iter().map(|r| Ray::V { carrier: r.carrier(), start: r.start_y });
        let h = region.hrays.iter().map(|r| Ray::H { carrier: r.carrier(), start: r.start_x });
        RayEnumeration { rays: v.chain(h).collect(), finite: region.finite_part.iter().copied().collect() }
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    fn offset(&self, ray: usize) -> i64 {
        if ray == 1 {
            self.finite.len() as i64
        } else {
            0
        }
    }

    /// `f′⁻¹`: position `z` of the enumeration as a point of `S`.
    pub fn point(&self, z: Line) -> Point {
        let r = self.offset(z.quadrant);
        if z.pos <= r {
            return self.finite[(z.pos - 1) as usize];
        }
        let k = z.pos - r;
        match self.rays[z.quadrant - 1] {
            Ray::V { carrier, start } => Point::new(carrier.pos, start + k - 1, carrier.quadrant),
            Ray::H { carrier, start } => Point::new(start + k - 1, carrier.pos, carrier.quadrant),
        }
    }

    /// `f′`: the position of a region point, or `None` outside the region.
    pub fn position(&self, p: Point) -> Option<Line> {
        if let Some(j) = self.finite.iter().position(|q| *q == p) {
            return Some(Line::new(j as i64 + 1, 1));
        }
        self.rays.iter().enumerate().find_map(|(idx, ray)| {
            let k = match *ray {
                Ray::V { carrier, start } if Line::new(p.x, p.quadrant) == carrier && p.y >= start => p.y - start + 1,
                Ray::H { carrier, start } if Line::new(p.y, p.quadrant) == carrier && p.x >= start => p.x - start + 1,
                _ => return None,
            };
            Some(Line::new(k + self.offset(idx + 1), idx + 1))
        })
    }
}

/// The Houghton permutation `f′⁻¹ g f′` of `ℕ×{1..k₁+k₂}` for a group element
/// `g` that is the identity outside `region` and fixes every ray carrier.
pub fn stabilizer_conjugate(g: &GenMap, region: &RegionDecomposition) -> Result<HoughtonMap, PosetError> {
    let en = RayEnumeration::new(region);
    if en.ray_count() == 0 {
        return Err(PosetError::NoRays);
    }
    let w = region.extent().max(g.x0()).max(g.y0()) + 1;

    // Support: nothing outside the region may move.
    for q in 1..=g.n() {
        if g.m()[q - 1] != (0, 0) {
            return Err(PosetError::NotSupported(Point::new(w, w, q)));
        }
        for x in 1..=w {
            for y in 1..=w {
                let p = Point::new(x, y, q);
                if g.apply(p) != p && !region.contains(&p) {
                    return Err(PosetError::NotSupported(p));
                }
            }
        }
    }
    for (c, e) in g.colmap() {
        let moved = e.target != *c || e.shift != 0;
        if moved && !region.vrays.iter().any(|v| v.carrier() == *c) {
            return Err(PosetError::NotSupported(Point::new(c.pos, w + 1, c.quadrant)));
        }
    }
    for (r, e) in g.rowmap() {
        let moved = e.target != *r || e.shift != 0;
        if moved && !region.hrays.iter().any(|h| h.carrier() == *r) {
            return Err(PosetError::NotSupported(Point::new(w + 1, r.pos, r.quadrant)));
        }
    }
    if !g.is_bijective() {
        return Err(ElementError::NotBijective.into());
    }

    // Kernel: each ray's carrier is fixed, so the ray is shifted along itself.
    let mut m = Vec::with_capacity(en.ray_count());
    let mut x0 = 1;
    for (idx, ray) in en.rays.iter().enumerate() {
        let (img, start, threshold) = match *ray {
            Ray::V { carrier, start } => (g.col_image(carrier), start, g.y0()),
            Ray::H { carrier, start } => (g.row_image(carrier), start, g.x0()),
        };
        let carrier = match *ray {
            Ray::V { carrier, .. } | Ray::H { carrier, .. } => carrier,
        };
        if img.target != carrier {
            return Err(PosetError::NotInKernel(carrier.to_string()));
        }
        m.push(img.shift);
        x0 = x0.max(threshold - start + 2 + img.shift.abs() + en.offset(idx + 1));
    }
    Ok(HoughtonMap::from_fn(en.ray_count(), x0, m, |z| {
        en.position(g.apply(en.point(z))).expect("group element supported in the region permutes it")
    }))
}

/// The element `f′ h f′⁻¹` of `G_n`: it acts on `region` as `h` does on the
/// enumeration and fixes everything else.
pub fn kernel_element(n: usize, region: &RegionDecomposition, h: &HoughtonMap) -> Result<GenMap, PosetError> {
    let en = RayEnumeration::new(region);
    if en.ray_count() != h.n() {
        return Err(ElementError::QuadrantMismatch(en.ray_count(), h.n()).into());
    }
    let spread = h.m().iter().map(|v| v.abs()).max().unwrap_or(0);
    let t = region.extent() + h.x0() + en.offset(1) + spread + 2;
    Ok(GenMap::from_fn(n, t, t, vec![(0, 0); n], |p| match en.position(p) {
        Some(z) => en.point(h.apply(z)),
        None => p,
    }))
}
