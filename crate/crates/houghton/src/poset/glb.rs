use std::collections::BTreeSet;

use super::{grade, PosetError};
use crate::elements::GenMap;
use crate::lattice::{canonicalize, HRay, Line, Piece, Point, RegionDecomposition, VRay};

/// The image under `beta` of column 1 and row 1 of quadrant `i`, i.e. of
/// `S − S·t_i`.
pub fn restriction_image(beta: &GenMap, i: usize) -> RegionDecomposition {
    let mut pieces = Vec::new();
    let col = beta.col_image(Line::new(1, i));
    pieces.push(Piece::V(VRay::new(col.target.pos, col.target.quadrant, beta.y0() + col.shift)));
    pieces.extend((1..beta.y0()).map(|y| Piece::P(beta.apply(Point::new(1, y, i)))));
    let row = beta.row_image(Line::new(1, i));
    pieces.push(Piece::H(HRay::new(row.target.pos, row.target.quadrant, beta.x0() + row.shift)));
    pieces.extend((1..beta.x0()).map(|x| Piece::P(beta.apply(Point::new(x, 1, i)))));
    canonicalize(&pieces).expect("one ray of each kind cannot share a carrier")
}

/// The `i` with `t_i·beta = alpha`, if any. It is unique because `beta` is
/// injective.
pub fn maximal_index(alpha: &GenMap, beta: &GenMap) -> Option<usize> {
    (1..=alpha.n()).find(|&i| GenMap::t(alpha.n(), i).compose(beta).ok().as_ref() == Some(alpha))
}

fn indices(alpha: &GenMap, maximals: &[GenMap]) -> Result<Vec<usize>, PosetError> {
    maximals.iter().enumerate().map(|(j, b)| maximal_index(alpha, b).ok_or(PosetError::NotMaximalBelow(j))).collect()
}

/// Whether maximal elements `β_j < alpha` (with `t_{i_j}·β_j = alpha`) have a
/// common lower bound: the `i_j` must be distinct and the images of the
/// boundaries `S − S·t_{i_j}` pairwise disjoint.
pub fn glb_criterion(alpha: &GenMap, maximals: &[GenMap]) -> Result<bool, PosetError> {
    let idx = indices(alpha, maximals)?;
    if idx.iter().collect::<BTreeSet<_>>().len() != idx.len() {
        return Ok(false);
    }
    let images: Vec<RegionDecomposition> = maximals.iter().zip(&idx).map(|(b, &i)| restriction_image(b, i)).collect();
    for (u, a) in images.iter().enumerate() {
        for b in &images[u + 1..] {
            if a.common_point(b).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The greatest lower bound `δ` of the family: `δ` equals `β_j` on the
/// boundary of quadrant `i_j` and `(t_{i_1}⋯t_{i_p})⁻¹·alpha` everywhere else.
pub fn glb(alpha: &GenMap, maximals: &[GenMap]) -> Result<GenMap, PosetError> {
    grade(alpha)?;
    if maximals.is_empty() || !glb_criterion(alpha, maximals)? {
        return Err(PosetError::CriterionFailed);
    }
    let idx = indices(alpha, maximals)?;
    let n = alpha.n();
    let mut owner: Vec<Option<&GenMap>> = vec![None; n + 1];
    let mut m = alpha.m().to_vec();
    for (b, &i) in maximals.iter().zip(&idx) {
        owner[i] = Some(b);
        m[i - 1].0 -= 1;
        m[i - 1].1 -= 1;
    }
    let x0 = maximals.iter().map(|b| b.x0()).chain([alpha.x0() + 1]).max().expect("nonempty");
    let y0 = maximals.iter().map(|b| b.y0()).chain([alpha.y0() + 1]).max().expect("nonempty");
    Ok(GenMap::from_fn(n, x0, y0, m, |p| match owner[p.quadrant] {
        Some(b) if p.x == 1 || p.y == 1 => b.apply(p),
        Some(_) => alpha.apply(Point::new(p.x - 1, p.y - 1, p.quadrant)),
        None => alpha.apply(p),
    }))
}
