use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::snf::normal_form;
use super::{SimplicialComplex, TopologyError};

/// Reduced integer homology: `H̃_d ≅ ℤ^{betti[d]} ⊕ ⊕ ℤ/torsion[d][j]`,
/// with the face counts it was computed from.
///
/// Equality compares the homology groups only (trailing zero dimensions and
/// face counts are ignored), so profiles of homotopy equivalent complexes
/// compare equal.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyProfile {
    pub betti: Vec<u64>,
    #[serde(serialize_with = "torsion_as_strings")]
    pub torsion: Vec<Vec<BigInt>>,
    pub face_counts: Vec<u64>,
}

fn torsion_as_strings<S: Serializer>(t: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = t.iter().map(|d| d.iter().map(|x| x.to_string()).collect()).collect();
    strings.serialize(s)
}

impl PartialEq for HomologyProfile {
    fn eq(&self, other: &Self) -> bool {
        let dims = self.betti.len().max(other.betti.len());
        let none = Vec::new();
        (0..dims).all(|d| {
            self.betti(d) == other.betti(d)
                && self.torsion.get(d).unwrap_or(&none) == other.torsion.get(d).unwrap_or(&none)
        })
    }
}

impl Eq for HomologyProfile {}

impl HomologyProfile {
    /// `b̃_d`, zero beyond the dimension.
    pub fn betti(&self, d: usize) -> u64 {
        self.betti.get(d).copied().unwrap_or(0)
    }

    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }

    /// All reduced homology vanishes.
    pub fn is_acyclic(&self) -> bool {
        self.torsion_free() && self.betti.iter().all(|&b| b == 0)
    }

    /// Torsion-free with `b̃_e = 0` for every `e ≠ d`.
    pub fn concentrated_in(&self, d: usize) -> bool {
        self.torsion_free() && self.betti.iter().enumerate().all(|(e, &b)| e == d || b == 0)
    }

    /// `Σ(−1)^d f_d`.
    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.face_counts)
    }

    /// `1 + Σ(−1)^d b̃_d`; equals the Euler characteristic.
    pub fn betti_euler(&self) -> i64 {
        1 + alternating(&self.betti)
    }
}

fn alternating(v: &[u64]) -> i64 {
    v.iter().enumerate().map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>4}  {:>8}  {:>8}  torsion", "dim", "faces", "betti")?;
        for d in 0..self.betti.len() {
            let t = if self.torsion[d].is_empty() {
                "-".to_string()
            } else {
                self.torsion[d].iter().map(|x| format!("Z/{x}")).collect::<Vec<_>>().join(" + ")
            };
            writeln!(f, "{:>4}  {:>8}  {:>8}  {}", d, self.face_counts[d], self.betti[d], t)?;
        }
        Ok(())
    }
}

/// Exact reduced homology from the normal forms of the augmented boundary
/// matrices `∂_d : C_d → C_{d−1}` (with `C_{−1} = ℤ`).
pub fn reduced_homology(k: &SimplicialComplex) -> Result<HomologyProfile, TopologyError> {
    let faces = k.faces()?;
    if faces.is_empty() {
        return Err(TopologyError::EmptyComplex);
    }
    let top = faces.len() - 1;
    let mut ranks = Vec::with_capacity(top + 2);
    let mut tors = Vec::with_capacity(top + 2);
    for d in 0..=top {
        let (rows, ncols) = boundary(&faces, d);
        let nf = normal_form(&rows, ncols);
        ranks.push(nf.rank);
        tors.push(nf.torsion);
    }
    ranks.push(0);
    tors.push(Vec::new());

    let face_counts: Vec<u64> = faces.iter().map(|f| f.len() as u64).collect();
    let betti = (0..=top).map(|d| (faces[d].len() - ranks[d] - ranks[d + 1]) as u64).collect();
    let torsion = (0..=top).map(|d| std::mem::take(&mut tors[d + 1])).collect();
    Ok(HomologyProfile { betti, torsion, face_counts })
}

/// `∂_d` as sparse rows indexed by `d`-faces.
fn boundary(faces: &[Vec<Vec<usize>>], d: usize) -> (Vec<Vec<(usize, i64)>>, usize) {
    if d == 0 {
        return (faces[0].iter().map(|_| vec![(0, 1)]).collect(), 1);
    }
    let index: HashMap<&[usize], usize> = faces[d - 1].iter().enumerate().map(|(j, f)| (f.as_slice(), j)).collect();
    let rows = faces[d]
        .iter()
        .map(|f| {
            (0..f.len())
                .map(|skip| {
                    let face: Vec<usize> = f.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &v)| v).collect();
                    let sign = if skip % 2 == 0 { 1 } else { -1 };
                    (index[face.as_slice()], sign)
                })
                .collect()
        })
        .collect();
    (rows, faces[d - 1].len())
}
