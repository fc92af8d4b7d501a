use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::TopologyError;

/// Largest number of faces (all dimensions together) a complex may have.
pub const FACE_CAP: usize = 2_000_000;

/// A finite abstract simplicial complex given by labelled vertices and its
/// facets. Faces are all subsets of facets; only maximal facets are kept,
/// sorted, so equal complexes compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex")]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

impl TryFrom<RawComplex> for SimplicialComplex {
    type Error = TopologyError;

    fn try_from(raw: RawComplex) -> Result<Self, Self::Error> {
        SimplicialComplex::new(raw.vertices, raw.facets)
    }
}

impl SimplicialComplex {
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self, TopologyError> {
        let nv = vertices.len();
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for f in facets {
            if let Some(&v) = f.iter().find(|&&v| v >= nv) {
                return Err(TopologyError::InvalidVertex(format!("index {v} with {nv} vertices")));
            }
            let s: BTreeSet<usize> = f.into_iter().collect();
            if !s.is_empty() {
                sets.push(s.into_iter().collect());
            }
        }
        // Keep maximal sets only; larger sets first so a subset test suffices.
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for s in sets {
            if !kept.iter().any(|k| is_subset(&s, k)) {
                kept.push(s);
            }
        }
        kept.sort();
        Ok(SimplicialComplex { vertices, facets: kept })
    }

    /// Vertices labelled `0, 1, …, n−1`.
    pub fn with_indexed_vertices(n: usize, facets: Vec<Vec<usize>>) -> Result<Self, TopologyError> {
        Self::new((0..n).map(|v| v.to_string()).collect(), facets)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Vertices that lie in some face.
    pub fn used_vertices(&self) -> BTreeSet<usize> {
        self.facets.iter().flatten().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    /// Whether the sorted vertex set `s` is a face.
    pub fn contains_face(&self, s: &[usize]) -> bool {
        let s: Vec<usize> = s.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        self.facets.iter().any(|f| is_subset(&s, f))
    }

    /// All nonempty faces, grouped by dimension and sorted in each dimension.
    pub fn faces(&self) -> Result<Vec<Vec<Vec<usize>>>, TopologyError> {
        let dim = match self.dimension() {
            Some(d) => d,
            None => return Ok(Vec::new()),
        };
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        let mut count = 0usize;
        for f in &self.facets {
            for mask in 1u64..(1u64 << f.len()) {
                let face: Vec<usize> = (0..f.len()).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect();
                let d = face.len() - 1;
                if by_dim[d].insert(face) {
                    count += 1;
                    if count > FACE_CAP {
                        return Err(TopologyError::SizeCapExceeded { count, cap: FACE_CAP });
                    }
                }
            }
        }
        Ok(by_dim.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    /// The face count in each dimension.
    pub fn f_vector(&self) -> Result<Vec<usize>, TopologyError> {
        Ok(self.faces()?.iter().map(|f| f.len()).collect())
    }
}

/// `a ⊆ b` for sorted slices.
pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_facets() {
        let k = SimplicialComplex::with_indexed_vertices(3, vec![vec![1, 0], vec![0], vec![0, 1], vec![2]]).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1], vec![2]]);
        assert_eq!(k.f_vector().unwrap(), vec![3, 1]);
        assert!(k.contains_face(&[1, 0]));
        assert!(!k.contains_face(&[1, 2]));
    }

    #[test]
    fn rejects_bad_vertex() {
        assert!(matches!(
            SimplicialComplex::with_indexed_vertices(2, vec![vec![0, 2]]),
            Err(TopologyError::InvalidVertex(_))
        ));
    }
}
