use std::collections::BTreeSet;

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::complex::{is_subset, FACE_CAP};
use super::{SimplicialComplex, TopologyError};

/// A finite poset stored as its full order relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPoset", into = "RawPoset")]
pub struct FinitePoset {
    labels: Vec<String>,
    le: Vec<Vec<bool>>,
}

/// Exchange format: labels plus generating pairs `a ≤ b` (usually the Hasse
/// diagram); the order is their reflexive-transitive closure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawPoset {
    pub labels: Vec<String>,
    pub relations: Vec<(usize, usize)>,
}

impl TryFrom<RawPoset> for FinitePoset {
    type Error = TopologyError;

    fn try_from(raw: RawPoset) -> Result<Self, Self::Error> {
        FinitePoset::from_relations(raw.labels, &raw.relations)
    }
}

impl From<FinitePoset> for RawPoset {
    fn from(p: FinitePoset) -> Self {
        let relations = p.covers();
        RawPoset { labels: p.labels, relations }
    }
}

impl FinitePoset {
    /// The order generated by `relations`. A cycle through distinct elements
    /// is not antisymmetric and is rejected.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self, TopologyError> {
        let n = labels.len();
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(TopologyError::InvalidVertex(format!("pair ({a}, {b}) with {n} elements")));
            }
            le[a][b] = true;
        }
        for k in 0..n {
            let above_k = le[k].clone();
            for row in le.iter_mut().filter(|row| row[k]) {
                for (cell, &up) in row.iter_mut().zip(&above_k) {
                    *cell |= up;
                }
            }
        }
        Self::from_matrix(labels, le)
    }

    /// A relation matrix that must already be a partial order.
    pub fn from_matrix(labels: Vec<String>, le: Vec<Vec<bool>>) -> Result<Self, TopologyError> {
        let n = labels.len();
        if le.len() != n || le.iter().any(|r| r.len() != n) {
            return Err(TopologyError::NotAPartialOrder(format!("relation matrix is not {n}×{n}")));
        }
        for a in 0..n {
            if !le[a][a] {
                return Err(TopologyError::NotAPartialOrder(format!("{} ≤ {} fails", labels[a], labels[a])));
            }
            for b in 0..n {
                if a != b && le[a][b] && le[b][a] {
                    return Err(TopologyError::NotAPartialOrder(format!(
                        "{} and {} are ≤ each other",
                        labels[a], labels[b]
                    )));
                }
                if le[a][b] {
                    if let Some(c) = (0..n).find(|&c| le[b][c] && !le[a][c]) {
                        return Err(TopologyError::NotAPartialOrder(format!(
                            "{} ≤ {} ≤ {} but not {} ≤ {}",
                            labels[a], labels[b], labels[c], labels[a], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FinitePoset { labels, le })
    }

    /// The poset on `0..n` with `a ≤ b` iff `leq(a, b)`.
    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self, TopologyError> {
        let le = (0..n).map(|a| (0..n).map(|b| leq(a, b)).collect()).collect();
        Self::from_matrix((0..n).map(|v| v.to_string()).collect(), le)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    /// `{a : a ≤ b}`.
    pub fn down_set(&self, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.le[a][b]).collect()
    }

    /// Covering pairs `a ⋖ b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.le[a][b];
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Whether every pair has a common upper bound.
    pub fn is_directed(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| (0..n).any(|c| self.le[a][c] && self.le[b][c])))
    }

    /// Greatest lower bound of a nonempty set, if one exists.
    pub fn meet(&self, set: &[usize]) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&d| set.iter().all(|&s| self.le[d][s])).collect();
        lower.iter().copied().find(|&d| lower.iter().all(|&e| self.le[e][d]))
    }

    /// Maximal elements.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| (0..self.len()).all(|b| b == a || !self.le[a][b])).collect()
    }

    /// The cover of the order complex by the order complexes of the down-sets
    /// of the maximal elements, provided every set of maximal elements with a
    /// common lower bound has a meet. Then every nonempty intersection of
    /// members is the cone `Δ(P_{≤m})` over a meet `m`.
    pub fn maximal_down_set_cover(&self) -> Option<Vec<SimplicialComplex>> {
        let tops = self.maximal();
        for set in tops.iter().copied().powerset().skip(1) {
            let has_lower = (0..self.len()).any(|d| set.iter().all(|&s| self.le[d][s]));
            if has_lower && self.meet(&set).is_none() {
                return None;
            }
        }
        tops.iter().map(|&b| self.order_complex_of(&self.down_set(b)).ok()).collect()
    }

    /// The order complex of the subposet on `subset`, as a complex on all of
    /// this poset's elements: one facet per maximal chain.
    pub fn order_complex_of(&self, subset: &[usize]) -> Result<SimplicialComplex, TopologyError> {
        let sub: BTreeSet<usize> = subset.iter().copied().collect();
        let lt = |a: usize, b: usize| a != b && self.le[a][b];
        let covers_above = |a: usize| -> Vec<usize> {
            sub.iter().copied().filter(|&b| lt(a, b) && !sub.iter().any(|&c| lt(a, c) && lt(c, b))).collect()
        };
        let minimal: Vec<usize> = sub.iter().copied().filter(|&a| !sub.iter().any(|&c| lt(c, a))).collect();

        let mut chains = Vec::new();
        let mut stack: Vec<Vec<usize>> = minimal.into_iter().map(|a| vec![a]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("chains are nonempty");
            let up = covers_above(last);
            if up.is_empty() {
                chains.push(chain);
                if chains.len() > FACE_CAP {
                    return Err(TopologyError::SizeCapExceeded { count: chains.len(), cap: FACE_CAP });
                }
            } else {
                for b in up {
                    let mut next = chain.clone();
                    next.push(b);
                    stack.push(next);
                }
            }
        }
        SimplicialComplex::new(self.labels.clone(), chains)
    }
}

/// A random poset on `2..=max` elements labelled `p0, p1, …`, generated by
/// pairs `a < b` (as indices) drawn with a random density.
pub fn random_poset(rng: &mut impl Rng, max: usize) -> FinitePoset {
    let n = rng.gen_range(2..=max.max(2));
    let density = rng.gen_range(0.15..0.6);
    let relations: Vec<(usize, usize)> =
        (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).filter(|_| rng.gen_bool(density)).collect();
    FinitePoset::from_relations((0..n).map(|v| format!("p{v}")).collect(), &relations)
        .expect("index order is a linear extension")
}

/// The complex of chains of `p`.
pub fn order_complex(p: &FinitePoset) -> Result<SimplicialComplex, TopologyError> {
    p.order_complex_of(&(0..p.len()).collect::<Vec<_>>())
}

/// The nerve of a cover of `target` by subcomplexes on the same vertex set:
/// members are the vertices, and a family spans a simplex iff the members
/// share a vertex.
pub fn nerve(target: &SimplicialComplex, cover: &[SimplicialComplex]) -> Result<SimplicialComplex, TopologyError> {
    if cover.is_empty() {
        return Err(TopologyError::NotACover("no members".into()));
    }
    for (j, c) in cover.iter().enumerate() {
        if c.vertices() != target.vertices() {
            return Err(TopologyError::NotACover(format!("member {j} has a different vertex set")));
        }
        if let Some(f) = c.facets().iter().find(|f| !target.contains_face(f)) {
            return Err(TopologyError::NotACover(format!("member {j} has the face {f:?} outside the target")));
        }
    }
    if let Some(f) = target.facets().iter().find(|f| !cover.iter().any(|c| c.contains_face(f))) {
        return Err(TopologyError::NotACover(format!("the face {f:?} is not covered")));
    }
    let facets = target
        .used_vertices()
        .into_iter()
        .map(|v| (0..cover.len()).filter(|&j| cover[j].facets().iter().any(|f| is_subset(&[v], f))).collect())
        .collect();
    SimplicialComplex::new((0..cover.len()).map(|j| format!("U{j}")).collect(), facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::reduced_homology;

    #[test]
    fn chains_and_cycles() {
        let chain = FinitePoset::from_fn(4, |a, b| a <= b).unwrap();
        let k = order_complex(&chain).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2, 3]]);
        let anti = FinitePoset::from_fn(4, |a, b| a == b).unwrap();
        assert_eq!(reduced_homology(&order_complex(&anti).unwrap()).unwrap().betti, vec![3]);
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(matches!(
            FinitePoset::from_relations(labels, &[(0, 1), (1, 0)]),
            Err(TopologyError::NotAPartialOrder(_))
        ));
    }

    #[test]
    fn nerve_of_triangle_edges() {
        let tri = SimplicialComplex::with_indexed_vertices(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let edges: Vec<_> = tri
            .facets()
            .iter()
            .map(|f| SimplicialComplex::with_indexed_vertices(3, vec![f.clone()]).unwrap())
            .collect();
        let n = nerve(&tri, &edges).unwrap();
        assert_eq!(reduced_homology(&n).unwrap(), reduced_homology(&tri).unwrap());
        assert!(matches!(nerve(&tri, &edges[..2]), Err(TopologyError::NotACover(_))));
    }
}
