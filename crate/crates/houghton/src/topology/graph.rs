use std::collections::BTreeSet;

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{SimplicialComplex, TopologyError};
use crate::lattice::{CandidateMap, RegionDecomposition};

/// A graph whose vertices carry colors `1..=n_colors`, with edges only
/// between different colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawColoredGraph", into = "RawColoredGraph")]
pub struct ColoredGraph {
    n_colors: usize,
    colors: Vec<usize>,
    labels: Vec<String>,
    adj: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawColoredGraph {
    pub n_colors: usize,
    pub colors: Vec<usize>,
    #[serde(default)]
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl TryFrom<RawColoredGraph> for ColoredGraph {
    type Error = TopologyError;

    fn try_from(raw: RawColoredGraph) -> Result<Self, Self::Error> {
        let labels = if raw.labels.is_empty() { None } else { Some(raw.labels) };
        ColoredGraph::new(raw.n_colors, raw.colors, &raw.edges, labels)
    }
}

impl From<ColoredGraph> for RawColoredGraph {
    fn from(g: ColoredGraph) -> Self {
        let edges = g.edges();
        RawColoredGraph { n_colors: g.n_colors, colors: g.colors, labels: g.labels, edges }
    }
}

impl ColoredGraph {
    pub fn new(
        n_colors: usize,
        colors: Vec<usize>,
        edges: &[(usize, usize)],
        labels: Option<Vec<String>>,
    ) -> Result<Self, TopologyError> {
        let nv = colors.len();
        if let Some(c) = colors.iter().find(|&&c| c == 0 || c > n_colors) {
            return Err(TopologyError::InvalidGraph(format!("color {c} outside 1..={n_colors}")));
        }
        let labels = labels.unwrap_or_else(|| (0..nv).map(|v| v.to_string()).collect());
        if labels.len() != nv {
            return Err(TopologyError::InvalidGraph(format!("{} labels for {nv} vertices", labels.len())));
        }
        let mut adj = vec![vec![false; nv]; nv];
        for &(a, b) in edges {
            if a >= nv || b >= nv {
                return Err(TopologyError::InvalidVertex(format!("edge ({a}, {b}) with {nv} vertices")));
            }
            if colors[a] == colors[b] {
                return Err(TopologyError::InvalidGraph(format!("edge ({a}, {b}) inside color {}", colors[a])));
            }
            adj[a][b] = true;
            adj[b][a] = true;
        }
        Ok(ColoredGraph { n_colors, colors, labels, adj })
    }

    /// The complete multipartite graph with the given part sizes.
    pub fn complete_multipartite(sizes: &[usize]) -> Self {
        let colors: Vec<usize> = sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i + 1, s)).collect();
        let edges: Vec<(usize, usize)> =
            (0..colors.len()).tuple_combinations().filter(|&(a, b)| colors[a] != colors[b]).collect();
        Self::new(sizes.len(), colors, &edges, None).expect("edges join different colors")
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    /// `V_i`.
    pub fn color_class(&self, i: usize) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.colors[v] == i).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count()).tuple_combinations().filter(|&(a, b)| self.adj[a][b]).collect()
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a][b] = false;
        self.adj[b][a] = false;
    }
}

/// The complex of cliques of `g`. Each facet is a maximal clique.
pub fn clique_complex(g: &ColoredGraph) -> SimplicialComplex {
    let mut facets = Vec::new();
    let all: BTreeSet<usize> = (0..g.vertex_count()).collect();
    bron_kerbosch(g, &mut Vec::new(), all, BTreeSet::new(), &mut facets);
    SimplicialComplex::new(g.labels.clone(), facets).expect("cliques use graph vertices")
}

fn bron_kerbosch(
    g: &ColoredGraph,
    r: &mut Vec<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot =
        *p.iter().chain(x.iter()).max_by_key(|&&u| p.iter().filter(|&&v| g.adj[u][v]).count()).expect("p is nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.adj[pivot][v]).collect();
    for v in candidates {
        r.push(v);
        let np = p.iter().copied().filter(|&w| g.adj[v][w]).collect();
        let nx = x.iter().copied().filter(|&w| g.adj[v][w]).collect();
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.remove(&v);
        x.insert(v);
    }
}

/// The chessboard complex `Σ_{n,k}`: vertices `(i, w)`, simplices are
/// placements with pairwise distinct `i` and pairwise distinct `w`.
/// Vertex `(i, w)` has index `(i−1)·k + (w−1)`.
pub fn sigma_nk(n: usize, k: usize) -> SimplicialComplex {
    let labels = (1..=n).cartesian_product(1..=k).map(|(i, w)| format!("({i},{w})")).collect();
    let index = |i: usize, w: usize| (i - 1) * k + (w - 1);
    let facets: Vec<Vec<usize>> = if n <= k {
        (1..=k).permutations(n).map(|ws| ws.iter().enumerate().map(|(i, &w)| index(i + 1, w)).collect()).collect()
    } else {
        (1..=n).permutations(k).map(|is| is.iter().enumerate().map(|(w, &i)| index(i, w + 1)).collect()).collect()
    };
    SimplicialComplex::new(labels, facets).expect("indices are in range")
}

/// The colored 1-skeleton of `Σ_{n,k}`, colored by `i`.
pub fn sigma_nk_graph(n: usize, k: usize) -> ColoredGraph {
    let colors: Vec<usize> = (1..=n).flat_map(|i| std::iter::repeat_n(i, k)).collect();
    let edges: Vec<(usize, usize)> =
        (0..n * k).tuple_combinations().filter(|&(a, b)| a / k != b / k && a % k != b % k).collect();
    let labels = (1..=n).cartesian_product(1..=k).map(|(i, w)| format!("({i},{w})")).collect();
    ColoredGraph::new(n, colors, &edges, Some(labels)).expect("edges join different colors")
}

/// Why a graph fails the wedge conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GammaWitness {
    /// `|V_i| < 2`.
    SmallClass { color: usize, size: usize },
    /// These vertices outside `V_i` have fewer than two common neighbours
    /// in `V_i` (listed in `common`).
    Uncovered { color: usize, outside: Vec<usize>, common: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    pub holds: bool,
    pub witness: Option<GammaWitness>,
    /// Number of outside vertex sets examined.
    pub checked: usize,
}

/// Every color class has at least two vertices, and any `2(n−1)` vertices
/// outside a class `V_i` have at least two common neighbours in `V_i`.
///
/// Repeated vertices only make the set smaller, and a subset has at least
/// as many common neighbours as the set itself, so it suffices to check sets
/// of exactly `min(2(n−1), |V − V_i|)` distinct vertices.
pub fn check_gamma_conditions(g: &ColoredGraph) -> GammaReport {
    let n = g.n_colors;
    for i in 1..=n {
        let size = g.color_class(i).len();
        if size < 2 {
            return GammaReport {
                holds: false,
                witness: Some(GammaWitness::SmallClass { color: i, size }),
                checked: 0,
            };
        }
    }
    let mut checked = 0;
    for i in 1..=n {
        let inside = g.color_class(i);
        let outside: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.colors[v] != i).collect();
        let size = (2 * (n - 1)).min(outside.len());
        for set in outside.iter().copied().combinations(size) {
            checked += 1;
            let common: Vec<usize> = inside.iter().copied().filter(|&u| set.iter().all(|&v| g.adj[u][v])).collect();
            if common.len() < 2 {
                let witness = GammaWitness::Uncovered { color: i, outside: set, common };
                return GammaReport { holds: false, witness: Some(witness), checked };
            }
        }
    }
    GammaReport { holds: true, witness: None, checked }
}

/// The complete `n`-partite graph with parts of size `part_size`, with each
/// edge removed independently with probability `drop`.
pub fn random_colored_graph(rng: &mut impl Rng, n: usize, part_size: usize, drop: f64) -> ColoredGraph {
    let mut g = ColoredGraph::complete_multipartite(&vec![part_size; n]);
    for (a, b) in g.edges() {
        if rng.gen_bool(drop) {
            g.remove_edge(a, b);
        }
    }
    g
}

/// A finite full subcomplex of `Σ_α`: the candidates are vertices, and a set
/// of them is a simplex iff their source quadrants are pairwise distinct and
/// their images in `region` are pairwise disjoint.
pub fn finite_sigma_alpha(
    region: &RegionDecomposition,
    candidates: &[CandidateMap],
) -> Result<SimplicialComplex, TopologyError> {
    let images = candidates
        .iter()
        .enumerate()
        .map(|(j, c)| c.image(region).ok_or(TopologyError::ImageNotInRegion(j)))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(c) = candidates.iter().find(|c| c.quadrant == 0) {
        return Err(TopologyError::InvalidGraph(format!("candidate with quadrant {}", c.quadrant)));
    }
    let n_colors = candidates.iter().map(|c| c.quadrant).max().unwrap_or(1);
    let colors: Vec<usize> = candidates.iter().map(|c| c.quadrant).collect();
    let edges: Vec<(usize, usize)> = (0..candidates.len())
        .tuple_combinations()
        .filter(|&(a, b)| colors[a] != colors[b] && images[a].common_point(&images[b]).is_none())
        .collect();
    let labels = candidates.iter().enumerate().map(|(j, c)| format!("c{j}@Q{}", c.quadrant)).collect();
    let g = ColoredGraph::new(n_colors, colors, &edges, Some(labels))?;
    Ok(clique_complex(&g))
}
