//! Finite simplicial complexes and their exact reduced integer homology,
//! together with the complexes that appear around the monoid: order
//! complexes, nerves, chessboard complexes `Σ_{n,k}`, colored clique
//! complexes and finite models of the boundary complexes `Σ_α`.

mod complex;
mod graph;
mod homology;
mod order;
pub mod snf;

use thiserror::Error;

pub use complex::{SimplicialComplex, FACE_CAP};
pub use graph::{
    check_gamma_conditions, clique_complex, finite_sigma_alpha, random_colored_graph, sigma_nk, sigma_nk_graph,
    ColoredGraph, GammaReport, GammaWitness, RawColoredGraph,
};
pub use homology::{reduced_homology, HomologyProfile};
pub use order::{nerve, order_complex, random_poset, FinitePoset, RawPoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("the complex has no vertices")]
    EmptyComplex,
    #[error("more than {cap} faces (refusing to build {count} or more)")]
    SizeCapExceeded { count: usize, cap: usize },
    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("not a cover: {0}")]
    NotACover(String),
    #[error("invalid vertex: {0}")]
    InvalidVertex(String),
    #[error("invalid colored graph: {0}")]
    InvalidGraph(String),
    #[error("candidate {0} does not map into the region")]
    ImageNotInRegion(usize),
}
