//! Generalized Houghton groups `G_n`, `G̃_n`, the ordered monoid of
//! eventually-translational injections of `(ℕ×ℕ)×{1..n}`, and exact integer
//! homology of the finite simplicial complexes that describe its topology.

pub mod elements;
pub mod lattice;
pub mod poset;
pub mod topology;
