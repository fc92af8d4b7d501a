//! Eventually-translational maps of `S` and of `ℕ×{1..n}`.
//!
//! [`GenMap`] covers the groups `G̃_n ⊇ G_n`, the monoid `M` of injections
//! satisfying the diagonal condition and the translation monoid `T`.
//! [`HoughtonMap`] is the one-dimensional analogue and carries the images of
//! the column and row projections `π` and `σ`.

mod genmap;
mod houghton;
mod random;

pub use genmap::{GenMap, LineImage, RawGenMap};
pub use houghton::{HoughtonMap, RawHoughtonMap};
pub use random::{generators, random_element, random_houghton, sample_element, Bounds, ClassSpec};

use serde::Serialize;
use thiserror::Error;

use crate::lattice::Point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("malformed element: {0}")]
    Malformed(String),
    #[error("image leaves the lattice: {0}")]
    InvalidImage(String),
    #[error("not injective: {first} and {second} both map to {image}")]
    NotInjective { first: Point, second: Point, image: Point },
    #[error("not injective on rays: {first} and {second} both map to {image}")]
    NotInjectiveLine { first: String, second: String, image: String },
    #[error("map is not bijective")]
    NotBijective,
    #[error("quadrant counts differ ({0} vs {1})")]
    QuadrantMismatch(usize, usize),
    #[error("no element of the requested class fits the bounds: {0}")]
    InfeasibleBounds(String),
}

/// Classification flags of a validated [`GenMap`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MapClass {
    pub is_bijective: bool,
    pub in_gtilde: bool,
    pub in_gn: bool,
    pub in_m: bool,
    pub in_t: bool,
}

/// Validate raw element data and classify it.
pub fn validate(raw: &RawGenMap) -> Result<MapClass, ElementError> {
    Ok(GenMap::try_from_raw(raw)?.classify())
}
