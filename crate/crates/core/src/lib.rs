//! Integer additive set-indexers (IASIs) of graphs.
//!
//! Sumset arithmetic, small-graph machinery, labeling verification,
//! constructive labelers with a bounded search, and nourishing numbers.

pub mod audit;
pub mod construct;
pub mod error;
pub mod graph;
pub mod labeling;
pub mod nourish;
pub mod sumset;

pub use error::{Error, Result};
pub use graph::{Family, FamilySpec, Graph, SunHull};
pub use labeling::{verify, Labeling, PropertyReport};
pub use sumset::IntSet;
