//! Minimum s-t cuts and maximum flows in undirected planar graphs, computed
//! as shortest separating cycles in the dual, plus dynamic variants under
//! edge insertions and deletions.

pub mod cut_open;
pub mod dense_distance;
pub mod dynamic;
pub mod embedding;
pub mod error;
pub mod format;
pub mod generate;
pub mod maxflow;
pub mod mincut_fast;
pub mod oracle;
pub mod partition;
pub mod scalar;

pub use embedding::{DualGraph, EmbeddedGraph, FaceStructure, Slot};
pub use scalar::{Dist, Scalar};

use num_rational::Ratio;

pub type IntGraph = EmbeddedGraph<i64>;
pub type FloatGraph = EmbeddedGraph<f64>;
pub type RatioGraph = EmbeddedGraph<Ratio<i64>>;

pub type IntDynamicMaxFlow = dynamic::DynamicMaxFlow<i64>;
pub type IntDynamicSP = dynamic::DynamicSP<i64>;
