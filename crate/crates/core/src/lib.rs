//! Exact evaluation and optimization of linear graph reassemblings and
//! linear arrangements, with executable reductions between the two.

pub mod error;
pub mod fixtures;
pub mod generators;
pub mod graph;
pub mod layout;
pub mod reduction;
pub mod sequential;
pub mod set;
pub mod solvers;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Vertex};
pub use layout::LinearArrangement;
pub use set::VertexSet;
pub use tree::ReassemblyTree;
