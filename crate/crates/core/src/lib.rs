//! Brauer trees, their edge reflections, reduction to Brauer lines, and
//! verification of the underlying tilting complexes over prime fields.

pub mod field;
pub mod lab;
pub mod planner;
pub mod quiver;
pub mod reflection;
pub mod tree;

pub use tree::{
    enumerate_plane_trees, parse_tree, CanonicalCode, EdgeId, NumericalInvariants, PlanarTree,
    TreeError, VertexId,
};
