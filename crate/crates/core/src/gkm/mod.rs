//! Moment-graph data model: GKM graphs, generic vectors, indices, the canonical graph.

mod builders;
mod canonical_graph;
mod dot;
mod graph;
mod oriented;
mod paths;

pub use builders::projective_space;
pub use canonical_graph::{CanonicalEdge, CanonicalGraph};
pub use dot::to_dot;
pub use graph::{validate_gkm, Edge, GkmGraph, ValidationReport, Vertex, Violation};
pub use oriented::{choose_generic_xi, magnitude, OrientedGraphData};
pub use paths::{enumerate_paths, Path, PathGraph};
