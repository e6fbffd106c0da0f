//! Binary trees, polygon triangulations, oriented simplices and the dual
//! bijection between trees and triangulations.

mod bijection;
mod simplex;
mod tree;
mod triangulation;

use thiserror::Error;

pub use bijection::{rotation_diagonal, triangulation_to_tree, tree_to_triangulation};
pub use simplex::{binomial, quadruples, triples, OrientedTetrahedron, OrientedTriangle, Sign};
pub use tree::{BinaryTree, Node, ParseTreeError, ParseTreeErrorKind};
pub use triangulation::{validate, Diagnostics, Diagonal, Triangulation, Violation, MAX_TEXT_N};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    ParseTree(#[from] ParseTreeError),
    #[error("triangulation parse error on line {line}: {message}")]
    ParseTriangulation { line: usize, message: String },
    #[error("invalid triangulation: {0}")]
    Invalid(Diagnostics),
    #[error("{0} is not a diagonal of the triangulation")]
    NotADiagonal(Diagonal),
    #[error("a tree with no internal node has no triangulation")]
    EmptyTree,
    #[error("vertex {vertex} is out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("the second path does not start where the first one ends")]
    Discontinuous,
    #[error("size mismatch: n={left} vs n={right}")]
    SizeMismatch { left: usize, right: usize },
}
