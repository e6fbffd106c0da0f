//! Weight functions on oriented triangles built from the zig-zag sphere,
//! and their verification.
//!
//! Triangles are classified by how many of their sides are sphere edges.
//! Faces get base weights, triangles created by a single flip get fixed
//! small weights, triangles with one sphere edge get their weight from a
//! flow problem around their isolated vertex, and the rest are filled in by
//! induction on region area.

mod assemble;
mod base;
mod context;
mod figure;
mod flow;
mod network;
mod verify;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::OrientedTriangle;
use crate::sphere::SphereError;

pub use assemble::{
    assemble_weight_function, assemble_with, choose_c, flow_summaries, one_edge_weights, total_weight,
    zero_edge_weight, AssembledWeights, FlowSummary,
};
pub use base::{base_weights, simplified_assignment, two_edge_weight, Assignment};
pub use context::WeightContext;
pub use figure::{
    face_candidates, solve_figure_gap, special_pairs, FigureFailure, FigureOutcome, FigureSolution,
    TARGET_THREE_QUARTER_FACES,
};
pub use flow::{max_flow, Arc, ArcKind, FlowNetwork, FlowResult, NodeKind};
pub use network::build_flow_instance;
pub use verify::{
    check_lemmas, check_tetrahedral_constraints, LemmaReport, TetraReport, Violation,
};

/// Default inner capacity radius.
pub const DEFAULT_C: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Zero weight near the special vertices, two capacity bands.
    Simplified,
    /// Weights 3/4 and 1 near the special vertices, fitted by a local search.
    Full,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Simplified => "simplified",
            Variant::Full => "full",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simplified" => Ok(Variant::Simplified),
            "full" => Ok(Variant::Full),
            other => Err(WeightError::Config(format!("unknown variant `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariantConfig {
    pub variant: Variant,
    /// Radius (in edges) of the capacity-1/2 band.
    pub c: usize,
    /// Radius beyond which arcs lose their direction.
    pub c_outer: usize,
    /// Radius of the zero-weight neighbourhood of a special vertex
    /// (simplified variant).
    pub r0: usize,
    /// Assembly evaluations the figure solver may spend (full variant).
    pub solver_budget: usize,
}

impl VariantConfig {
    pub fn simplified(c: usize) -> Self {
        Self {
            variant: Variant::Simplified,
            c,
            c_outer: 10 * c + 1,
            r0: 1,
            solver_budget: 0,
        }
    }

    pub fn full(c: usize) -> Self {
        Self {
            variant: Variant::Full,
            solver_budget: 400,
            ..Self::simplified(c)
        }
    }

    pub fn validate(&self) -> Result<(), WeightError> {
        if self.c < 1 {
            return Err(WeightError::Config("c must be at least 1".into()));
        }
        if self.r0 < 1 {
            return Err(WeightError::Config("r0 must be at least 1".into()));
        }
        if self.c_outer <= 10 * self.c {
            return Err(WeightError::Config(format!(
                "c' = {} must exceed 10c = {}",
                self.c_outer,
                10 * self.c
            )));
        }
        Ok(())
    }
}

impl Default for VariantConfig {
    fn default() -> Self {
        Self::simplified(DEFAULT_C)
    }
}

/// How a triangle received its weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriangleClass {
    Face,
    TwoEdge,
    OneEdgeFlow,
    ZeroEdgeInductive,
}

impl TriangleClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TriangleClass::Face => "face",
            TriangleClass::TwoEdge => "two-edge",
            TriangleClass::OneEdgeFlow => "one-edge-flow",
            TriangleClass::ZeroEdgeInductive => "zero-edge-inductive",
        }
    }
}

impl fmt::Display for TriangleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TriangleClass {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            TriangleClass::Face,
            TriangleClass::TwoEdge,
            TriangleClass::OneEdgeFlow,
            TriangleClass::ZeroEdgeInductive,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
        .ok_or_else(|| WeightError::Config(format!("unknown triangle class `{s}`")))
    }
}

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("triangle {triangle} has {edges} sphere edges, expected {expected}")]
    ClassMismatch {
        triangle: OrientedTriangle,
        edges: usize,
        expected: usize,
    },
    #[error("unexpected sphere structure: {0}")]
    Structure(String),
    #[error("triangle {triangle} needs the weight of {missing}, which is not assigned yet")]
    InductionOrder {
        triangle: OrientedTriangle,
        missing: OrientedTriangle,
    },
    #[error("figure solver failed: {0}")]
    SolverFailure(String),
    #[error(transparent)]
    Sphere(#[from] SphereError),
}
