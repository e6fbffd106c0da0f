//! Exact flip distances, flip-graph enumeration, diameters and explicit
//! flip paths at desk scale (at most 16 polygon vertices).

mod code;
mod diameter;
mod distance;
mod path;

use thiserror::Error;

use crate::model::{tree_to_triangulation, BinaryTree, ModelError, Triangulation};

pub use code::{Code, Codec, MAX_VERTICES};
pub use diameter::{diameter, DiameterMode, DiameterReport, FlipGraph, MAX_EXHAUSTIVE_DIAMETER_N};
pub use distance::{exact_distance, heuristic};
pub use path::{upper_bound_path, FlipPath, PathParseError};

/// Largest `n` the enumerating searches accept.
pub const MAX_SEARCH_N: usize = MAX_VERTICES - 2;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("n={n} exceeds the search size limit {max}")]
    SizeLimit { n: usize, max: usize },
    #[error("search exceeded its node budget of {budget}")]
    BudgetExceeded { budget: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// States the bidirectional BFS may store before giving up.
    pub node_budget: usize,
    /// Switch to IDA* when the BFS budget runs out.
    pub ida_fallback: bool,
    /// Expansions IDA* may perform before giving up.
    pub ida_budget: u64,
    /// Solve the sub-polygons cut out by common diagonals separately.
    pub decompose: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            node_budget: 10_000_000,
            ida_fallback: true,
            ida_budget: 1_000_000_000,
            decompose: false,
        }
    }
}

pub(crate) fn check_size(n: usize) -> Result<(), SearchError> {
    if n == 0 || n > MAX_SEARCH_N {
        return Err(SearchError::SizeLimit { n, max: MAX_SEARCH_N });
    }
    Ok(())
}

pub(crate) fn check_pair(t1: &Triangulation, t2: &Triangulation) -> Result<(), SearchError> {
    if t1.n() != t2.n() {
        return Err(ModelError::SizeMismatch {
            left: t1.n(),
            right: t2.n(),
        }
        .into());
    }
    check_size(t1.n())
}

/// Every triangulation of the `(n+2)`-gon exactly once, `1 <= n <= 14`.
pub fn enumerate_triangulations(
    n: usize,
) -> Result<impl ExactSizeIterator<Item = Triangulation>, SearchError> {
    check_size(n)?;
    let codec = Codec::new(n);
    let codes = codec.enumerate();
    Ok(codes.into_iter().map(move |c| codec.decode(c)))
}

/// One row of a CSV distance report; ids index [`enumerate_triangulations`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceRecord {
    pub n: usize,
    pub id1: usize,
    pub id2: usize,
    pub distance: usize,
}

impl DistanceRecord {
    pub const CSV_HEADER: &'static str = "n,id1,id2,distance";

    pub fn to_csv(&self) -> String {
        format!("{},{},{},{}", self.n, self.id1, self.id2, self.distance)
    }
}

/// Rotation distance between two trees, via the dual triangulations.
pub fn rotation_distance(
    a: &BinaryTree,
    b: &BinaryTree,
    opts: &SearchOptions,
) -> Result<(usize, FlipPath), SearchError> {
    let t1 = tree_to_triangulation(a)?;
    let t2 = tree_to_triangulation(b)?;
    exact_distance(&t1, &t2, opts)
}
