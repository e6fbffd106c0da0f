//! The zig-zag pair, the sphere formed by their union, distances on it,
//! triangular regions, and the lattice picture of a single defect.

mod lattice;
mod region;
mod surface;
mod zigzag;

use thiserror::Error;

use crate::model::{Diagonal, ModelError};

pub use lattice::{
    defect_distance, lattice_demo_distance, lattice_distance, reflect, LatticePatch, LatticePoint,
};
pub use region::{region_contains, Degeneracy, Orientation, RegionInfo, MAX_GEODESIC_TRIPLES};
pub use surface::{sphere_union, SphereTriangulation, UnionMode};
pub use zigzag::{
    default_rotation_start, default_separation, evaluate_rotation, expected_histogram,
    rotated_zigzag, select_rotation, zigzag, RotationChoice, MIN_ROTATED_N,
};

#[derive(Debug, Error)]
pub enum SphereError {
    #[error("n={n} is below the minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error("size mismatch: n={left} vs n={right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("the two triangulations share the diagonal {0}")]
    SharedDiagonal(Diagonal),
    #[error("lattice point {point:?} is outside the exact zone of radius {radius}")]
    OutOfPatch { point: LatticePoint, radius: u64 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// The zig-zag pair for `n` with offset `r` and their strict union.
pub fn zigzag_sphere(n: usize, r: usize) -> Result<SphereTriangulation, SphereError> {
    sphere_union(&zigzag(n)?, &rotated_zigzag(n, r)?, UnionMode::Strict)
}
