//! Exact flip distances between polygon triangulations (equivalently,
//! rotation distances between binary trees), LP-duality lower-bound
//! certificates, and a flow-built weight function certifying that the
//! zig-zag pair is `2n - O(1)` flips apart.

pub mod model;
pub mod search;
pub mod lp;
pub mod sphere;
pub mod weights;
