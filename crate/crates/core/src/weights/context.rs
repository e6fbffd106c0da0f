use rayon::prelude::*;

use super::TriangleClass;
use crate::model::OrientedTriangle;
use crate::sphere::{Degeneracy, Orientation, RegionInfo, SphereTriangulation};

/// Colex rank of a sorted triple.
pub(crate) fn rank([a, b, c]: [usize; 3]) -> usize {
    c * (c - 1) * (c - 2) / 6 + b * (b - 1) / 2 + a
}

fn sorted(mut v: [usize; 3]) -> [usize; 3] {
    v.sort_unstable();
    v
}

/// A sphere together with the triangular region of every vertex triple.
#[derive(Clone, Debug)]
pub struct WeightContext {
    sphere: SphereTriangulation,
    triples: Vec<[usize; 3]>,
    regions: Vec<RegionInfo>,
}

impl WeightContext {
    /// Computes all regions, in parallel.
    pub fn new(sphere: SphereTriangulation) -> Self {
        let v = sphere.vertex_count();
        let mut triples = Vec::new();
        for c in 0..v {
            for b in 0..c {
                for a in 0..b {
                    triples.push([a, b, c]);
                }
            }
        }
        let regions = triples
            .par_iter()
            .map(|&[a, b, c]| sphere.triangular_region(a, b, c))
            .collect();
        Self {
            sphere,
            triples,
            regions,
        }
    }

    pub fn sphere(&self) -> &SphereTriangulation {
        &self.sphere
    }

    /// Polygon size of the underlying pair.
    pub fn n(&self) -> usize {
        self.sphere.n()
    }

    /// Sorted triples in colex order.
    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// Region of the sorted triple of `t`; its orientation refers to the
    /// sorted order.
    pub fn region(&self, t: [usize; 3]) -> &RegionInfo {
        &self.regions[rank(sorted(t))]
    }

    pub fn area(&self, t: [usize; 3]) -> usize {
        self.region(t).area()
    }

    /// The orientation in which the triangle's weight is non-negative by
    /// construction, if its region is oriented.
    pub fn chosen(&self, t: [usize; 3]) -> Option<OrientedTriangle> {
        self.region(t).oriented()
    }

    pub fn is_flat(&self, t: [usize; 3]) -> bool {
        self.region(t).orientation() == Orientation::Degenerate(Degeneracy::Flat)
    }

    pub fn is_face(&self, t: [usize; 3]) -> bool {
        let [a, b, c] = t;
        self.sphere
            .face_index(OrientedTriangle::new(a, b, c))
            .is_some()
    }

    /// The class of a triangle, and whether it is an unexpected three-edge
    /// non-face (classified as zero-edge).
    pub fn class(&self, t: [usize; 3]) -> (TriangleClass, bool) {
        match self.sphere.edges_in(t) {
            3 if self.is_face(t) => (TriangleClass::Face, false),
            3 => (TriangleClass::ZeroEdgeInductive, true),
            2 => (TriangleClass::TwoEdge, false),
            1 => (TriangleClass::OneEdgeFlow, false),
            _ => (TriangleClass::ZeroEdgeInductive, false),
        }
    }
}
