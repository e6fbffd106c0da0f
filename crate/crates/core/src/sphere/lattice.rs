//! The triangular lattice and its quotient by a point reflection about an
//! edge midpoint, which has one degree-5 vertex next to one degree-4 vertex
//! and is lattice-like elsewhere.

use std::collections::{HashMap, VecDeque};

use super::SphereError;

/// Axial coordinates; the six neighbours of `(x, y)` differ by
/// `(±1, 0)`, `(0, ±1)`, `±(1, -1)`.
pub type LatticePoint = (i64, i64);

const STEPS: [LatticePoint; 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

pub fn lattice_distance(a: LatticePoint, b: LatticePoint) -> u64 {
    let (dx, dy) = (a.0 - b.0, a.1 - b.1);
    dx.unsigned_abs()
        .max(dy.unsigned_abs())
        .max((dx + dy).unsigned_abs())
}

/// Point reflection about the midpoint of the edge `(0,0)-(1,0)`.
pub fn reflect(p: LatticePoint) -> LatticePoint {
    (1 - p.0, -p.1)
}

/// Distance in the quotient: `min(d(x, y), d(x, y'))` with `y'` the
/// reflected copy of `y`.
pub fn defect_distance(x: LatticePoint, y: LatticePoint) -> u64 {
    lattice_distance(x, y).min(lattice_distance(x, reflect(y)))
}

fn class(p: LatticePoint) -> LatticePoint {
    p.min(reflect(p))
}

/// A finite piece of the quotient: classes of lattice points within
/// `radius` of the two points `(0,0)` and `(1,0)` (which are identified).
pub struct LatticePatch {
    radius: u64,
    index: HashMap<LatticePoint, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl LatticePatch {
    pub fn new(radius: u64) -> Self {
        let r = radius as i64 + 1;
        let in_patch = |p: LatticePoint| lattice_distance(p, (0, 0)).min(lattice_distance(p, (1, 0))) <= radius;
        let mut index = HashMap::new();
        for x in -r..=r + 1 {
            for y in -r..=r {
                let p = (x, y);
                if in_patch(p) {
                    let c = class(p);
                    let next = index.len();
                    index.entry(c).or_insert(next);
                }
            }
        }
        let mut adjacency = vec![Vec::new(); index.len()];
        for (&c, &u) in &index {
            for p in [c, reflect(c)] {
                for (dx, dy) in STEPS {
                    let q = (p.0 + dx, p.1 + dy);
                    if !in_patch(q) {
                        continue;
                    }
                    let w = index[&class(q)];
                    if w != u && !adjacency[u].contains(&w) {
                        adjacency[u].push(w);
                    }
                }
            }
        }
        Self {
            radius,
            index,
            adjacency,
        }
    }

    /// Points within this distance of the defect get exact distances.
    pub fn query_radius(&self) -> u64 {
        self.radius.saturating_sub(1) / 3
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        lattice_distance(p, (0, 0)).min(lattice_distance(p, (1, 0))) <= self.query_radius()
    }

    pub fn degree(&self, p: LatticePoint) -> Option<usize> {
        self.index.get(&class(p)).map(|&u| self.adjacency[u].len())
    }

    /// Breadth-first distance between the classes of `x` and `y` inside the
    /// patch.
    pub fn bfs_distance(&self, x: LatticePoint, y: LatticePoint) -> Result<u64, SphereError> {
        let (s, t) = self.endpoints(x, y)?;
        let mut dist = vec![u64::MAX; self.adjacency.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                return Ok(dist[u]);
            }
            for &w in &self.adjacency[u] {
                if dist[w] == u64::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        unreachable!("the patch is connected")
    }

    fn endpoints(&self, x: LatticePoint, y: LatticePoint) -> Result<(usize, usize), SphereError> {
        for p in [x, y] {
            if !self.contains(p) {
                return Err(SphereError::OutOfPatch {
                    point: p,
                    radius: self.query_radius(),
                });
            }
        }
        Ok((self.index[&class(x)], self.index[&class(y)]))
    }
}

/// The reflection rule, restricted to points inside the patch's exact zone.
pub fn lattice_demo_distance(
    patch: &LatticePatch,
    x: LatticePoint,
    y: LatticePoint,
) -> Result<u64, SphereError> {
    patch.endpoints(x, y)?;
    Ok(defect_distance(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defect_degrees() {
        let patch = LatticePatch::new(6);
        assert_eq!(patch.degree((0, 0)), Some(4));
        assert_eq!(patch.degree((0, 1)), Some(5));
        assert_eq!(patch.degree((-1, 0)), Some(6));
        assert_eq!(patch.degree((2, 2)), Some(6));
    }

    #[test]
    fn worked_example() {
        let patch = LatticePatch::new(10);
        let (x, y) = ((-3, 0), (3, -3));
        assert_eq!(lattice_distance(x, y), 6);
        assert_eq!(lattice_distance(x, reflect(y)), 4);
        assert_eq!(lattice_demo_distance(&patch, x, y).unwrap(), 4);
        assert_eq!(patch.bfs_distance(x, y).unwrap(), 4);
        assert!(lattice_demo_distance(&patch, x, (9, 0)).is_err());
    }
}
