use std::collections::HashSet;

use super::surface::SphereTriangulation;
use crate::model::OrientedTriangle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degeneracy {
    /// Area 0: every geodesic cycle through the three vertices encloses
    /// nothing.
    Flat,
    /// One of the three vertices is not on the region boundary.
    InteriorVertex,
    /// Some geodesic cycle splits the surface into two equal halves.
    Huge,
    /// The region boundary is not a single simple cycle.
    Boundary,
    /// Every candidate geodesic triple crosses itself.
    NoCycle,
    /// The surface has doubled edges, so sides are undefined.
    NonSimpleSurface,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// The three vertices, in argument order, run counterclockwise around
    /// the region boundary.
    Positive,
    Negative,
    Degenerate(Degeneracy),
}

impl Orientation {
    pub fn is_degenerate(self) -> bool {
        matches!(self, Orientation::Degenerate(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionInfo {
    vertices: [usize; 3],
    faces: Vec<usize>,
    orientation: Orientation,
    boundary: Vec<usize>,
}

impl RegionInfo {
    /// Builds the region record for `vertices` from its face set (indices
    /// into `s.faces()`), reading orientation off the boundary.
    pub fn from_faces(
        s: &SphereTriangulation,
        vertices: [usize; 3],
        faces: impl IntoIterator<Item = usize>,
        huge: bool,
    ) -> RegionInfo {
        let mut faces: Vec<usize> = faces.into_iter().collect();
        faces.sort_unstable();
        faces.dedup();
        let mut info = RegionInfo {
            vertices,
            faces,
            orientation: Orientation::Degenerate(Degeneracy::Flat),
            boundary: Vec::new(),
        };
        if !s.is_simple() {
            info.orientation = Orientation::Degenerate(Degeneracy::NonSimpleSurface);
            return info;
        }
        if huge {
            info.orientation = Orientation::Degenerate(Degeneracy::Huge);
            return info;
        }
        if info.faces.is_empty() {
            return info;
        }
        let Some(cycle) = boundary_cycle(s, &info.faces) else {
            info.orientation = Orientation::Degenerate(Degeneracy::Boundary);
            return info;
        };
        let pos = vertices.map(|v| cycle.iter().position(|&x| x == v));
        let [Some(pi), Some(pj), Some(pk)] = pos else {
            info.orientation = Orientation::Degenerate(Degeneracy::InteriorVertex);
            return info;
        };
        let len = cycle.len();
        let rel = |p: usize| (p + len - pi) % len;
        info.orientation = if rel(pj) < rel(pk) {
            Orientation::Positive
        } else {
            Orientation::Negative
        };
        info.boundary = (0..len).map(|t| cycle[(pi + t) % len]).collect();
        info
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.vertices
    }

    /// Sorted face indices.
    pub fn faces(&self) -> &[usize] {
        &self.faces
    }

    /// Number of faces.
    pub fn area(&self) -> usize {
        self.faces.len()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Boundary vertices counterclockwise from the first argument vertex;
    /// empty unless the orientation is defined.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// The triangle with its counterclockwise orientation, if defined.
    pub fn oriented(&self) -> Option<OrientedTriangle> {
        let [i, j, k] = self.vertices;
        match self.orientation {
            Orientation::Positive => Some(OrientedTriangle::new(i, j, k)),
            Orientation::Negative => Some(OrientedTriangle::new(i, k, j)),
            Orientation::Degenerate(_) => None,
        }
    }

    pub fn contains_face(&self, f: usize) -> bool {
        self.faces.binary_search(&f).is_ok()
    }

    /// Vertices incident to a region face.
    pub fn region_vertices(&self, s: &SphereTriangulation) -> Vec<usize> {
        let mut vs: Vec<usize> = self.faces.iter().flat_map(|&f| s.faces()[f]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// Face-set inclusion.
pub fn region_contains(outer: &RegionInfo, inner: &RegionInfo) -> bool {
    inner.faces.iter().all(|f| outer.contains_face(*f))
}

/// Directed boundary edges of a face set (region on the left), chained into
/// one cycle; `None` unless they form a single simple cycle.
fn boundary_cycle(s: &SphereTriangulation, faces: &[usize]) -> Option<Vec<usize>> {
    let inside: HashSet<usize> = faces.iter().copied().collect();
    let mut next = std::collections::HashMap::new();
    let mut edges = 0;
    for &f in faces {
        let [a, b, c] = s.faces()[f];
        for (x, y) in [(a, b), (b, c), (c, a)] {
            let across = s.face_of_edge(y, x).expect("closed surface");
            if !inside.contains(&across) {
                if next.insert(x, y).is_some() {
                    return None;
                }
                edges += 1;
            }
        }
    }
    let &start = next.keys().min()?;
    let mut cycle = vec![start];
    let mut cur = next[&start];
    while cur != start {
        if cycle.len() > edges {
            return None;
        }
        cycle.push(cur);
        cur = *next.get(&cur)?;
    }
    (cycle.len() == edges).then_some(cycle)
}

/// How a closed walk splits the faces.
pub(crate) enum Split {
    /// Faces outside the unique largest component.
    Interior(Vec<bool>),
    /// Two components tie for largest.
    Tie,
}

/// Largest number of geodesic triples examined exhaustively per region.
pub const MAX_GEODESIC_TRIPLES: usize = 20_000;

impl SphereTriangulation {
    /// Neighbours of `from` one step closer to `to`, counterclockwise.
    pub fn geodesic_steps(&self, from: usize, to: usize) -> Vec<usize> {
        let d = self.distance(from, to);
        self.neighbours(from)
            .iter()
            .copied()
            .filter(|&w| d > 0 && self.distance(w, to) + 1 == d)
            .collect()
    }

    /// Greedy geodesic from `first` on, always taking the most right
    /// (`right`) or most left step relative to the incoming edge.
    fn greedy_geodesic(&self, from: usize, to: usize, first: usize, right: bool) -> Vec<usize> {
        let mut path = vec![from, first];
        while *path.last().unwrap() != to {
            let cur = path[path.len() - 1];
            let prev = path[path.len() - 2];
            let rot = self.neighbours(cur);
            let deg = rot.len();
            let p = rot.iter().position(|&x| x == prev).expect("adjacent");
            let d = self.distance(cur, to);
            let step = (1..deg)
                .map(|t| if right { rot[(p + t) % deg] } else { rot[(p + deg - t) % deg] })
                .find(|&w| self.distance(w, to) + 1 == d)
                .expect("a geodesic continues");
            path.push(step);
        }
        path
    }

    /// Every geodesic from `from` to `to`, or `None` once more than `cap`
    /// have been found.
    pub fn all_geodesics(&self, from: usize, to: usize, cap: usize) -> Option<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut path = vec![from];
        fn extend(
            s: &SphereTriangulation,
            to: usize,
            path: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            cap: usize,
        ) -> bool {
            let cur = *path.last().expect("non-empty");
            if cur == to {
                out.push(path.clone());
                return out.len() <= cap;
            }
            for w in s.geodesic_steps(cur, to) {
                path.push(w);
                let ok = extend(s, to, path, out, cap);
                path.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        extend(self, to, &mut path, &mut out, cap).then_some(out)
    }

    /// The leftmost and rightmost geodesics from `from` to `to` for every
    /// contiguous block of first steps (every first step if all neighbours
    /// qualify).
    pub fn extremal_geodesics(&self, from: usize, to: usize) -> Vec<Vec<usize>> {
        let rot = self.neighbours(from);
        let deg = rot.len();
        let ok: Vec<bool> = rot
            .iter()
            .map(|&w| self.distance(w, to) + 1 == self.distance(from, to))
            .collect();
        let mut out = Vec::new();
        if ok.iter().all(|&b| b) {
            for &w in rot {
                out.push(self.greedy_geodesic(from, to, w, true));
                out.push(self.greedy_geodesic(from, to, w, false));
            }
        } else {
            for start in 0..deg {
                if !ok[start] || ok[(start + deg - 1) % deg] {
                    continue;
                }
                let mut end = start;
                while ok[(end + 1) % deg] {
                    end = (end + 1) % deg;
                }
                // Counterclockwise order runs right to left when facing the
                // block.
                out.push(self.greedy_geodesic(from, to, rot[start], true));
                out.push(self.greedy_geodesic(from, to, rot[end], false));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Whether neighbour `x` of `u` lies left of the walk `a -> u -> b`.
    fn left_of(&self, u: usize, a: usize, b: usize, x: usize) -> bool {
        let rot = self.neighbours(u);
        let deg = rot.len();
        let pos = |v: usize| rot.iter().position(|&y| y == v).expect("neighbour");
        let (pa, pb, px) = (pos(a), pos(b), pos(x));
        (px + deg - pb) % deg < (pa + deg - pb) % deg
    }

    /// Whether two simple paths cross transversally. Paths may share
    /// vertices and edges; a shared stretch is a crossing when the second
    /// path arrives on one side of the first and leaves on the other.
    /// Stretches touching an end of either path never count.
    pub fn paths_cross(&self, p: &[usize], q: &[usize]) -> bool {
        let qpos = |v: usize| q.iter().position(|&x| x == v);
        for a in 0..p.len() {
            let Some(b) = qpos(p[a]) else { continue };
            let prev_shared = a > 0 && qpos(p[a - 1]).is_some_and(|c| c + 1 == b || b + 1 == c);
            if prev_shared {
                continue;
            }
            // Direction of the shared stretch in q.
            let forward = a + 1 < p.len() && b + 1 < q.len() && p[a + 1] == q[b + 1];
            let backward = !forward && a + 1 < p.len() && b > 0 && p[a + 1] == q[b - 1];
            let mut t = 0;
            loop {
                let next_a = a + t + 1;
                let ok = next_a < p.len()
                    && if forward {
                        b + t + 1 < q.len() && p[next_a] == q[b + t + 1]
                    } else if backward {
                        b > t && p[next_a] == q[b - t - 1]
                    } else {
                        false
                    };
                if !ok {
                    break;
                }
                t += 1;
            }
            let (q_in, q_out) = if backward {
                (q.get(b + 1), b.checked_sub(t + 1).map(|i| &q[i]))
            } else {
                (b.checked_sub(1).map(|i| &q[i]), q.get(b + t + 1))
            };
            let (Some(&q_in), Some(&q_out)) = (q_in, q_out) else {
                continue;
            };
            if a == 0 || a + t + 1 >= p.len() {
                continue;
            }
            let u = p[a];
            let v = p[a + t];
            let side_in = self.left_of(u, p[a - 1], p[a + 1], q_in);
            let side_out = self.left_of(v, p[a + t - 1], p[a + t + 1], q_out);
            if side_in != side_out {
                return true;
            }
        }
        false
    }

    /// Splits the faces along the undirected edges of a closed walk.
    pub(crate) fn split_by_walk(&self, walk: &[usize]) -> Split {
        let cut: HashSet<(usize, usize)> = walk
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect();
        let m = self.faces().len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let n = parent[c];
                parent[c] = r;
                c = n;
            }
            r
        }
        for f in 0..m {
            let [a, b, c] = self.faces()[f];
            for (x, y) in [(a, b), (b, c), (c, a)] {
                if cut.contains(&(x.min(y), x.max(y))) {
                    continue;
                }
                let g = self.face_of_edge(y, x).expect("closed surface");
                let (rf, rg) = (find(&mut parent, f), find(&mut parent, g));
                parent[rf] = rg;
            }
        }
        let mut size = vec![0usize; m];
        let roots: Vec<usize> = (0..m).map(|f| find(&mut parent, f)).collect();
        for &r in &roots {
            size[r] += 1;
        }
        let largest = *size.iter().max().expect("faces");
        if size.iter().filter(|&&s| s == largest).count() > 1 {
            return Split::Tie;
        }
        let big = size.iter().position(|&s| s == largest).unwrap();
        Split::Interior(roots.iter().map(|&r| r != big).collect())
    }

    /// The triangular region of `(i, j, k)`: the union of the smaller sides
    /// of all closed walks made of pairwise non-crossing geodesics
    /// `i -> j -> k -> i`.
    ///
    /// All geodesics are enumerated while their combinations number at most
    /// [`MAX_GEODESIC_TRIPLES`]; past that only the extremal geodesics of
    /// each pair are used.
    pub fn triangular_region(&self, i: usize, j: usize, k: usize) -> RegionInfo {
        assert!(i != j && j != k && k != i, "distinct vertices required");
        if !self.is_simple() {
            return RegionInfo::from_faces(self, [i, j, k], [], false);
        }
        let cap = MAX_GEODESIC_TRIPLES;
        let exhaustive = (|| {
            let a = self.all_geodesics(i, j, cap)?;
            let b = self.all_geodesics(j, k, cap / a.len())?;
            let c = self.all_geodesics(k, i, cap / (a.len() * b.len()))?;
            Some((a, b, c))
        })();
        let (pij, pjk, pki) = exhaustive.unwrap_or_else(|| {
            (
                self.extremal_geodesics(i, j),
                self.extremal_geodesics(j, k),
                self.extremal_geodesics(k, i),
            )
        });
        let mut union = vec![false; self.faces().len()];
        let mut huge = false;
        let mut any = false;
        for a in &pij {
            for b in &pjk {
                if self.paths_cross(a, b) || self.paths_cross(b, a) {
                    continue;
                }
                for c in &pki {
                    if self.paths_cross(b, c)
                        || self.paths_cross(c, b)
                        || self.paths_cross(c, a)
                        || self.paths_cross(a, c)
                    {
                        continue;
                    }
                    any = true;
                    let walk: Vec<usize> = a
                        .iter()
                        .chain(&b[1..])
                        .chain(&c[1..])
                        .copied()
                        .collect();
                    match self.split_by_walk(&walk) {
                        Split::Tie => huge = true,
                        Split::Interior(inside) => {
                            for (u, f) in union.iter_mut().zip(inside) {
                                *u |= f;
                            }
                        }
                    }
                }
            }
        }
        let faces = union.iter().enumerate().filter(|(_, &b)| b).map(|(f, _)| f);
        let mut info = RegionInfo::from_faces(self, [i, j, k], faces, huge);
        if !any {
            info.orientation = Orientation::Degenerate(Degeneracy::NoCycle);
        }
        info
    }
}
