use std::collections::{BTreeMap, HashMap, VecDeque};

use super::SphereError;
use crate::model::{Diagonal, OrientedTriangle, Sign, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnionMode {
    /// Shared diagonals are an error.
    Strict,
    /// Shared diagonals are allowed; the result is flagged non-simple.
    Relaxed,
}

/// The closed surface obtained by gluing two triangulations of the same
/// polygon along its boundary: the first triangulation's triangles
/// counterclockwise, the second's reversed, so every face is oriented
/// outward and each edge is traversed once in each direction.
#[derive(Clone, Debug)]
pub struct SphereTriangulation {
    n: usize,
    faces: Vec<[usize; 3]>,
    /// Directed edge to the face containing it (simple surfaces only).
    edge_face: HashMap<(usize, usize), usize>,
    /// Neighbours of each vertex; counterclockwise around the vertex on
    /// simple surfaces.
    rotation: Vec<Vec<usize>>,
    distances: Vec<Vec<u32>>,
    simple: bool,
}

pub fn sphere_union(
    t1: &Triangulation,
    t2: &Triangulation,
    mode: UnionMode,
) -> Result<SphereTriangulation, SphereError> {
    if t1.n() != t2.n() {
        return Err(SphereError::SizeMismatch {
            left: t1.n(),
            right: t2.n(),
        });
    }
    let shared: Vec<Diagonal> = t1
        .diagonals()
        .iter()
        .copied()
        .filter(|d| t2.contains(*d))
        .collect();
    if mode == UnionMode::Strict {
        if let Some(&d) = shared.first() {
            return Err(SphereError::SharedDiagonal(d));
        }
    }
    let faces: Vec<[usize; 3]> = t1
        .triangles()
        .into_iter()
        .map(|t| t.cycle())
        .chain(t2.triangles().into_iter().map(|t| t.reversed().cycle()))
        .collect();
    Ok(SphereTriangulation::from_faces(t1.n(), faces, shared.is_empty()))
}

impl SphereTriangulation {
    fn from_faces(n: usize, faces: Vec<[usize; 3]>, simple: bool) -> Self {
        let v = n + 2;
        let mut edge_face = HashMap::new();
        let mut adjacency = vec![Vec::new(); v];
        for (f, &[a, b, c]) in faces.iter().enumerate() {
            for (x, y) in [(a, b), (b, c), (c, a)] {
                edge_face.insert((x, y), f);
                if !adjacency[x].contains(&y) {
                    adjacency[x].push(y);
                    adjacency[y].push(x);
                }
            }
        }
        let rotation = if simple {
            (0..v).map(|x| rotation_at(x, &faces, &edge_face)).collect()
        } else {
            adjacency.iter_mut().for_each(|a| a.sort_unstable());
            adjacency
        };
        let distances = (0..v).map(|s| bfs(&rotation, s)).collect();
        Self {
            n,
            faces,
            edge_face: if simple { edge_face } else { HashMap::new() },
            rotation,
            distances,
            simple,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n + 2
    }

    /// Faces in outward cyclic order; the first `n` come from the first
    /// triangulation.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> OrientedTriangle {
        let [a, b, c] = self.faces[f];
        OrientedTriangle::new(a, b, c)
    }

    /// False when the two triangulations shared a diagonal (doubled edges).
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    /// Every undirected edge lies on exactly two faces, traversed once in
    /// each direction.
    pub fn is_consistently_oriented(&self) -> bool {
        if !self.simple {
            return false;
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for &[a, b, c] in &self.faces {
            for e in [(a, b), (b, c), (c, a)] {
                *seen.entry(e).or_default() += 1;
            }
        }
        seen.iter()
            .all(|(&(x, y), &count)| count == 1 && seen.get(&(y, x)) == Some(&1))
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.distances[a][b] == 1
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for v in 0..self.vertex_count() {
            *h.entry(self.degree(v)).or_default() += 1;
        }
        h
    }

    /// Vertices whose degree is not 6.
    pub fn special_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.degree(v) != 6).collect()
    }

    /// Histogram `{4:4, 5:4, 6:n-6}` with every degree-4 vertex adjacent to a
    /// degree-5 vertex.
    pub fn has_expected_histogram(&self) -> bool {
        self.degree_histogram() == super::zigzag::expected_histogram(self.n)
            && (0..self.vertex_count())
                .filter(|&v| self.degree(v) == 4)
                .all(|v| self.neighbours(v).iter().any(|&u| self.degree(u) == 5))
    }

    /// Smallest pairwise distance among vertices of the given degree.
    pub fn special_separation(&self, degree: usize) -> Option<usize> {
        let vs: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| self.degree(v) == degree)
            .collect();
        let mut best = None;
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                let d = self.distance(a, b);
                best = Some(best.map_or(d, |x: usize| x.min(d)));
            }
        }
        best
    }

    /// Shortest-path distance in edges.
    pub fn distance(&self, x: usize, y: usize) -> usize {
        self.distances[x][y] as usize
    }

    pub fn diameter(&self) -> usize {
        self.distances
            .iter()
            .flat_map(|row| row.iter())
            .copied()
            .max()
            .unwrap_or(0) as usize
    }

    /// Face containing the directed edge `a -> b`.
    pub fn face_of_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_face.get(&(a, b)).copied()
    }

    /// Index of the face on the vertex set of `t`, if any.
    pub fn face_index(&self, t: OrientedTriangle) -> Option<usize> {
        let [a, b, _] = t.canonical();
        [(a, b), (b, a)]
            .into_iter()
            .filter_map(|(x, y)| self.face_of_edge(x, y))
            .find(|&f| self.face(f).canonical() == t.canonical())
    }

    /// Number of the three sides of `{a,b,c}` that are edges of the surface.
    pub fn edges_in(&self, [a, b, c]: [usize; 3]) -> usize {
        [(a, b), (b, c), (c, a)]
            .iter()
            .filter(|&&(x, y)| self.is_edge(x, y))
            .count()
    }

    /// `i j k s` per face: the sorted triple and the sign of the outward
    /// orientation relative to it.
    pub fn to_face_list(&self) -> String {
        let mut out = String::new();
        for f in 0..self.faces.len() {
            let t = self.face(f);
            let [i, j, k] = t.canonical();
            let s = match t.sign() {
                Sign::Pos => '+',
                Sign::Neg => '-',
            };
            out.push_str(&format!("{i} {j} {k} {s}\n"));
        }
        out
    }

    /// Undirected 1-skeleton with vertex degrees as labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph sphere {\n");
        for v in 0..self.vertex_count() {
            out.push_str(&format!("  {v} [label=\"{v} (deg {})\"];\n", self.degree(v)));
        }
        for a in 0..self.vertex_count() {
            let mut nb: Vec<usize> = self.rotation[a].iter().copied().filter(|&b| b > a).collect();
            nb.sort_unstable();
            for b in nb {
                out.push_str(&format!("  {a} -- {b};\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    /// All-pairs distances as CSV with a header row of vertex labels.
    pub fn distance_csv(&self) -> String {
        let v = self.vertex_count();
        let mut out = String::from("vertex");
        for y in 0..v {
            out.push_str(&format!(",{y}"));
        }
        out.push('\n');
        for x in 0..v {
            out.push_str(&x.to_string());
            for y in 0..v {
                out.push_str(&format!(",{}", self.distances[x][y]));
            }
            out.push('\n');
        }
        out
    }
}

/// Neighbours of `x` in counterclockwise order: face `(x, b, c)` means `c`
/// follows `b` around `x`.
fn rotation_at(x: usize, faces: &[[usize; 3]], edge_face: &HashMap<(usize, usize), usize>) -> Vec<usize> {
    let mut next = HashMap::new();
    for f in faces {
        if let Some(p) = f.iter().position(|&v| v == x) {
            next.insert(f[(p + 1) % 3], f[(p + 2) % 3]);
        }
    }
    let Some(&start) = next.keys().min() else {
        return Vec::new();
    };
    debug_assert!(edge_face.contains_key(&(x, start)));
    let mut order = vec![start];
    let mut cur = next[&start];
    while cur != start {
        order.push(cur);
        cur = next[&cur];
    }
    order
}

fn bfs(adjacency: &[Vec<usize>], s: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adjacency.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in &adjacency[u] {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}
