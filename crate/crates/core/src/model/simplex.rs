use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

/// Orientation sign of a simplex relative to its sorted vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// Sorts `v` in place and reports whether the sorting permutation was odd.
fn sort_with_parity<const K: usize>(v: &mut [usize; K]) -> bool {
    let mut odd = false;
    for i in 1..K {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

fn all_distinct(v: &[usize]) -> bool {
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j]))
}

/// A triangle on polygon labels with one of its two orientations.
///
/// Stored as the sorted triple plus a sign: `(i, j, k)` with `i < j < k` and
/// [`Sign::Pos`] is the counterclockwise triangle of the standard polygon
/// embedding. Cyclic rotations of the vertex order denote the same oriented
/// triangle; a transposition negates it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrientedTriangle {
    vertices: [usize; 3],
    sign: Sign,
}

impl OrientedTriangle {
    /// The oriented triangle `a -> b -> c`.
    ///
    /// Panics if two vertices coincide; use [`OrientedTriangle::try_new`] on
    /// untrusted input.
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        Self::try_new(a, b, c).unwrap_or_else(|| panic!("degenerate triangle ({a},{b},{c})"))
    }

    pub fn try_new(a: usize, b: usize, c: usize) -> Option<Self> {
        let mut v = [a, b, c];
        if !all_distinct(&v) {
            return None;
        }
        let odd = sort_with_parity(&mut v);
        Some(Self {
            vertices: v,
            sign: Sign::from_parity(odd),
        })
    }

    pub fn from_canonical(vertices: [usize; 3], sign: Sign) -> Self {
        debug_assert!(vertices[0] < vertices[1] && vertices[1] < vertices[2]);
        Self { vertices, sign }
    }

    /// Sorted vertex triple.
    pub fn canonical(&self) -> [usize; 3] {
        self.vertices
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Vertices listed in the orientation order, starting from the smallest.
    pub fn cycle(&self) -> [usize; 3] {
        let [i, j, k] = self.vertices;
        match self.sign {
            Sign::Pos => [i, j, k],
            Sign::Neg => [i, k, j],
        }
    }

    pub fn reversed(&self) -> Self {
        Self {
            vertices: self.vertices,
            sign: -self.sign,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

impl Neg for OrientedTriangle {
    type Output = OrientedTriangle;

    fn neg(self) -> Self {
        self.reversed()
    }
}

impl PartialOrd for OrientedTriangle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrientedTriangle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices
            .cmp(&other.vertices)
            .then(self.sign.cmp(&other.sign))
    }
}

impl fmt::Display for OrientedTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.cycle();
        write!(f, "({a},{b},{c})")
    }
}

/// A quadruple of labels with a sign giving the direction of the flip it
/// represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedTetrahedron {
    vertices: [usize; 4],
    sign: Sign,
}

impl OrientedTetrahedron {
    /// Builds the tetrahedron on a vertex set; the order of `vertices` is
    /// irrelevant, `sign` is relative to the sorted order.
    pub fn new(vertices: [usize; 4], sign: Sign) -> Option<Self> {
        let mut v = vertices;
        if !all_distinct(&v) {
            return None;
        }
        v.sort_unstable();
        Some(Self { vertices: v, sign })
    }

    pub fn vertices(&self) -> [usize; 4] {
        self.vertices
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// The four boundary faces `(ijl), (jkl), (kil), (kji)` of `{i<j<k<l}`,
    /// each reversed when the tetrahedron is negative.
    pub fn faces(&self) -> [OrientedTriangle; 4] {
        let [i, j, k, l] = self.vertices;
        let faces = [
            OrientedTriangle::new(i, j, l),
            OrientedTriangle::new(j, k, l),
            OrientedTriangle::new(k, i, l),
            OrientedTriangle::new(k, j, i),
        ];
        match self.sign {
            Sign::Pos => faces,
            Sign::Neg => faces.map(|f| f.reversed()),
        }
    }

    /// All `2 * C(vertex_count, 4)` oriented tetrahedra, sorted by vertex set
    /// then sign.
    pub fn all(vertex_count: usize) -> impl Iterator<Item = OrientedTetrahedron> {
        quadruples(vertex_count).flat_map(|q| {
            [Sign::Neg, Sign::Pos]
                .into_iter()
                .map(move |s| OrientedTetrahedron { vertices: q, sign: s })
        })
    }
}

/// Sorted quadruples `i < j < k < l` of `0..vertex_count` in lexicographic
/// order.
pub fn quadruples(vertex_count: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..vertex_count).flat_map(move |i| {
        (i + 1..vertex_count).flat_map(move |j| {
            (j + 1..vertex_count)
                .flat_map(move |k| (k + 1..vertex_count).map(move |l| [i, j, k, l]))
        })
    })
}

/// Sorted triples `i < j < k` of `0..vertex_count` in lexicographic order.
pub fn triples(vertex_count: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..vertex_count).flat_map(move |i| {
        (i + 1..vertex_count).flat_map(move |j| (j + 1..vertex_count).map(move |k| [i, j, k]))
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_rotations_are_identified() {
        let t = OrientedTriangle::new(3, 7, 5);
        assert_eq!(t, OrientedTriangle::new(7, 5, 3));
        assert_eq!(t, OrientedTriangle::new(5, 3, 7));
        assert_eq!(t.canonical(), [3, 5, 7]);
        assert_eq!(t.sign(), Sign::Neg);
    }

    #[test]
    fn transposition_negates() {
        let t = OrientedTriangle::new(0, 1, 2);
        assert_eq!(OrientedTriangle::new(1, 0, 2), -t);
        assert_eq!(OrientedTriangle::new(0, 2, 1), -t);
        assert_eq!(-(-t), t);
    }

    #[test]
    fn canonicalization_is_idempotent() {
        for (a, b, c) in [(4, 1, 9), (9, 4, 1), (1, 9, 4), (2, 0, 1)] {
            let t = OrientedTriangle::new(a, b, c);
            let [x, y, z] = t.cycle();
            assert_eq!(OrientedTriangle::new(x, y, z), t);
        }
    }

    #[test]
    fn degenerate_triangle_rejected() {
        assert!(OrientedTriangle::try_new(1, 1, 2).is_none());
        assert!(OrientedTetrahedron::new([1, 2, 3, 1], Sign::Pos).is_none());
    }

    #[test]
    fn tetrahedron_count() {
        for v in 3..10 {
            assert_eq!(OrientedTetrahedron::all(v).count(), 2 * binomial(v, 4));
        }
    }

    #[test]
    fn tetrahedron_faces_of_unit_square() {
        let t = OrientedTetrahedron::new([0, 1, 2, 3], Sign::Pos).unwrap();
        let faces = t.faces();
        assert_eq!(faces[0], OrientedTriangle::new(0, 1, 3));
        assert_eq!(faces[1], OrientedTriangle::new(1, 2, 3));
        assert_eq!(faces[2], -OrientedTriangle::new(0, 2, 3));
        assert_eq!(faces[3], -OrientedTriangle::new(0, 1, 2));
    }
}
