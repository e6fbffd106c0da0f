use std::fmt;
use std::str::FromStr;

use super::simplex::OrientedTriangle;
use super::ModelError;

/// An unordered vertex pair, stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagonal {
    lo: usize,
    hi: usize,
}

impl Diagonal {
    pub fn new(a: usize, b: usize) -> Self {
        Self {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn touches(&self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    /// Two chords of a convex polygon cross iff their endpoints interleave.
    pub fn crosses(&self, other: &Diagonal) -> bool {
        let (a, b, c, d) = (self.lo, self.hi, other.lo, other.hi);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

impl FromStr for Diagonal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("expected `(a,b)`, found `{s}`"))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected `(a,b)`, found `{s}`"))?;
        let a = a.trim().parse::<usize>().map_err(|e| format!("bad vertex `{a}`: {e}"))?;
        let b = b.trim().parse::<usize>().map_err(|e| format!("bad vertex `{b}`: {e}"))?;
        Ok(Diagonal::new(a, b))
    }
}

/// One failed triangulation invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// n must be at least 1 (the 2-gon has no triangulation).
    TooSmall,
    WrongCount { expected: usize, found: usize },
    OutOfRange(Diagonal),
    Degenerate(Diagonal),
    PolygonEdge(Diagonal),
    Duplicate(Diagonal),
    Crossing(Diagonal, Diagonal),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooSmall => write!(f, "n must be at least 1"),
            Violation::WrongCount { expected, found } => {
                write!(f, "expected {expected} diagonals, found {found}")
            }
            Violation::OutOfRange(d) => write!(f, "diagonal {d} has a vertex out of range"),
            Violation::Degenerate(d) => write!(f, "diagonal {d} joins a vertex to itself"),
            Violation::PolygonEdge(d) => write!(f, "{d} is a polygon edge"),
            Violation::Duplicate(d) => write!(f, "diagonal {d} listed twice"),
            Violation::Crossing(a, b) => write!(f, "diagonals {a} and {b} cross"),
        }
    }
}

/// Result of [`validate`]: empty iff the diagonal set triangulates the polygon.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub violations: Vec<Violation>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every triangulation invariant for `n` and a raw diagonal list.
///
/// In a convex polygon a non-crossing set of `n - 1` proper diagonals is
/// always maximal, so count plus pairwise non-crossing is sufficient.
pub fn validate(n: usize, diagonals: &[Diagonal]) -> Diagnostics {
    let mut violations = Vec::new();
    if n == 0 {
        violations.push(Violation::TooSmall);
    }
    let expected = n.saturating_sub(1);
    if diagonals.len() != expected {
        violations.push(Violation::WrongCount {
            expected,
            found: diagonals.len(),
        });
    }
    let vertex_count = n + 2;
    let mut proper = Vec::with_capacity(diagonals.len());
    for d in diagonals {
        if d.hi >= vertex_count {
            violations.push(Violation::OutOfRange(*d));
        } else if d.lo == d.hi {
            violations.push(Violation::Degenerate(*d));
        } else if is_polygon_edge(vertex_count, d.lo, d.hi) {
            violations.push(Violation::PolygonEdge(*d));
        } else {
            proper.push(*d);
        }
    }
    proper.sort_unstable();
    for w in proper.windows(2) {
        if w[0] == w[1] {
            violations.push(Violation::Duplicate(w[0]));
        }
    }
    proper.dedup();
    for (i, a) in proper.iter().enumerate() {
        for b in &proper[i + 1..] {
            if a.crosses(b) {
                violations.push(Violation::Crossing(*a, *b));
            }
        }
    }
    Diagnostics { violations }
}

pub(crate) fn is_polygon_edge(vertex_count: usize, a: usize, b: usize) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    hi - lo == 1 || (lo == 0 && hi == vertex_count - 1)
}

/// A triangulation of the convex `(n+2)`-gon with vertices `0..=n+1` in
/// counterclockwise order.
///
/// Always valid: every constructor runs [`validate`]. The diagonal list is
/// kept sorted, which makes equality, hashing and the text form canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    n: usize,
    diagonals: Vec<Diagonal>,
}

impl Triangulation {
    pub fn new(n: usize, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self, ModelError> {
        let mut diagonals: Vec<Diagonal> = diagonals.into_iter().collect();
        let report = validate(n, &diagonals);
        if !report.is_valid() {
            return Err(ModelError::Invalid(report));
        }
        diagonals.sort_unstable();
        Ok(Self { n, diagonals })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, ModelError> {
        Self::new(n, pairs.iter().map(|&(a, b)| Diagonal::new(a, b)))
    }

    /// Caller guarantees validity and sortedness.
    pub(crate) fn from_sorted_unchecked(n: usize, diagonals: Vec<Diagonal>) -> Self {
        debug_assert!(validate(n, &diagonals).is_valid());
        debug_assert!(diagonals.windows(2).all(|w| w[0] < w[1]));
        Self { n, diagonals }
    }

    /// The fan triangulation with every diagonal at `apex`.
    pub fn fan(n: usize, apex: usize) -> Result<Self, ModelError> {
        if apex >= n + 2 {
            return Err(ModelError::VertexOutOfRange { vertex: apex, n });
        }
        let v = n + 2;
        let diags = (2..v - 1).map(|k| Diagonal::new(apex, (apex + k) % v));
        Self::new(n, diags)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n + 2
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.binary_search(&d).is_ok()
    }

    /// True for polygon edges and diagonals of this triangulation.
    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        a != b
            && (is_polygon_edge(self.vertex_count(), a, b) || self.contains(Diagonal::new(a, b)))
    }

    /// Number of diagonals incident to `v`.
    pub fn diagonal_degree(&self, v: usize) -> usize {
        self.diagonals.iter().filter(|d| d.touches(v)).count()
    }

    /// The two apexes of the triangles on either side of `d`: first the one
    /// with label strictly between `d.lo()` and `d.hi()`, then the other.
    pub fn quadrilateral(&self, d: Diagonal) -> Result<(usize, usize), ModelError> {
        if !self.contains(d) {
            return Err(ModelError::NotADiagonal(d));
        }
        let (a, c) = (d.lo, d.hi);
        let inner = (a + 1..c).find(|&b| self.is_edge(a, b) && self.is_edge(b, c));
        let outer = (c + 1..self.vertex_count())
            .chain(0..a)
            .find(|&b| self.is_edge(a, b) && self.is_edge(b, c));
        match (inner, outer) {
            (Some(x), Some(y)) => Ok((x, y)),
            _ => unreachable!("valid triangulation has a triangle on each side of {d}"),
        }
    }

    /// Replaces `d` by the other diagonal of its quadrilateral. Returns the
    /// new triangulation and the inserted diagonal.
    pub fn flip_with_new(&self, d: Diagonal) -> Result<(Triangulation, Diagonal), ModelError> {
        let (b1, b2) = self.quadrilateral(d)?;
        let new = Diagonal::new(b1, b2);
        let mut diagonals: Vec<Diagonal> =
            self.diagonals.iter().copied().filter(|&e| e != d).collect();
        let pos = diagonals.binary_search(&new).unwrap_err();
        diagonals.insert(pos, new);
        Ok((Triangulation::from_sorted_unchecked(self.n, diagonals), new))
    }

    pub fn flip(&self, d: Diagonal) -> Result<Triangulation, ModelError> {
        self.flip_with_new(d).map(|(t, _)| t)
    }

    /// The `n` triangles, each oriented counterclockwise (so every one has
    /// positive sign), in the preorder of the dual tree rooted at the
    /// triangle on the distinguished edge `(0, n+1)`.
    pub fn triangles(&self) -> Vec<OrientedTriangle> {
        let mut out = Vec::with_capacity(self.n);
        let mut stack = vec![(0usize, self.n + 1)];
        while let Some((lo, hi)) = stack.pop() {
            if hi - lo < 2 {
                continue;
            }
            let m = self.apex_between(lo, hi);
            out.push(OrientedTriangle::new(lo, m, hi));
            stack.push((m, hi));
            stack.push((lo, m));
        }
        out
    }

    /// Apex of the triangle on chord `(lo, hi)` lying on the `lo..hi` side.
    pub(crate) fn apex_between(&self, lo: usize, hi: usize) -> usize {
        (lo + 1..hi)
            .find(|&m| self.is_edge(lo, m) && self.is_edge(m, hi))
            .expect("valid triangulation has an apex on every chord")
    }

    /// Canonical two-line text form (`n=..` / `diagonals=..`), LF-terminated.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str) -> Result<Self, ModelError> {
        s.parse()
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        write!(f, "diagonals=")?;
        for (i, d) in self.diagonals.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{d}")?;
        }
        writeln!(f)
    }
}

impl FromStr for Triangulation {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let bad = |line: usize, message: String| ModelError::ParseTriangulation { line, message };

        let first = lines.next().ok_or_else(|| bad(1, "missing `n=` line".into()))?;
        let n = first
            .trim()
            .strip_prefix("n=")
            .ok_or_else(|| bad(1, format!("expected `n=<int>`, found `{first}`")))?
            .trim()
            .parse::<usize>()
            .map_err(|e| bad(1, format!("bad n: {e}")))?;
        // Guards the allocation below against absurd sizes in untrusted files.
        if n > MAX_TEXT_N {
            return Err(bad(1, format!("n={n} exceeds the supported maximum {MAX_TEXT_N}")));
        }

        let second = lines
            .next()
            .ok_or_else(|| bad(2, "missing `diagonals=` line".into()))?;
        let body = second
            .trim()
            .strip_prefix("diagonals=")
            .ok_or_else(|| bad(2, format!("expected `diagonals=...`, found `{second}`")))?;
        let diagonals = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(';')
                .map(|p| p.parse::<Diagonal>().map_err(|m| bad(2, m)))
                .collect::<Result<Vec<_>, _>>()?
        };
        if let Some(extra) = lines.next() {
            return Err(bad(3, format!("unexpected trailing content `{extra}`")));
        }
        Triangulation::new(n, diagonals)
    }
}

/// Largest `n` accepted by the text parsers.
pub const MAX_TEXT_N: usize = 100_000;
