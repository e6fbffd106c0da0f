use std::fmt;

use crate::model::{Diagonal, ModelError, Triangulation};

/// A flip sequence applied to a starting triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipPath {
    pub start: Triangulation,
    pub moves: Vec<Diagonal>,
}

impl FlipPath {
    pub fn empty(start: Triangulation) -> Self {
        Self {
            start,
            moves: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Every intermediate triangulation, `start` first. Fails on the first
    /// move that is not a diagonal of the current triangulation.
    pub fn replay(&self) -> Result<Vec<Triangulation>, ModelError> {
        let mut states = Vec::with_capacity(self.moves.len() + 1);
        states.push(self.start.clone());
        for &d in &self.moves {
            let next = states.last().expect("non-empty").flip(d)?;
            states.push(next);
        }
        Ok(states)
    }

    pub fn end(&self) -> Result<Triangulation, ModelError> {
        let mut cur = self.start.clone();
        for &d in &self.moves {
            cur = cur.flip(d)?;
        }
        Ok(cur)
    }

    /// `(flipped, inserted)` for every move.
    pub fn steps(&self) -> Result<Vec<(Diagonal, Diagonal)>, ModelError> {
        let mut cur = self.start.clone();
        let mut out = Vec::with_capacity(self.moves.len());
        for &d in &self.moves {
            let (next, new) = cur.flip_with_new(d)?;
            out.push((d, new));
            cur = next;
        }
        Ok(out)
    }

    /// The same path walked backwards from its end.
    pub fn reversed(&self) -> Result<FlipPath, ModelError> {
        let steps = self.steps()?;
        Ok(FlipPath {
            start: self.end()?,
            moves: steps.iter().rev().map(|&(_, new)| new).collect(),
        })
    }

    /// Concatenates `other`, which must start where `self` ends.
    pub fn concat(mut self, other: FlipPath) -> Result<FlipPath, ModelError> {
        let end = self.end()?;
        if end != other.start {
            return Err(ModelError::Discontinuous);
        }
        self.moves.extend(other.moves);
        Ok(self)
    }

    /// One `flip (a,b) -> (c,d)` line per move, LF-terminated.
    pub fn to_text(&self) -> Result<String, ModelError> {
        let mut out = String::new();
        for (old, new) in self.steps()? {
            out.push_str(&format!("flip {old} -> {new}\n"));
        }
        Ok(out)
    }

    /// Parses the line format of [`FlipPath::to_text`] against a known start,
    /// checking that each stated replacement is the one the flip produces.
    pub fn parse(start: Triangulation, text: &str) -> Result<FlipPath, PathParseError> {
        let mut cur = start.clone();
        let mut moves = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let raw = raw.trim();
            if raw.is_empty() {
                continue;
            }
            let bad = |message: String| PathParseError { line, message };
            let body = raw
                .strip_prefix("flip ")
                .ok_or_else(|| bad(format!("expected `flip (a,b) -> (c,d)`, found `{raw}`")))?;
            let (old, new) = body
                .split_once("->")
                .ok_or_else(|| bad("missing `->`".into()))?;
            let old: Diagonal = old.parse().map_err(bad)?;
            let new: Diagonal = new.parse().map_err(bad)?;
            let (next, actual) = cur.flip_with_new(old).map_err(|e| bad(e.to_string()))?;
            if actual != new {
                return Err(bad(format!("flipping {old} inserts {actual}, not {new}")));
            }
            moves.push(old);
            cur = next;
        }
        Ok(FlipPath { start, moves })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("flip path parse error on line {line}: {message}")]
pub struct PathParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FlipPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_text() {
            Ok(text) => f.write_str(&text),
            Err(e) => write!(f, "<invalid path: {e}>"),
        }
    }
}

/// Greedily flips `t` toward the fan at `apex`: each move removes the
/// smallest diagonal that sits on a triangle with corner `apex`, which raises
/// the apex degree by one.
fn path_to_fan(t: &Triangulation, apex: usize) -> FlipPath {
    let mut cur = t.clone();
    let mut moves = Vec::new();
    loop {
        let next = cur.diagonals().iter().copied().find(|d| {
            !d.touches(apex) && cur.is_edge(apex, d.lo()) && cur.is_edge(apex, d.hi())
        });
        let Some(d) = next else { break };
        cur = cur.flip(d).expect("diagonal of current triangulation");
        moves.push(d);
    }
    debug_assert_eq!(cur.diagonal_degree(apex), t.n() - 1);
    FlipPath {
        start: t.clone(),
        moves,
    }
}

/// Upper-bound witness through a common fan.
///
/// The apex maximising the combined number of incident diagonals is chosen
/// (smallest label on ties); the path has length
/// `(n-1-e1(v)) + (n-1-e2(v)) <= 2n - 2`.
pub fn upper_bound_path(t1: &Triangulation, t2: &Triangulation) -> Result<FlipPath, ModelError> {
    if t1.n() != t2.n() {
        return Err(ModelError::SizeMismatch {
            left: t1.n(),
            right: t2.n(),
        });
    }
    if t1 == t2 {
        return Ok(FlipPath::empty(t1.clone()));
    }
    let apex = (0..t1.vertex_count())
        .max_by_key(|&v| (t1.diagonal_degree(v) + t2.diagonal_degree(v), std::cmp::Reverse(v)))
        .expect("polygon has vertices");
    let forward = path_to_fan(t1, apex);
    let backward = path_to_fan(t2, apex).reversed()?;
    forward.concat(backward)
}
