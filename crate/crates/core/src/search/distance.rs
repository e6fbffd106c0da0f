use std::collections::HashMap;

use super::code::{Code, Codec, MAX_VERTICES};
use super::path::FlipPath;
use super::{check_pair, SearchError, SearchOptions};
use crate::model::{Diagonal, Triangulation};

/// Admissible lower bound: each flip changes one diagonal.
pub fn heuristic(t1: &Triangulation, t2: &Triangulation) -> usize {
    t1.diagonals().iter().filter(|d| !t2.contains(**d)).count()
}

/// Exact flip distance and a shortest path.
pub fn exact_distance(
    t1: &Triangulation,
    t2: &Triangulation,
    opts: &SearchOptions,
) -> Result<(usize, FlipPath), SearchError> {
    check_pair(t1, t2)?;
    if opts.decompose {
        return decomposed(t1, t2, opts);
    }
    let codec = Codec::new(t1.n());
    let moves = code_path(&codec, codec.encode(t1), codec.encode(t2), opts)?;
    let path = FlipPath {
        start: t1.clone(),
        moves,
    };
    Ok((path.len(), path))
}

/// Shortest flip sequence between two codes: bidirectional BFS, then
/// IDA* if the BFS exceeds its node budget.
pub(crate) fn code_path(
    codec: &Codec,
    start: Code,
    goal: Code,
    opts: &SearchOptions,
) -> Result<Vec<Diagonal>, SearchError> {
    if start == goal {
        return Ok(Vec::new());
    }
    match bidirectional(codec, start, goal, opts.node_budget) {
        Some(moves) => Ok(moves),
        None if opts.ida_fallback => ida_star(codec, start, goal, opts.ida_budget),
        None => Err(SearchError::BudgetExceeded {
            budget: opts.node_budget,
        }),
    }
}

struct Side {
    parent: HashMap<Code, Code>,
    frontier: Vec<Code>,
}

impl Side {
    fn new(root: Code) -> Self {
        Self {
            parent: HashMap::from([(root, root)]),
            frontier: vec![root],
        }
    }

    /// Path from the root to `code`, as the sequence of codes.
    fn chain(&self, mut code: Code) -> Vec<Code> {
        let mut out = vec![code];
        while let Some(&p) = self.parent.get(&code) {
            if p == code {
                break;
            }
            out.push(p);
            code = p;
        }
        out.reverse();
        out
    }
}

/// Expands whole levels of the smaller frontier. All meetings found while
/// expanding the first level that meets are shortest; the first one in
/// expansion order is kept, which makes the witness deterministic.
fn bidirectional(codec: &Codec, start: Code, goal: Code, budget: usize) -> Option<Vec<Diagonal>> {
    let mut fwd = Side::new(start);
    let mut bwd = Side::new(goal);
    loop {
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() {
            unreachable!("the flip graph is connected");
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if forward {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let mut next = Vec::new();
        let mut meeting: Option<(Code, Code)> = None;
        for &x in &this.frontier {
            codec.for_each_flip(x, |_, _, y| {
                if this.parent.contains_key(&y) {
                    return;
                }
                this.parent.insert(y, x);
                if meeting.is_none() && other.parent.contains_key(&y) {
                    meeting = Some((x, y));
                }
                next.push(y);
            });
        }
        this.frontier = next;
        if let Some((_, y)) = meeting {
            let mut codes = fwd.chain(y);
            let mut tail = bwd.chain(y);
            tail.reverse();
            codes.extend(tail.into_iter().skip(1));
            return Some(
                codes
                    .windows(2)
                    .map(|w| codec.flipped_between(w[0], w[1]))
                    .collect(),
            );
        }
        if fwd.parent.len() + bwd.parent.len() > budget {
            return None;
        }
    }
}

fn ida_star(codec: &Codec, start: Code, goal: Code, budget: u64) -> Result<Vec<Diagonal>, SearchError> {
    let h = |c: Code| (c & !goal).count_ones() as usize;
    let mut bound = h(start);
    let mut expanded = 0u64;
    let mut path = vec![start];
    loop {
        match dfs(codec, goal, &h, &mut path, 0, bound, &mut expanded, budget) {
            Dfs::Found => {
                return Ok(path
                    .windows(2)
                    .map(|w| codec.flipped_between(w[0], w[1]))
                    .collect());
            }
            Dfs::Next(b) => bound = b,
            Dfs::Exhausted => {
                return Err(SearchError::BudgetExceeded {
                    budget: budget as usize,
                })
            }
        }
    }

    enum Dfs {
        Found,
        Next(usize),
        Exhausted,
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        codec: &Codec,
        goal: Code,
        h: &impl Fn(Code) -> usize,
        path: &mut Vec<Code>,
        g: usize,
        bound: usize,
        expanded: &mut u64,
        budget: u64,
    ) -> Dfs {
        let cur = *path.last().expect("non-empty");
        let f = g + h(cur);
        if f > bound {
            return Dfs::Next(f);
        }
        if cur == goal {
            return Dfs::Found;
        }
        *expanded += 1;
        if *expanded > budget {
            return Dfs::Exhausted;
        }
        let mut min = usize::MAX;
        for (_, next) in codec.flips(cur) {
            if path.contains(&next) {
                continue;
            }
            path.push(next);
            match dfs(codec, goal, h, path, g + 1, bound, expanded, budget) {
                Dfs::Found => return Dfs::Found,
                Dfs::Exhausted => return Dfs::Exhausted,
                Dfs::Next(b) => min = min.min(b),
            }
            path.pop();
        }
        Dfs::Next(min)
    }
}

/// Splits along diagonals common to both triangulations and solves each
/// piece on its own.
fn decomposed(
    t1: &Triangulation,
    t2: &Triangulation,
    opts: &SearchOptions,
) -> Result<(usize, FlipPath), SearchError> {
    let common: Vec<Diagonal> = t1
        .diagonals()
        .iter()
        .copied()
        .filter(|d| t2.contains(*d))
        .collect();
    let mut moves = Vec::new();
    for piece in pieces(t1.vertex_count(), &common) {
        let m = piece.len() - 2;
        if m < 2 {
            continue;
        }
        let local = |t: &Triangulation| -> Triangulation {
            let diags = t
                .diagonals()
                .iter()
                .filter_map(|d| {
                    let a = piece.binary_search(&d.lo()).ok()?;
                    let b = piece.binary_search(&d.hi()).ok()?;
                    let d = Diagonal::new(a, b);
                    (b - a != 1 && !(a == 0 && b == piece.len() - 1)).then_some(d)
                })
                .collect::<Vec<_>>();
            Triangulation::new(m, diags).expect("restriction of a triangulation to a piece")
        };
        let (a, b) = (local(t1), local(t2));
        if m + 2 > MAX_VERTICES {
            return Err(SearchError::SizeLimit { n: m, max: MAX_VERTICES - 2 });
        }
        let codec = Codec::new(m);
        let sub = code_path(&codec, codec.encode(&a), codec.encode(&b), opts)?;
        moves.extend(
            sub.into_iter()
                .map(|d| Diagonal::new(piece[d.lo()], piece[d.hi()])),
        );
    }
    let path = FlipPath {
        start: t1.clone(),
        moves,
    };
    Ok((path.len(), path))
}

/// Vertex lists (ascending) of the faces cut out by non-crossing chords.
fn pieces(vertex_count: usize, chords: &[Diagonal]) -> Vec<Vec<usize>> {
    let is_chord = |a: usize, b: usize| chords.binary_search(&Diagonal::new(a, b)).is_ok();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, vertex_count - 1)];
    while let Some((lo, hi)) = stack.pop() {
        let mut verts = vec![lo];
        let mut cur = lo;
        while cur != hi {
            // The outermost chord leaving `cur` bounds this face; the chord
            // `(lo, hi)` itself is the face's own base and is skipped.
            let next = (cur + 2..=hi)
                .rev()
                .find(|&v| !(cur == lo && v == hi) && is_chord(cur, v))
                .unwrap_or(cur + 1);
            if next - cur >= 2 {
                stack.push((cur, next));
            }
            verts.push(next);
            cur = next;
        }
        out.push(verts);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieces_of_fan_chords() {
        let chords = [Diagonal::new(0, 2), Diagonal::new(0, 3)];
        let mut p = pieces(5, &chords);
        p.sort();
        assert_eq!(p, vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4]]);
    }

    #[test]
    fn pieces_without_chords() {
        assert_eq!(pieces(6, &[]), vec![vec![0, 1, 2, 3, 4, 5]]);
    }

    #[test]
    fn square_distance_is_one() {
        let a = Triangulation::from_pairs(2, &[(0, 2)]).unwrap();
        let b = Triangulation::from_pairs(2, &[(1, 3)]).unwrap();
        let (d, p) = exact_distance(&a, &b, &SearchOptions::default()).unwrap();
        assert_eq!(d, 1);
        assert_eq!(p.end().unwrap(), b);
    }

    #[test]
    fn identical_distance_is_zero() {
        let a = Triangulation::from_pairs(3, &[(1, 4), (1, 3)]).unwrap();
        let (d, p) = exact_distance(&a, &a, &SearchOptions::default()).unwrap();
        assert_eq!(d, 0);
        assert!(p.is_empty());
    }

    #[test]
    fn ida_agrees_with_bfs() {
        let codec = Codec::new(6);
        let all = codec.enumerate();
        for (i, &a) in all.iter().enumerate().step_by(7) {
            for &b in all.iter().skip(i % 5).step_by(11) {
                let bfs = bidirectional(&codec, a, b, usize::MAX).map(|m| m.len());
                let bfs = if a == b { Some(0) } else { bfs };
                let ida = if a == b {
                    0
                } else {
                    ida_star(&codec, a, b, u64::MAX).unwrap().len()
                };
                assert_eq!(bfs, Some(ida));
            }
        }
    }

    #[test]
    fn tiny_budget_without_fallback_errors() {
        let a = Triangulation::fan(8, 0).unwrap();
        let b = Triangulation::fan(8, 5).unwrap();
        let opts = SearchOptions {
            node_budget: 10,
            ida_fallback: false,
            ..SearchOptions::default()
        };
        assert!(matches!(
            exact_distance(&a, &b, &opts),
            Err(SearchError::BudgetExceeded { .. })
        ));
        let opts = SearchOptions {
            node_budget: 10,
            ..SearchOptions::default()
        };
        let (d, p) = exact_distance(&a, &b, &opts).unwrap();
        assert_eq!(p.end().unwrap(), b);
        let (exact, _) = exact_distance(&a, &b, &SearchOptions::default()).unwrap();
        assert_eq!(d, exact);
    }
}
