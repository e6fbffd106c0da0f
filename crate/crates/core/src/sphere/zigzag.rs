use std::collections::BTreeMap;

use super::surface::{sphere_union, UnionMode};
use super::SphereError;
use crate::model::{Diagonal, Triangulation};

/// The snake triangulation whose diagonals alternate between the two ends
/// of the polygon: step `2k-1` adds `(k, n+2-k)`, step `2k` adds
/// `(k, n+1-k)`.
pub fn zigzag(n: usize) -> Result<Triangulation, SphereError> {
    if n < 3 {
        return Err(SphereError::TooSmall { n, min: 3 });
    }
    let diagonals = (1..n).map(|j| {
        let k = j.div_ceil(2);
        if j % 2 == 1 {
            Diagonal::new(k, n + 2 - k)
        } else {
            Diagonal::new(k, n + 1 - k)
        }
    });
    Ok(Triangulation::new(n, diagonals)?)
}

/// [`zigzag`] with every label shifted by `r` modulo `n + 2`.
pub fn rotated_zigzag(n: usize, r: usize) -> Result<Triangulation, SphereError> {
    if n < MIN_ROTATED_N {
        return Err(SphereError::TooSmall {
            n,
            min: MIN_ROTATED_N,
        });
    }
    Ok(rotate(&zigzag(n)?, r))
}

pub const MIN_ROTATED_N: usize = 9;

fn rotate(t: &Triangulation, r: usize) -> Triangulation {
    let v = t.vertex_count();
    Triangulation::new(
        t.n(),
        t.diagonals()
            .iter()
            .map(|d| Diagonal::new((d.lo() + r) % v, (d.hi() + r) % v)),
    )
    .expect("a rotated triangulation is a triangulation")
}

/// Rotation offsets are searched from `round(sqrt(n))` up to `n / 2`.
pub fn default_rotation_start(n: usize) -> usize {
    (n as f64).sqrt().round() as usize
}

/// Default separation threshold for the degree-4 vertices:
/// `max(3, floor(sqrt(n) / 2))`.
pub fn default_separation(n: usize) -> usize {
    3.max(((n as f64).sqrt() / 2.0).floor() as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationChoice {
    pub r: usize,
    /// Whether the union has degrees `{4:4, 5:4, 6:n-6}` with every degree-4
    /// vertex next to a degree-5 vertex.
    pub histogram_ok: bool,
    /// Smallest distance between two degree-4 vertices (`None` if there are
    /// fewer than two).
    pub separation: Option<usize>,
    pub threshold: usize,
}

impl RotationChoice {
    pub fn meets_threshold(&self) -> bool {
        self.histogram_ok && self.separation.is_some_and(|s| s >= self.threshold)
    }
}

/// Evaluates one rotation offset.
pub fn evaluate_rotation(n: usize, r: usize, threshold: usize) -> Result<RotationChoice, SphereError> {
    let t1 = zigzag(n)?;
    let t2 = rotated_zigzag(n, r)?;
    let (histogram_ok, separation) = match sphere_union(&t1, &t2, UnionMode::Strict) {
        Ok(s) => (s.has_expected_histogram(), s.special_separation(4)),
        Err(SphereError::SharedDiagonal(_)) => (false, None),
        Err(e) => return Err(e),
    };
    Ok(RotationChoice {
        r,
        histogram_ok,
        separation,
        threshold,
    })
}

/// Scans `r` upward from `round(sqrt(n))` to `n / 2` and returns the first
/// offset meeting both the histogram and the separation threshold. If none
/// does, returns the histogram-valid offset with the largest separation
/// (first found on ties), or the starting offset if no offset has the
/// expected histogram.
pub fn select_rotation(n: usize, threshold: usize) -> Result<RotationChoice, SphereError> {
    let start = default_rotation_start(n);
    let mut best: Option<RotationChoice> = None;
    for r in start..=(n / 2).max(start) {
        let c = evaluate_rotation(n, r, threshold)?;
        if c.meets_threshold() {
            return Ok(c);
        }
        if c.histogram_ok && best.as_ref().is_none_or(|b| c.separation > b.separation) {
            best = Some(c);
        }
    }
    match best {
        Some(b) => Ok(b),
        None => evaluate_rotation(n, start, threshold),
    }
}

/// The expected degree histogram of a zig-zag union.
pub fn expected_histogram(n: usize) -> BTreeMap<usize, usize> {
    BTreeMap::from([(4, 4), (5, 4), (6, n.saturating_sub(6))])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances() {
        let t = zigzag(3).unwrap();
        assert_eq!(t, Triangulation::from_pairs(3, &[(1, 4), (1, 3)]).unwrap());
        let t = zigzag(4).unwrap();
        assert_eq!(t, Triangulation::from_pairs(4, &[(1, 5), (1, 4), (2, 4)]).unwrap());
        assert!(zigzag(2).is_err());
    }

    #[test]
    fn valid_up_to_100() {
        for n in 3..=100 {
            let t = zigzag(n).unwrap();
            for v in 0..n + 2 {
                assert!(t.diagonal_degree(v) <= 4);
            }
        }
    }

    #[test]
    fn rotation_identities() {
        let z = zigzag(16).unwrap();
        assert_eq!(rotated_zigzag(16, 0).unwrap(), z);
        assert_eq!(rotated_zigzag(16, 18).unwrap(), z);
        let r = rotated_zigzag(16, 4).unwrap();
        assert!(r.diagonals().iter().all(|d| !z.contains(*d)));
        assert!(rotated_zigzag(8, 1).is_err());
    }
}
