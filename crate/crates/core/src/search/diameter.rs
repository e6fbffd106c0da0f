use std::collections::HashMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::code::{Code, Codec};
use super::{check_size, SearchError};
use crate::model::Triangulation;

/// The flip graph of the `(n+2)`-gon as a flat adjacency array; every
/// triangulation has exactly `n - 1` flips.
pub struct FlipGraph {
    codec: Codec,
    codes: Vec<Code>,
    degree: usize,
    adjacency: Vec<u32>,
}

impl FlipGraph {
    pub fn new(n: usize) -> Result<Self, SearchError> {
        check_size(n)?;
        let codec = Codec::new(n);
        let codes = codec.enumerate();
        let index: HashMap<Code, u32> = codes
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u32))
            .collect();
        let degree = n - 1;
        let adjacency = codes
            .par_iter()
            .flat_map_iter(|&c| {
                let mut row = Vec::with_capacity(degree);
                codec.for_each_flip(c, |_, _, next| row.push(index[&next]));
                row
            })
            .collect();
        Ok(Self {
            codec,
            codes,
            degree,
            adjacency,
        })
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn triangulation(&self, idx: usize) -> Triangulation {
        self.codec.decode(self.codes[idx])
    }

    pub fn neighbours(&self, idx: usize) -> &[u32] {
        &self.adjacency[idx * self.degree..(idx + 1) * self.degree]
    }

    /// Distances from `source` to every triangulation.
    pub fn bfs(&self, source: usize) -> Vec<u16> {
        let mut dist = vec![u16::MAX; self.len()];
        let mut queue = std::collections::VecDeque::with_capacity(self.len());
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbours(u) {
                let w = w as usize;
                if dist[w] == u16::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Eccentricity of `source` and the smallest-index vertex attaining it.
    fn eccentricity(&self, source: usize) -> (u16, usize) {
        let dist = self.bfs(source);
        let mut best = (0, source);
        for (i, &d) in dist.iter().enumerate() {
            if d > best.0 {
                best = (d, i);
            }
        }
        best
    }
}

#[derive(Clone, Debug)]
pub struct DiameterReport {
    pub n: usize,
    pub value: usize,
    pub witness: (Triangulation, Triangulation),
    /// False when only sampled sources were searched (`value` is then a
    /// lower bound on the diameter).
    pub exact: bool,
    pub sources: usize,
}

#[derive(Clone, Copy, Debug)]
pub enum DiameterMode {
    Exhaustive,
    Sampled { sources: usize, seed: u64 },
}

/// Largest `n` for which [`DiameterMode::Exhaustive`] is accepted.
pub const MAX_EXHAUSTIVE_DIAMETER_N: usize = 9;

/// Maximum flip distance over all pairs (exhaustive), or over pairs with a
/// sampled first member. The witness is the first source attaining the
/// maximum and the smallest-index triangulation at that distance from it.
pub fn diameter(n: usize, mode: DiameterMode) -> Result<DiameterReport, SearchError> {
    if let DiameterMode::Exhaustive = mode {
        if n > MAX_EXHAUSTIVE_DIAMETER_N {
            return Err(SearchError::SizeLimit {
                n,
                max: MAX_EXHAUSTIVE_DIAMETER_N,
            });
        }
    }
    let graph = FlipGraph::new(n)?;
    let sources: Vec<usize> = match mode {
        DiameterMode::Exhaustive => (0..graph.len()).collect(),
        DiameterMode::Sampled { sources, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s = sample(&mut rng, graph.len(), sources.min(graph.len())).into_vec();
            s.sort_unstable();
            s
        }
    };
    let ecc: Vec<(u16, usize)> = sources.par_iter().map(|&s| graph.eccentricity(s)).collect();
    let (pos, &(value, target)) = ecc
        .iter()
        .enumerate()
        .max_by_key(|(i, (d, _))| (*d, std::cmp::Reverse(*i)))
        .expect("at least one source");
    Ok(DiameterReport {
        n,
        value: value as usize,
        witness: (graph.triangulation(sources[pos]), graph.triangulation(target)),
        exact: matches!(mode, DiameterMode::Exhaustive),
        sources: sources.len(),
    })
}
