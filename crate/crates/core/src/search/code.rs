//! Bitmask encoding of triangulations for the exhaustive searches.
//!
//! With at most 16 polygon vertices there are at most `C(16,2) = 120`
//! vertex pairs, so a diagonal set fits in a `u128`, one bit per pair in
//! lexicographic pair order. Iterating set bits from low to high therefore
//! visits diagonals in lexicographic order.

use crate::model::{Diagonal, Triangulation};

pub type Code = u128;

/// Largest polygon (in vertices) the bitmask encoding supports.
pub const MAX_VERTICES: usize = 16;

#[derive(Clone, Debug)]
pub struct Codec {
    vertex_count: usize,
    index: [[u8; MAX_VERTICES]; MAX_VERTICES],
    pairs: Vec<(u8, u8)>,
}

impl Codec {
    /// Panics if `n + 2 > MAX_VERTICES`; callers check the size guard first.
    pub fn new(n: usize) -> Self {
        let v = n + 2;
        assert!(v <= MAX_VERTICES, "bitmask codec supports at most {MAX_VERTICES} vertices");
        let mut index = [[u8::MAX; MAX_VERTICES]; MAX_VERTICES];
        let mut pairs = Vec::new();
        for a in 0..v {
            for b in a + 1..v {
                index[a][b] = pairs.len() as u8;
                index[b][a] = pairs.len() as u8;
                pairs.push((a as u8, b as u8));
            }
        }
        Self {
            vertex_count: v,
            index,
            pairs,
        }
    }

    pub fn n(&self) -> usize {
        self.vertex_count - 2
    }

    #[inline]
    pub fn bit(&self, a: usize, b: usize) -> Code {
        1u128 << self.index[a][b]
    }

    pub fn encode(&self, t: &Triangulation) -> Code {
        debug_assert_eq!(t.vertex_count(), self.vertex_count);
        t.diagonals()
            .iter()
            .fold(0, |acc, d| acc | self.bit(d.lo(), d.hi()))
    }

    pub fn decode(&self, code: Code) -> Triangulation {
        let diagonals = self.diagonals(code).collect();
        Triangulation::from_sorted_unchecked(self.n(), diagonals)
    }

    /// Diagonals of `code` in lexicographic order.
    pub fn diagonals(&self, code: Code) -> impl Iterator<Item = Diagonal> + '_ {
        BitIter(code).map(move |i| {
            let (a, b) = self.pairs[i];
            Diagonal::new(a as usize, b as usize)
        })
    }

    /// Neighbour masks (polygon edges included) for every vertex.
    #[inline]
    fn neighbours(&self, code: Code) -> [u16; MAX_VERTICES] {
        let v = self.vertex_count;
        let mut nbr = [0u16; MAX_VERTICES];
        for i in 0..v {
            let j = (i + 1) % v;
            nbr[i] |= 1 << j;
            nbr[j] |= 1 << i;
        }
        for i in BitIter(code) {
            let (a, b) = self.pairs[i];
            nbr[a as usize] |= 1 << b;
            nbr[b as usize] |= 1 << a;
        }
        nbr
    }

    /// Calls `f(flipped, inserted, next_code)` for every flip of `code`, in
    /// lexicographic order of the flipped diagonal.
    #[inline]
    pub fn for_each_flip(&self, code: Code, mut f: impl FnMut(Diagonal, Diagonal, Code)) {
        let nbr = self.neighbours(code);
        for i in BitIter(code) {
            let (a, c) = self.pairs[i];
            let (a, c) = (a as usize, c as usize);
            let common = nbr[a] & nbr[c];
            let between: u16 = ((1u32 << c) - (1u32 << (a + 1))) as u16;
            let inner = common & between;
            let outer = common & !between & !(1 << a) & !(1 << c);
            debug_assert_eq!(inner.count_ones(), 1);
            debug_assert_eq!(outer.count_ones(), 1);
            let b1 = inner.trailing_zeros() as usize;
            let b2 = outer.trailing_zeros() as usize;
            let next = (code & !(1u128 << i)) | self.bit(b1, b2);
            f(Diagonal::new(a, c), Diagonal::new(b1, b2), next);
        }
    }

    pub fn flips(&self, code: Code) -> Vec<(Diagonal, Code)> {
        let mut out = Vec::with_capacity(self.n().saturating_sub(1));
        self.for_each_flip(code, |d, _, next| out.push((d, next)));
        out
    }

    /// The diagonal removed when stepping from `from` to the adjacent `to`.
    pub fn flipped_between(&self, from: Code, to: Code) -> Diagonal {
        let removed = from & !to;
        debug_assert_eq!(removed.count_ones(), 1);
        let (a, b) = self.pairs[removed.trailing_zeros() as usize];
        Diagonal::new(a as usize, b as usize)
    }

    /// Every triangulation of the polygon, by recursive apex choice.
    pub fn enumerate(&self) -> Vec<Code> {
        let v = self.vertex_count;
        // memo[lo][hi]: triangulations of the sub-polygon lo..=hi.
        let mut memo: Vec<Vec<Vec<Code>>> = vec![vec![Vec::new(); v]; v];
        for len in 1..v {
            for lo in 0..v - len {
                let hi = lo + len;
                if len == 1 {
                    memo[lo][hi] = vec![0];
                    continue;
                }
                let mut out = Vec::new();
                for m in lo + 1..hi {
                    let mut chords = 0;
                    if m - lo >= 2 {
                        chords |= self.bit(lo, m);
                    }
                    if hi - m >= 2 {
                        chords |= self.bit(m, hi);
                    }
                    for &l in &memo[lo][m] {
                        for &r in &memo[m][hi] {
                            out.push(chords | l | r);
                        }
                    }
                }
                memo[lo][hi] = out;
            }
        }
        std::mem::take(&mut memo[0][v - 1])
    }
}

struct BitIter(Code);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}
