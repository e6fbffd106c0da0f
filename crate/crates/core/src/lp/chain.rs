use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::rational::{int, Rational};
use super::{LpError, LpOptions};
use crate::model::{binomial, triples, OrientedTetrahedron, OrientedTriangle, Sign, Triangulation};

/// Sparse map from sorted triples to nonzero coefficients. Shared storage of
/// [`Chain`] and [`WeightFunction`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Terms(BTreeMap<[usize; 3], Rational>);

impl Terms {
    fn add(&mut self, t: OrientedTriangle, c: &Rational) {
        let c = match t.sign() {
            Sign::Pos => c.clone(),
            Sign::Neg => -c.clone(),
        };
        let key = t.canonical();
        let entry = self.0.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&key);
        }
    }

    fn get(&self, t: OrientedTriangle) -> Rational {
        let v = self.0.get(&t.canonical()).cloned().unwrap_or_else(Rational::zero);
        match t.sign() {
            Sign::Pos => v,
            Sign::Neg => -v,
        }
    }
}

/// A formal rational combination of oriented triangles. Adding `c` to a
/// negatively oriented triangle subtracts `c` from its canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain(Terms);

impl Chain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, t: OrientedTriangle, c: &Rational) {
        self.0.add(t, c);
    }

    pub fn coefficient(&self, t: OrientedTriangle) -> Rational {
        self.0.get(t)
    }

    /// Nonzero coefficients of canonical (positively oriented) triangles.
    pub fn iter(&self) -> impl Iterator<Item = ([usize; 3], &Rational)> {
        self.0 .0.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.0 .0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0 .0.is_empty()
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.iter().map(|(_, v)| v).sum()
    }
}

impl FromIterator<OrientedTriangle> for Chain {
    fn from_iter<I: IntoIterator<Item = OrientedTriangle>>(iter: I) -> Self {
        let one = int(1);
        let mut c = Chain::new();
        for t in iter {
            c.add_term(t, &one);
        }
        c
    }
}

impl Add for &Chain {
    type Output = Chain;

    fn add(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        for (k, v) in rhs.iter() {
            out.add_term(OrientedTriangle::from_canonical(k, Sign::Pos), v);
        }
        out
    }
}

impl Neg for &Chain {
    type Output = Chain;

    fn neg(self) -> Chain {
        Chain(Terms(self.0 .0.iter().map(|(k, v)| (*k, -v.clone())).collect()))
    }
}

impl Sub for &Chain {
    type Output = Chain;

    fn sub(self, rhs: &Chain) -> Chain {
        self + &(-rhs)
    }
}

/// Antisymmetric rational weights on the oriented triangles of an
/// `(n+2)`-gon. Unlisted triangles weigh 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    n: usize,
    terms: Terms,
}

impl WeightFunction {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: Terms::default(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets `w(t) = value` (and so `w(-t) = -value`). Panics if a vertex is
    /// not a polygon label.
    pub fn set(&mut self, t: OrientedTriangle, value: Rational) {
        assert!(
            t.canonical()[2] < self.n + 2,
            "triangle {t} outside the {}-gon",
            self.n + 2
        );
        let key = t.canonical();
        self.terms.0.remove(&key);
        self.terms.add(t, &value);
    }

    pub fn eval(&self, t: OrientedTriangle) -> Rational {
        self.terms.get(t)
    }

    /// `w(a -> b -> c)`.
    pub fn eval_cycle(&self, a: usize, b: usize, c: usize) -> Rational {
        self.eval(OrientedTriangle::new(a, b, c))
    }

    /// Nonzero weights of canonical triangles, sorted.
    pub fn iter(&self) -> impl Iterator<Item = ([usize; 3], &Rational)> {
        self.terms.0.iter().map(|(k, v)| (*k, v))
    }

    pub fn support_len(&self) -> usize {
        self.terms.0.len()
    }

    /// Pairing `chain . w`.
    pub fn pair(&self, chain: &Chain) -> Rational {
        chain
            .iter()
            .map(|(k, c)| c * self.eval(OrientedTriangle::from_canonical(k, Sign::Pos)))
            .sum()
    }
}

/// Sum of the counterclockwise triangles of `t`.
pub fn chain_of(t: &Triangulation) -> Chain {
    t.triangles().into_iter().collect()
}

/// The four-term boundary of an oriented tetrahedron.
pub fn boundary(t: OrientedTetrahedron) -> Chain {
    t.faces().into_iter().collect()
}

/// Boundary operator on all oriented tetrahedra of the `(n+2)`-gon: rows are
/// sorted triples in lexicographic order, columns are
/// [`OrientedTetrahedron::all`] in order, each with exactly four `±1` entries.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    rows: Vec<[usize; 3]>,
    columns: Vec<OrientedTetrahedron>,
    entries: Vec<[(u32, i8); 4]>,
    row_index: HashMap<[usize; 3], usize>,
}

impl BoundaryMatrix {
    pub fn rows(&self) -> &[[usize; 3]] {
        &self.rows
    }

    pub fn columns(&self) -> &[OrientedTetrahedron] {
        &self.columns
    }

    /// Nonzero `(row, entry)` pairs of column `j`.
    pub fn column(&self, j: usize) -> &[(u32, i8); 4] {
        &self.entries[j]
    }

    pub fn row_of(&self, triple: [usize; 3]) -> Option<usize> {
        self.row_index.get(&triple).copied()
    }
}

pub fn boundary_matrix(n: usize, opts: &LpOptions) -> Result<BoundaryMatrix, LpError> {
    if n == 0 || n > opts.max_n {
        return Err(LpError::SizeLimit { n, max: opts.max_n });
    }
    let v = n + 2;
    let rows: Vec<[usize; 3]> = triples(v).collect();
    debug_assert_eq!(rows.len(), binomial(v, 3));
    let row_index: HashMap<[usize; 3], usize> =
        rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let columns: Vec<OrientedTetrahedron> = OrientedTetrahedron::all(v).collect();
    let entries = columns
        .iter()
        .map(|t| {
            t.faces().map(|f| {
                let sign = match f.sign() {
                    Sign::Pos => 1,
                    Sign::Neg => -1,
                };
                (row_index[&f.canonical()] as u32, sign)
            })
        })
        .collect();
    Ok(BoundaryMatrix {
        rows,
        columns,
        entries,
        row_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::rational::frac;

    #[test]
    fn antisymmetric_storage() {
        let mut c = Chain::new();
        c.add_term(OrientedTriangle::new(2, 1, 0), &int(1));
        assert_eq!(c.coefficient(OrientedTriangle::new(0, 1, 2)), int(-1));
        c.add_term(OrientedTriangle::new(0, 1, 2), &int(1));
        assert!(c.is_empty());
    }

    #[test]
    fn weight_set_overwrites() {
        let mut w = WeightFunction::zero(2);
        w.set(OrientedTriangle::new(0, 2, 1), frac(1, 2));
        assert_eq!(w.eval_cycle(0, 1, 2), frac(-1, 2));
        w.set(OrientedTriangle::new(1, 2, 0), int(1));
        assert_eq!(w.eval_cycle(2, 1, 0), int(-1));
        w.set(OrientedTriangle::new(0, 1, 2), int(0));
        assert_eq!(w.support_len(), 0);
    }

    #[test]
    fn square_boundary_is_the_flip() {
        let t = OrientedTetrahedron::new([0, 1, 2, 3], Sign::Pos).unwrap();
        let d = boundary(t);
        assert_eq!(d.coefficient(OrientedTriangle::new(0, 1, 3)), int(1));
        assert_eq!(d.coefficient(OrientedTriangle::new(1, 2, 3)), int(1));
        assert_eq!(d.coefficient(OrientedTriangle::new(0, 2, 3)), int(-1));
        assert_eq!(d.coefficient(OrientedTriangle::new(0, 1, 2)), int(-1));
        let a = Triangulation::from_pairs(2, &[(0, 2)]).unwrap();
        let b = Triangulation::from_pairs(2, &[(1, 3)]).unwrap();
        assert_eq!(&chain_of(&b) - &chain_of(&a), d);
        let neg = OrientedTetrahedron::new([0, 1, 2, 3], Sign::Neg).unwrap();
        assert!((&d + &boundary(neg)).is_empty());
    }

    #[test]
    fn matrix_shape() {
        let m = boundary_matrix(2, &LpOptions::default()).unwrap();
        assert_eq!(m.columns().len(), 2);
        assert_eq!(m.rows().len(), 4);
        for n in 1..=6 {
            let m = boundary_matrix(n, &LpOptions::default()).unwrap();
            assert_eq!(m.columns().len(), 2 * binomial(n + 2, 4));
            for j in (0..m.columns().len()).step_by(2) {
                let (a, b) = (m.column(j), m.column(j + 1));
                let mut rows: Vec<u32> = a.iter().map(|e| e.0).collect();
                rows.sort_unstable();
                rows.dedup();
                assert_eq!(rows.len(), 4);
                for (x, y) in a.iter().zip(b) {
                    assert_eq!((x.0, x.1), (y.0, -y.1));
                }
            }
        }
        assert!(boundary_matrix(13, &LpOptions::default()).is_err());
    }
}
