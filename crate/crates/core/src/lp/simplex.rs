//! Dense-tableau simplex over exact rationals with Bland's rule.
//!
//! Solves `min c.x` subject to `A x = b`, `x >= 0`. Phase I uses one
//! artificial per row; artificials left basic at zero on rows that are
//! linear combinations of the others are kept (never allowed to re-enter),
//! which keeps `B^-1` readable from the artificial columns for the duals.

use num_traits::{One, Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Optimal {
        value: Rational,
        /// One entry per structural column.
        primal: Vec<Rational>,
        /// One entry per row, for the rows as given (before sign fixing).
        dual: Vec<Rational>,
    },
    Infeasible,
    BudgetExceeded,
}

/// Sparse column-wise problem description.
pub struct Problem<'a> {
    pub rows: usize,
    /// `(row, value)` nonzeros for each structural column.
    pub columns: &'a [Vec<(usize, Rational)>],
    pub costs: &'a [Rational],
    pub rhs: &'a [Rational],
}

struct Tableau {
    cols: usize,
    a: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        self.pivots += 1;
        let p = self.a[r][c].clone();
        if !p.is_one() {
            for x in self.a[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let pivot_row = std::mem::take(&mut self.a[r]);
        let nz: Vec<usize> = (0..self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                self.a[i][j] -= delta;
            }
            let delta = &f * &self.rhs[r];
            self.rhs[i] -= delta;
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                self.reduced[j] -= delta;
            }
        }
        self.a[r] = pivot_row;
        self.basis[r] = c;
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        self.reduced = costs.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !self.a[i][j].is_zero() {
                    let delta = cb * &self.a[i][j];
                    self.reduced[j] -= delta;
                }
            }
        }
    }

    /// Bland's rule until optimal; `false` if the pivot budget ran out.
    fn optimise(&mut self, enterable: usize, budget: usize) -> bool {
        loop {
            let Some(c) = (0..enterable).find(|&j| self.reduced[j].is_negative()) else {
                return true;
            };
            if self.pivots >= budget {
                return false;
            }
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.a[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let (r, _) = best.expect("objective is bounded below on these problems");
            self.pivot(r, c);
        }
    }
}

pub fn solve(problem: &Problem<'_>, max_pivots: usize) -> Outcome {
    let m = problem.rows;
    let n = problem.columns.len();
    let cols = n + m;
    // Rows with negative right-hand side are negated so artificials start
    // feasible.
    let flip: Vec<bool> = problem.rhs.iter().map(|b| b.is_negative()).collect();
    let mut a = vec![vec![Rational::zero(); cols]; m];
    for (j, col) in problem.columns.iter().enumerate() {
        for (i, v) in col {
            a[*i][j] = if flip[*i] { -v.clone() } else { v.clone() };
        }
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[n + i] = Rational::one();
    }
    let rhs = problem.rhs.iter().map(|b| b.abs()).collect();
    let mut t = Tableau {
        cols,
        a,
        rhs,
        basis: (n..cols).collect(),
        reduced: Vec::new(),
        pivots: 0,
    };

    let phase1: Vec<Rational> = (0..cols)
        .map(|j| if j >= n { Rational::one() } else { Rational::zero() })
        .collect();
    t.set_costs(&phase1);
    if !t.optimise(n, max_pivots) {
        return Outcome::BudgetExceeded;
    }
    let infeasible = t
        .basis
        .iter()
        .zip(&t.rhs)
        .any(|(&b, v)| b >= n && !v.is_zero());
    if infeasible {
        return Outcome::Infeasible;
    }
    // Drive zero-valued artificials out wherever a structural column can
    // replace them; the rest sit on redundant rows.
    for r in 0..m {
        if t.basis[r] < n {
            continue;
        }
        if let Some(c) = (0..n).find(|&j| !t.a[r][j].is_zero()) {
            t.pivot(r, c);
        }
    }

    let mut phase2: Vec<Rational> = problem.costs.to_vec();
    phase2.resize(cols, Rational::zero());
    t.set_costs(&phase2);
    if !t.optimise(n, max_pivots) {
        return Outcome::BudgetExceeded;
    }

    let mut primal = vec![Rational::zero(); n];
    let mut value = Rational::zero();
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            value += &problem.costs[b] * &t.rhs[i];
            primal[b] = t.rhs[i].clone();
        }
    }
    let dual = (0..m)
        .map(|i| {
            let y = -t.reduced[n + i].clone();
            if flip[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    Outcome::Optimal {
        value,
        primal,
        dual,
    }
}
