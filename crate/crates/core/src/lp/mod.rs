//! Chains of oriented triangles, the boundary operator, the flip-distance
//! linear program and its dual, and certificate verification.

mod certificate;
mod chain;
mod rational;
mod simplex;
mod verify;

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::model::{OrientedTetrahedron, Sign, Triangulation};

pub use certificate::CertificateParseError;
pub use chain::{boundary, boundary_matrix, chain_of, BoundaryMatrix, Chain, WeightFunction};
pub use rational::{format_rational, frac, int, parse_rational, Rational};
pub use verify::verify_certificate;

#[derive(Debug, Error)]
pub enum LpError {
    #[error("n={n} exceeds the LP size cap {max}")]
    SizeLimit { n: usize, max: usize },
    #[error("size mismatch: n={left} vs n={right}")]
    SizeMismatch { left: usize, right: usize },
    #[error(
        "tetrahedral constraint violated on {{{},{},{},{}}}: sum {}",
        quadruple[0], quadruple[1], quadruple[2], quadruple[3], format_rational(sum)
    )]
    ConstraintViolation { quadruple: [usize; 4], sum: Rational },
}

#[derive(Clone, Debug)]
pub struct LpOptions {
    /// Largest `n` for which the boundary matrix is built.
    pub max_n: usize,
    pub max_pivots: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        Self {
            max_n: 12,
            max_pivots: 200_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    BudgetExceeded,
}

impl LpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::BudgetExceeded => "budget-exceeded",
        }
    }
}

/// Result of the flip-distance LP. When `status` is optimal, `optimum` is
/// both the primal minimum `m*` and the dual maximum `M*`.
#[derive(Clone, Debug)]
pub struct LpReport {
    pub status: LpStatus,
    pub optimum: Option<Rational>,
    /// Nonzero tetrahedron multiplicities of an optimal primal solution.
    pub primal: BTreeMap<OrientedTetrahedron, Rational>,
    /// Optimal dual weights; zero unless optimal.
    pub dual: WeightFunction,
}

impl LpReport {
    /// `section,key,value` rows: status, optimum, primal entries keyed by
    /// `i j k l s`, dual entries keyed by `i j k`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,key,value\n");
        out.push_str(&format!("status,,{}\n", self.status.as_str()));
        if let Some(v) = &self.optimum {
            out.push_str(&format!("optimum,,{}\n", format_rational(v)));
        }
        for (t, x) in &self.primal {
            let [i, j, k, l] = t.vertices();
            let s = t.sign().symbol();
            out.push_str(&format!("primal,{i} {j} {k} {l} {s},{}\n", format_rational(x)));
        }
        for ([i, j, k], w) in self.dual.iter() {
            out.push_str(&format!("dual,{i} {j} {k},{}\n", format_rational(w)));
        }
        out
    }
}

/// Solves `m* = min sum(x)` over `x >= 0` with
/// `boundary(x) = chain_of(t2) - chain_of(t1)`, together with its dual
/// `M* = max (chain_of(t2) - chain_of(t1)) . w` subject to
/// `boundary(t) . w <= 1` for every oriented tetrahedron `t`.
pub fn primal_lower_bound(
    t1: &Triangulation,
    t2: &Triangulation,
    opts: &LpOptions,
) -> Result<LpReport, LpError> {
    if t1.n() != t2.n() {
        return Err(LpError::SizeMismatch {
            left: t1.n(),
            right: t2.n(),
        });
    }
    let n = t1.n();
    let matrix = boundary_matrix(n, opts)?;
    let target = &chain_of(t2) - &chain_of(t1);
    let mut rhs = vec![Rational::zero(); matrix.rows().len()];
    for (k, v) in target.iter() {
        rhs[matrix.row_of(k).expect("triangle of the polygon")] = v.clone();
    }
    let columns: Vec<Vec<(usize, Rational)>> = (0..matrix.columns().len())
        .map(|j| {
            matrix
                .column(j)
                .iter()
                .map(|&(r, s)| (r as usize, int(s as i64)))
                .collect()
        })
        .collect();
    let costs = vec![int(1); columns.len()];
    let problem = simplex::Problem {
        rows: matrix.rows().len(),
        columns: &columns,
        costs: &costs,
        rhs: &rhs,
    };
    let empty = LpReport {
        status: LpStatus::Infeasible,
        optimum: None,
        primal: BTreeMap::new(),
        dual: WeightFunction::zero(n),
    };
    Ok(match simplex::solve(&problem, opts.max_pivots) {
        simplex::Outcome::Infeasible => empty,
        simplex::Outcome::BudgetExceeded => LpReport {
            status: LpStatus::BudgetExceeded,
            ..empty
        },
        simplex::Outcome::Optimal {
            value,
            primal,
            dual,
        } => {
            let primal = matrix
                .columns()
                .iter()
                .zip(primal)
                .filter(|(_, x)| !x.is_zero())
                .map(|(t, x)| (*t, x))
                .collect();
            let mut w = WeightFunction::zero(n);
            for (row, y) in matrix.rows().iter().zip(dual) {
                w.set(
                    crate::model::OrientedTriangle::from_canonical(*row, Sign::Pos),
                    y,
                );
            }
            LpReport {
                status: LpStatus::Optimal,
                optimum: Some(value),
                primal,
                dual: w,
            }
        }
    })
}

/// The same solve as [`primal_lower_bound`]; the report's `dual` field
/// carries the optimal weight function.
pub fn dual_optimal_weights(
    t1: &Triangulation,
    t2: &Triangulation,
    opts: &LpOptions,
) -> Result<LpReport, LpError> {
    primal_lower_bound(t1, t2, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(a: usize, b: usize) -> Triangulation {
        Triangulation::from_pairs(2, &[(a, b)]).unwrap()
    }

    #[test]
    fn square_pair() {
        let (a, b) = (square(0, 2), square(1, 3));
        let r = primal_lower_bound(&a, &b, &LpOptions::default()).unwrap();
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.optimum, Some(int(1)));
        let plus = OrientedTetrahedron::new([0, 1, 2, 3], Sign::Pos).unwrap();
        assert_eq!(r.primal.get(&plus), Some(&int(1)));
        assert_eq!(verify_certificate(&r.dual, &a, &b).unwrap(), int(1));
    }

    #[test]
    fn identical_pair() {
        let a = square(0, 2);
        let r = primal_lower_bound(&a, &a, &LpOptions::default()).unwrap();
        assert_eq!(r.optimum, Some(int(0)));
        assert!(r.primal.is_empty());
    }

    #[test]
    fn zero_certificate_bounds_zero() {
        let (a, b) = (square(0, 2), square(1, 3));
        assert_eq!(
            verify_certificate(&WeightFunction::zero(2), &a, &b).unwrap(),
            int(0)
        );
    }

    #[test]
    fn violation_names_quadruple() {
        let (a, b) = (square(0, 2), square(1, 3));
        let mut w = WeightFunction::zero(2);
        w.set(crate::model::OrientedTriangle::new(0, 1, 3), int(2));
        match verify_certificate(&w, &a, &b) {
            Err(LpError::ConstraintViolation { quadruple, sum }) => {
                assert_eq!(quadruple, [0, 1, 2, 3]);
                assert_eq!(sum, int(2));
            }
            other => panic!("{other:?}"),
        }
    }
}
