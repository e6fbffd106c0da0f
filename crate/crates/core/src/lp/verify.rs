use num_traits::Zero;
use rayon::prelude::*;

use super::chain::{chain_of, WeightFunction};
use super::rational::{abs_le_one, Rational};
use super::LpError;
use crate::model::{quadruples, Triangulation};

/// Checks `|w(ijl) + w(jkl) + w(kil) + w(kji)| <= 1` on every quadruple
/// `i<j<k<l` and returns the certified lower bound
/// `(chain_of(t2) - chain_of(t1)) . w` on the flip distance from `t1` to
/// `t2`. Uses nothing from the LP solver.
pub fn verify_certificate(
    w: &WeightFunction,
    t1: &Triangulation,
    t2: &Triangulation,
) -> Result<Rational, LpError> {
    for t in [t1, t2] {
        if t.n() != w.n() {
            return Err(LpError::SizeMismatch {
                left: w.n(),
                right: t.n(),
            });
        }
    }
    let quads: Vec<[usize; 4]> = quadruples(w.n() + 2).collect();
    let offending = quads.par_iter().find_map_first(|&q| {
        let s = tetrahedral_sum(w, q);
        (!abs_le_one(&s)).then_some((q, s))
    });
    if let Some((quadruple, sum)) = offending {
        return Err(LpError::ConstraintViolation { quadruple, sum });
    }
    Ok(w.pair(&(&chain_of(t2) - &chain_of(t1))))
}

fn tetrahedral_sum(w: &WeightFunction, [i, j, k, l]: [usize; 4]) -> Rational {
    let mut s = Rational::zero();
    for (a, b, c) in [(i, j, l), (j, k, l), (k, i, l), (k, j, i)] {
        s += w.eval_cycle(a, b, c);
    }
    s
}
