use std::fmt::Write;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::context::rank;
use super::{AssembledWeights, VariantConfig, WeightContext};
use crate::lp::{format_rational, frac, Rational, WeightFunction};
use crate::model::{binomial, OrientedTriangle, Sign};
use crate::sphere::SphereTriangulation;

/// A quadruple `i<j<k<l` whose boundary sum `w(ijl)+w(jkl)+w(kil)+w(kji)`
/// exceeds 1 in absolute value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub quadruple: [usize; 4],
    pub sum: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TetraReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
    /// Quadruples with exactly one sphere face among their four triangles.
    pub case_two_checked: usize,
    pub case_two_violations: Vec<Violation>,
}

impl TetraReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// `i,j,k,l,sum,bound` per violation.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,k,l,sum,bound\n");
        for v in &self.violations {
            let [i, j, k, l] = v.quadruple;
            let _ = writeln!(out, "{i},{j},{k},{l},{},1", format_rational(&v.sum));
        }
        out
    }
}

/// Checks every quadruple of the `n+2` labels exactly. Weights are copied
/// into a dense table indexed by sorted triple first. When `sphere` is
/// given, quadruples with exactly one face of it are also reported apart.
pub fn check_tetrahedral_constraints(
    w: &WeightFunction,
    sphere: Option<&SphereTriangulation>,
) -> TetraReport {
    let v = w.n() + 2;
    let mut table = vec![Rational::zero(); binomial(v, 3)];
    for (t, value) in w.iter() {
        table[rank(t)] = value.clone();
    }
    let is_face = |t: [usize; 3]| {
        sphere.is_some_and(|s| {
            s.face_index(OrientedTriangle::from_canonical(t, Sign::Pos))
                .is_some()
        })
    };
    let one = Rational::one();
    let per_l: Vec<(usize, Vec<Violation>, usize, Vec<Violation>)> = (3..v)
        .into_par_iter()
        .map(|l| {
            let (mut checked, mut bad, mut c2, mut bad2) = (0, Vec::new(), 0, Vec::new());
            for k in 2..l {
                for j in 1..k {
                    for i in 0..j {
                        let sum = &table[rank([i, j, l])] + &table[rank([j, k, l])]
                            - &table[rank([i, k, l])]
                            - &table[rank([i, j, k])];
                        checked += 1;
                        let over = sum.abs() > one;
                        let faces = [[i, j, l], [j, k, l], [i, k, l], [i, j, k]]
                            .into_iter()
                            .filter(|&t| is_face(t))
                            .count();
                        let violation = Violation {
                            quadruple: [i, j, k, l],
                            sum,
                        };
                        if faces == 1 {
                            c2 += 1;
                            if over {
                                bad2.push(violation.clone());
                            }
                        }
                        if over {
                            bad.push(violation);
                        }
                    }
                }
            }
            (checked, bad, c2, bad2)
        })
        .collect();
    let mut report = TetraReport::default();
    for (checked, bad, c2, bad2) in per_l {
        report.checked += checked;
        report.violations.extend(bad);
        report.case_two_checked += c2;
        report.case_two_violations.extend(bad2);
    }
    report.violations.sort_by_key(|v| v.quadruple);
    report.case_two_violations.sort_by_key(|v| v.quadruple);
    report
}

/// Hypothesis counts and counterexamples for the per-triangle bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    /// Non-faces: `|w| <= 1/2`.
    pub half_bound_checked: usize,
    pub half_bound: Vec<([usize; 3], Rational)>,
    /// Two vertices more than `c+2` apart, both more than `c` from the
    /// sink: `|w| <= 1/4`.
    pub quarter_bound_checked: usize,
    pub quarter_bound: Vec<([usize; 3], Rational)>,
    /// All three sides longer than `10c`: `w = 0`.
    pub far_zero_checked: usize,
    pub far_zero: Vec<([usize; 3], Rational)>,
    /// Area-0 triangles: `w = 0`.
    pub flat_checked: usize,
    pub flat: Vec<([usize; 3], Rational)>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.half_bound.is_empty() && self.quarter_bound.is_empty() && self.far_zero.is_empty() && self.flat.is_empty()
    }
}

pub fn check_lemmas(ctx: &WeightContext, cfg: &VariantConfig, aw: &AssembledWeights) -> LemmaReport {
    let s = ctx.sphere();
    let sink: Vec<usize> = {
        let mut vs: Vec<usize> = (0..s.faces().len())
            .filter(|&f| !aw.assignment.faces[f].is_one())
            .flat_map(|f| s.faces()[f])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    };
    let far_from_sink = |x: usize| sink.iter().all(|&p| s.distance(p, x) > cfg.c);
    let (half, quarter) = (frac(1, 2), frac(1, 4));
    let mut r = LemmaReport::default();
    for &t in ctx.triples() {
        let value = aw.weights().eval(OrientedTriangle::from_canonical(t, Sign::Pos));
        let abs = value.abs();
        let [a, b, c] = t;
        if !ctx.is_face(t) {
            r.half_bound_checked += 1;
            if abs > half {
                r.half_bound.push((t, value.clone()));
            }
        }
        let pairs = [(a, b), (b, c), (a, c)];
        if pairs
            .iter()
            .any(|&(x, y)| s.distance(x, y) > cfg.c + 2 && far_from_sink(x) && far_from_sink(y))
        {
            r.quarter_bound_checked += 1;
            if abs > quarter {
                r.quarter_bound.push((t, value.clone()));
            }
        }
        if pairs.iter().all(|&(x, y)| s.distance(x, y) > 10 * cfg.c) {
            r.far_zero_checked += 1;
            if !value.is_zero() {
                r.far_zero.push((t, value.clone()));
            }
        }
        if ctx.is_flat(t) {
            r.flat_checked += 1;
            if !value.is_zero() {
                r.flat.push((t, value));
            }
        }
    }
    r
}
