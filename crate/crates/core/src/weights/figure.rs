use std::collections::BTreeMap;
use std::cell::Cell;
use std::fmt;

use num_traits::{One, Zero};

use super::assemble::assemble_with;
use super::verify::{check_tetrahedral_constraints, Violation};
use super::{Assignment, TriangleClass, VariantConfig, WeightContext, WeightError};
use crate::lp::{frac, Rational};

/// Number of faces of weight 3/4 the full variant must produce.
pub const TARGET_THREE_QUARTER_FACES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureSolution {
    pub assignment: Assignment,
    /// Assemblies evaluated before this one passed.
    pub evaluations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureFailure {
    pub reason: String,
    pub evaluations: usize,
    /// The assignment with the fewest violations seen, and its violations.
    pub best: Option<Assignment>,
    pub best_violations: Vec<Violation>,
}

impl fmt::Display for FigureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} after {} evaluations", self.reason, self.evaluations)?;
        if self.best.is_some() {
            write!(f, "; best assignment violates {} quadruples", self.best_violations.len())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FigureOutcome {
    Found(FigureSolution),
    Failed(FigureFailure),
}

fn grid() -> Vec<Rational> {
    (0..=4).map(|q| frac(q, 4)).collect()
}

/// Rounds up to the next multiple of 1/4.
fn ceil_quarter(x: &Rational) -> Rational {
    let four = Rational::from_integer(4.into());
    (x * &four).ceil() / four
}

/// Pairs each degree-4 vertex with an adjacent degree-5 vertex.
pub fn special_pairs(ctx: &WeightContext) -> Result<Vec<(usize, usize)>, String> {
    let s = ctx.sphere();
    let by_degree = |d: usize| -> Vec<usize> {
        (0..s.vertex_count()).filter(|&v| s.degree(v) == d).collect()
    };
    let (fours, fives) = (by_degree(4), by_degree(5));
    if fours.len() != 4 || fives.len() != 4 {
        return Err(format!(
            "expected four vertices each of degree 4 and 5, found {} and {}",
            fours.len(),
            fives.len()
        ));
    }
    let mut used = vec![false; fives.len()];
    let mut pairs = Vec::new();
    for &z4 in &fours {
        let Some(i) = (0..fives.len()).find(|&i| !used[i] && s.is_edge(z4, fives[i])) else {
            return Err(format!("degree-4 vertex {z4} has no free degree-5 neighbour"));
        };
        used[i] = true;
        pairs.push((z4, fives[i]));
    }
    Ok(pairs)
}

/// Face assignments with every face at a degree-4 vertex at 3/4 plus two
/// more faces at its paired degree-5 vertex, in lexicographic order of the
/// choices; only those with exactly 24 faces at 3/4 are kept.
pub fn face_candidates(ctx: &WeightContext, pairs: &[(usize, usize)]) -> Vec<Vec<Rational>> {
    let s = ctx.sphere();
    let star = |z: usize| -> Vec<usize> {
        (0..s.faces().len()).filter(|&f| s.faces()[f].contains(&z)).collect()
    };
    let options: Vec<Vec<[usize; 2]>> = pairs
        .iter()
        .map(|&(z4, z5)| {
            let rest: Vec<usize> = star(z5)
                .into_iter()
                .filter(|&f| !s.faces()[f].contains(&z4))
                .collect();
            let mut out = Vec::new();
            for a in 0..rest.len() {
                for b in a + 1..rest.len() {
                    out.push([rest[a], rest[b]]);
                }
            }
            out
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; pairs.len()];
    if options.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let mut faces = vec![Rational::one(); s.faces().len()];
        for (p, &(z4, _)) in pairs.iter().enumerate() {
            for f in star(z4).into_iter().chain(options[p][choice[p]]) {
                faces[f] = frac(3, 4);
            }
        }
        if faces.iter().filter(|w| !w.is_one()).count() == TARGET_THREE_QUARTER_FACES {
            out.push(faces);
        }
        // Odometer increment, last pair fastest.
        let mut p = pairs.len();
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            choice[p] += 1;
            if choice[p] < options[p].len() {
                break;
            }
            choice[p] = 0;
        }
    }
}

/// Two-edge triangles whose flip region touches a face lighter than 1, with
/// a starting value: half the Case 1 deficit, rounded up to the grid.
fn near_special_two_edge(ctx: &WeightContext, faces: &[Rational]) -> BTreeMap<[usize; 3], Rational> {
    let mut out = BTreeMap::new();
    for &t in ctx.triples() {
        if ctx.class(t).0 != TriangleClass::TwoEdge || ctx.chosen(t).is_none() {
            continue;
        }
        let region = ctx.region(t);
        if region.area() != 2 || region.faces().iter().all(|&f| faces[f].is_one()) {
            continue;
        }
        let deficit: Rational = region.faces().iter().map(|&f| faces[f].clone()).sum::<Rational>()
            - Rational::one();
        let start = ceil_quarter(&(deficit / Rational::from_integer(2.into())));
        out.insert(t, start.max(Rational::zero()));
    }
    out
}

/// Searches for near-special face and two-edge weights on the grid
/// `{0, 1/4, 1/2, 3/4, 1}` giving exactly 24 faces of weight 3/4 and no
/// tetrahedral violation.
///
/// Every face candidate is first evaluated with its starting two-edge
/// values; the best one is then improved one triangle at a time, taking the
/// first grid value (ascending) that lowers the violation count, until a
/// pass brings no improvement or `cfg.solver_budget` assemblies are spent.
pub fn solve_figure_gap(ctx: &WeightContext, cfg: &VariantConfig) -> Result<FigureOutcome, WeightError> {
    let fail = |reason: String, evaluations, best: Option<(Assignment, Vec<Violation>)>| {
        let (best, best_violations) = match best {
            Some((a, v)) => (Some(a), v),
            None => (None, Vec::new()),
        };
        Ok(FigureOutcome::Failed(FigureFailure {
            reason,
            evaluations,
            best,
            best_violations,
        }))
    };
    let pairs = match special_pairs(ctx) {
        Ok(p) => p,
        Err(reason) => return fail(reason, 0, None),
    };
    let candidates = face_candidates(ctx, &pairs);
    if candidates.is_empty() {
        return fail("no face choice gives exactly 24 faces of weight 3/4".into(), 0, None);
    }
    let spent = Cell::new(0usize);
    let evaluate = |a: &Assignment| -> Result<Vec<Violation>, WeightError> {
        spent.set(spent.get() + 1);
        let aw = assemble_with(ctx, cfg, a)?;
        Ok(check_tetrahedral_constraints(aw.weights(), Some(ctx.sphere())).violations)
    };

    let mut best: Option<(Assignment, Vec<Violation>)> = None;
    for faces in candidates {
        let two_edge = near_special_two_edge(ctx, &faces);
        let a = Assignment { faces, two_edge };
        let v = evaluate(&a)?;
        if v.is_empty() {
            return Ok(FigureOutcome::Found(FigureSolution {
                assignment: a,
                evaluations: spent.get(),
            }));
        }
        if best.as_ref().is_none_or(|(_, bv)| v.len() < bv.len()) {
            best = Some((a, v));
        }
        if spent.get() >= cfg.solver_budget {
            return fail("budget exhausted".into(), spent.get(), best);
        }
    }

    let (mut current, mut violations) = best.clone().expect("at least one candidate");
    let keys: Vec<[usize; 3]> = current.two_edge.keys().copied().collect();
    'passes: loop {
        let mut improved = false;
        for &t in &keys {
            for value in grid() {
                if current.two_edge[&t] == value {
                    continue;
                }
                if spent.get() >= cfg.solver_budget {
                    break 'passes;
                }
                let mut trial = current.clone();
                trial.two_edge.insert(t, value);
                let v = evaluate(&trial)?;
                if v.len() < violations.len() {
                    current = trial;
                    violations = v;
                    improved = true;
                    if violations.is_empty() {
                        return Ok(FigureOutcome::Found(FigureSolution {
                            assignment: current,
                            evaluations: spent.get(),
                        }));
                    }
                    break;
                }
            }
        }
        if !improved {
            break;
        }
    }
    let reason = if spent.get() >= cfg.solver_budget {
        "budget exhausted"
    } else {
        "local search converged without a valid assignment"
    };
    fail(reason.into(), spent.get(), Some((current, violations)))
}
