use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::base::{simplified_assignment, two_edge_weight};
use super::context::rank;
use super::figure::{solve_figure_gap, FigureOutcome};
use super::flow::{max_flow, ArcKind, FlowNetwork, FlowResult};
use super::network::build_flow_instance;
use super::{Assignment, TriangleClass, Variant, VariantConfig, WeightContext, WeightError};
use crate::lp::{Rational, WeightFunction};
use crate::model::{OrientedTriangle, Sign};

/// Outcome of one vertex's flow problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSummary {
    pub s: usize,
    pub source_value: Rational,
    pub flow: Rational,
    /// Arcs of a minimum cut; its capacity equals `flow`.
    pub min_cut_arcs: usize,
}

impl FlowSummary {
    pub fn saturated(&self) -> bool {
        self.flow == self.source_value
    }
}

/// A complete weight function with the class each triangle was assigned by.
#[derive(Clone, Debug)]
pub struct AssembledWeights {
    pub config: VariantConfig,
    pub assignment: Assignment,
    weights: WeightFunction,
    provenance: BTreeMap<[usize; 3], TriangleClass>,
    pub flows: Vec<FlowSummary>,
    pub warnings: Vec<String>,
}

impl AssembledWeights {
    pub fn n(&self) -> usize {
        self.weights.n()
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.weights
    }

    pub fn into_weights(self) -> WeightFunction {
        self.weights
    }

    pub fn provenance(&self, t: [usize; 3]) -> Option<TriangleClass> {
        let mut t = t;
        t.sort_unstable();
        self.provenance.get(&t).copied()
    }

    pub fn provenance_iter(&self) -> impl Iterator<Item = ([usize; 3], TriangleClass)> + '_ {
        self.provenance.iter().map(|(k, v)| (*k, *v))
    }

    /// Whether every flow problem absorbed its whole source value.
    pub fn all_flows_saturated(&self) -> bool {
        self.flows.iter().all(FlowSummary::saturated)
    }

    /// The weights in the certificate format shared with the LP verifier.
    pub fn to_certificate(&self) -> String {
        self.weights.to_certificate()
    }

    /// One `i j k class` line per sorted triple.
    pub fn provenance_sidecar(&self) -> String {
        let mut out = String::new();
        for ([i, j, k], class) in &self.provenance {
            let _ = writeln!(out, "{i} {j} {k} {class}");
        }
        out
    }

    /// Returns a copy with `delta` added to the weight of `t`.
    pub fn perturbed(&self, t: OrientedTriangle, delta: &Rational) -> AssembledWeights {
        let mut out = self.clone();
        let value = out.weights.eval(t) + delta;
        out.weights.set(t, value);
        out
    }
}

/// Sum of the outward face weights: the weight of the first triangulation
/// minus that of the second.
pub fn total_weight(ctx: &WeightContext, w: &AssembledWeights) -> Rational {
    (0..ctx.sphere().faces().len())
        .map(|f| w.weights.eval(ctx.sphere().face(f)))
        .sum()
}

/// Weights read off the dual arcs of one-edge triangles.
pub fn one_edge_weights(net: &FlowNetwork, flow: &FlowResult) -> Vec<(OrientedTriangle, Rational)> {
    net.arcs
        .iter()
        .zip(&flow.arc_flow)
        .filter_map(|(arc, f)| match arc.kind {
            ArcKind::Dual {
                triangle,
                class: TriangleClass::OneEdgeFlow,
            } => Some((triangle, f.clone())),
            _ => None,
        })
        .collect()
}

/// Inductive weight of a triangle with no sphere edge, in its chosen
/// orientation, with the maximising vertex if the maximum is positive.
///
/// `assigned` reports which sorted triples already carry their final weight.
pub fn zero_edge_weight(
    ctx: &WeightContext,
    t: [usize; 3],
    weights: &WeightFunction,
    assigned: &dyn Fn([usize; 3]) -> bool,
) -> Result<(Rational, Option<usize>), WeightError> {
    let area = ctx.area(t);
    let Some(chosen) = ctx.chosen(t) else {
        return Ok((Rational::zero(), None));
    };
    if area == 0 {
        return Ok((Rational::zero(), None));
    }
    let [i, j, k] = chosen.cycle();
    let mut best: Option<(Rational, usize)> = None;
    for l in ctx.region(t).region_vertices(ctx.sphere()) {
        if l == i || l == j || l == k {
            continue;
        }
        let subs = [[i, j, l], [j, k, l], [k, i, l]];
        if subs.iter().any(|&s| ctx.area(s) >= area) {
            continue;
        }
        let mut f = -Rational::one();
        for [a, b, c] in subs {
            let sub = OrientedTriangle::new(a, b, c);
            if !assigned(sub.canonical()) {
                return Err(WeightError::InductionOrder {
                    triangle: chosen,
                    missing: sub,
                });
            }
            f += weights.eval(sub);
        }
        if best.as_ref().is_none_or(|(b, _)| f > *b) {
            best = Some((f, l));
        }
    }
    Ok(match best {
        Some((f, l)) if f > Rational::zero() => (f, Some(l)),
        _ => (Rational::zero(), None),
    })
}

fn solve_flows(
    ctx: &WeightContext,
    cfg: &VariantConfig,
    assignment: &Assignment,
) -> Result<Vec<(FlowNetwork, FlowResult)>, WeightError> {
    (0..ctx.sphere().vertex_count())
        .into_par_iter()
        .map(|s| {
            let net = build_flow_instance(ctx, cfg, assignment, s)?;
            let res = max_flow(&net);
            Ok((net, res))
        })
        .collect()
}

fn summarize(s: usize, net: &FlowNetwork, res: &FlowResult) -> FlowSummary {
    FlowSummary {
        s,
        source_value: net.source_value.clone(),
        flow: res.value.clone(),
        min_cut_arcs: res.min_cut.len(),
    }
}

/// Flow outcome for every vertex under `cfg` and `assignment`.
pub fn flow_summaries(
    ctx: &WeightContext,
    cfg: &VariantConfig,
    assignment: &Assignment,
) -> Result<Vec<FlowSummary>, WeightError> {
    Ok(solve_flows(ctx, cfg, assignment)?
        .iter()
        .enumerate()
        .map(|(s, (net, res))| summarize(s, net, res))
        .collect())
}

/// Assembles all four classes from fixed face and two-edge weights.
pub fn assemble_with(
    ctx: &WeightContext,
    cfg: &VariantConfig,
    assignment: &Assignment,
) -> Result<AssembledWeights, WeightError> {
    cfg.validate()?;
    let sph = ctx.sphere();
    let mut weights = WeightFunction::zero(ctx.n());
    let mut assigned = vec![false; ctx.triples().len()];
    let mut provenance = BTreeMap::new();
    let mut warnings = Vec::new();
    let mut by_class: BTreeMap<TriangleClass, Vec<[usize; 3]>> = BTreeMap::new();
    for &t in ctx.triples() {
        let (class, odd) = ctx.class(t);
        if odd {
            warnings.push(format!(
                "triangle {:?} has three sphere edges but is not a face; treated as zero-edge",
                t
            ));
        }
        provenance.insert(t, class);
        by_class.entry(class).or_default().push(t);
    }

    for f in 0..sph.faces().len() {
        let t = sph.face(f);
        weights.set(t, assignment.faces[f].clone());
        assigned[rank(t.canonical())] = true;
    }

    for &t in by_class.get(&TriangleClass::TwoEdge).into_iter().flatten() {
        let tri = ctx
            .chosen(t)
            .unwrap_or_else(|| OrientedTriangle::from_canonical(t, Sign::Pos));
        weights.set(tri, two_edge_weight(ctx, assignment, tri)?);
        assigned[rank(t)] = true;
    }

    let solved = solve_flows(ctx, cfg, assignment)?;
    let mut flows = Vec::with_capacity(solved.len());
    for (s, (net, res)) in solved.iter().enumerate() {
        for (tri, value) in one_edge_weights(net, res) {
            let slot = &mut assigned[rank(tri.canonical())];
            if *slot {
                return Err(WeightError::Structure(format!(
                    "one-edge triangle {tri} assigned by two flow problems"
                )));
            }
            *slot = true;
            weights.set(tri, value);
        }
        flows.push(summarize(s, net, res));
    }
    for &t in by_class.get(&TriangleClass::OneEdgeFlow).into_iter().flatten() {
        if !assigned[rank(t)] {
            return Err(WeightError::Structure(format!(
                "one-edge triangle {t:?} has no dual arc"
            )));
        }
    }

    let mut zero: Vec<[usize; 3]> = by_class
        .remove(&TriangleClass::ZeroEdgeInductive)
        .unwrap_or_default();
    zero.sort_by_key(|&t| (ctx.area(t), t));
    let mut start = 0;
    while start < zero.len() {
        let area = ctx.area(zero[start]);
        let end = start + zero[start..].iter().take_while(|&&t| ctx.area(t) == area).count();
        let batch = &zero[start..end];
        let values: Vec<Rational> = {
            let done = |t: [usize; 3]| assigned[rank(t)];
            batch
                .par_iter()
                .map(|&t| zero_edge_weight(ctx, t, &weights, &done).map(|(v, _)| v))
                .collect::<Result<_, _>>()?
        };
        for (&t, value) in batch.iter().zip(values) {
            if let Some(tri) = ctx.chosen(t) {
                weights.set(tri, value);
            }
            assigned[rank(t)] = true;
        }
        start = end;
    }
    debug_assert!(assigned.iter().all(|&a| a));

    Ok(AssembledWeights {
        config: cfg.clone(),
        assignment: assignment.clone(),
        weights,
        provenance,
        flows,
        warnings,
    })
}

/// Assembles the configured variant. The full variant fails if the figure
/// solver finds no admissible assignment.
pub fn assemble_weight_function(
    ctx: &WeightContext,
    cfg: &VariantConfig,
) -> Result<AssembledWeights, WeightError> {
    match cfg.variant {
        Variant::Simplified => assemble_with(ctx, cfg, &simplified_assignment(ctx, cfg)),
        Variant::Full => match solve_figure_gap(ctx, cfg)? {
            FigureOutcome::Found(sol) => assemble_with(ctx, cfg, &sol.assignment),
            FigureOutcome::Failed(fail) => Err(WeightError::SolverFailure(fail.to_string())),
        },
    }
}

/// The smallest `c` in `2..=5` for which every simplified flow problem on
/// every given sphere absorbs its source value.
pub fn choose_c(contexts: &[&WeightContext]) -> Result<Option<usize>, WeightError> {
    for c in 2..=5 {
        let cfg = VariantConfig::simplified(c);
        let mut ok = true;
        for ctx in contexts {
            let assignment = simplified_assignment(ctx, &cfg);
            if !flow_summaries(ctx, &cfg, &assignment)?.iter().all(FlowSummary::saturated) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(c));
        }
    }
    Ok(None)
}
