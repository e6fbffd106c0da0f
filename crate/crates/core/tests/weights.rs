//! Weight engine checks. Flow values are compared with brute-force cut
//! enumeration, sweep results with the chain pairing of each tetrahedron
//! boundary, and frozen instance values with independent recomputation.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use flipdist::lp::{boundary, frac, int, verify_certificate, Rational, WeightFunction};
use flipdist::model::{quadruples, OrientedTetrahedron, OrientedTriangle, Sign};
use flipdist::sphere::{
    default_separation, rotated_zigzag, select_rotation, zigzag, zigzag_sphere,
};
use flipdist::weights::*;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn offset(n: usize) -> usize {
    select_rotation(n, default_separation(n)).unwrap().r
}

fn context(n: usize) -> &'static WeightContext {
    static C16: OnceLock<WeightContext> = OnceLock::new();
    static C25: OnceLock<WeightContext> = OnceLock::new();
    static C49: OnceLock<WeightContext> = OnceLock::new();
    let cell = match n {
        16 => &C16,
        25 => &C25,
        49 => &C49,
        _ => unreachable!(),
    };
    cell.get_or_init(|| WeightContext::new(zigzag_sphere(n, offset(n)).unwrap()))
}

fn simplified(n: usize) -> &'static AssembledWeights {
    static W16: OnceLock<AssembledWeights> = OnceLock::new();
    static W25: OnceLock<AssembledWeights> = OnceLock::new();
    let cell = if n == 16 { &W16 } else { &W25 };
    cell.get_or_init(|| assemble_weight_function(context(n), &VariantConfig::default()).unwrap())
}

fn tri(t: [usize; 3]) -> OrientedTriangle {
    OrientedTriangle::from_canonical(t, Sign::Pos)
}

// ---- max flow against cut enumeration ----

fn brute_min_cut(net: &FlowNetwork) -> Rational {
    let inner: Vec<usize> = (2..net.nodes.len()).collect();
    let mut best: Option<Rational> = None;
    for mask in 0u32..(1 << inner.len()) {
        let side = |v: usize| match v {
            FlowNetwork::SOURCE => true,
            FlowNetwork::SINK => false,
            _ => mask >> inner.iter().position(|&x| x == v).unwrap() & 1 == 1,
        };
        let cap: Rational = net
            .arcs
            .iter()
            .filter(|a| (side(a.from) && !side(a.to)) || (!a.directed && side(a.to) && !side(a.from)))
            .map(|a| a.capacity.clone())
            .sum();
        if best.as_ref().is_none_or(|b| cap < *b) {
            best = Some(cap);
        }
    }
    best.unwrap()
}

prop_compose! {
    fn small_network()(
        nodes in 2usize..7,
        arcs in prop::collection::vec((0usize..9, 0usize..9, 0i64..5, any::<bool>()), 0..16),
    ) -> FlowNetwork {
        let mut net = FlowNetwork::new();
        for f in 0..nodes {
            net.add_node(NodeKind::Face(f));
        }
        let total = nodes + 2;
        for (a, b, q, directed) in arcs {
            let (a, b) = (a % total, b % total);
            if a == b {
                continue;
            }
            net.add_arc(Arc { from: a, to: b, capacity: frac(q, 4), directed, kind: ArcKind::Source });
        }
        net
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn max_flow_equals_min_cut(net in small_network()) {
        let r = max_flow(&net);
        prop_assert_eq!(&r.value, &brute_min_cut(&net));
        prop_assert_eq!(r.cut_capacity(&net), r.value.clone());
        for v in 2..net.nodes.len() {
            prop_assert!(r.excess(&net, v).is_zero());
        }
        for (a, f) in net.arcs.iter().zip(&r.arc_flow) {
            prop_assert!(f <= &a.capacity);
            if a.directed {
                prop_assert!(!f.is_negative());
            } else {
                prop_assert!(f >= &-a.capacity.clone());
            }
        }
    }
}

#[test]
fn single_arc_network_carries_capacity() {
    let mut net = FlowNetwork::new();
    net.add_arc(Arc {
        from: FlowNetwork::SOURCE,
        to: FlowNetwork::SINK,
        capacity: frac(5, 4),
        directed: true,
        kind: ArcKind::Source,
    });
    assert_eq!(max_flow(&net).value, frac(5, 4));
}

// ---- configuration and classification ----

#[test]
fn config_validation() {
    assert!(VariantConfig::default().validate().is_ok());
    let mut cfg = VariantConfig::simplified(2);
    cfg.c_outer = 20;
    assert!(cfg.validate().is_err());
    cfg = VariantConfig::simplified(0);
    assert!(cfg.validate().is_err());
    cfg = VariantConfig { r0: 0, ..VariantConfig::simplified(2) };
    assert!(cfg.validate().is_err());
    assert_eq!("full".parse::<Variant>().unwrap(), Variant::Full);
    assert!("other".parse::<Variant>().is_err());
}

#[test]
fn every_triangle_has_one_provenance() {
    let ctx = context(16);
    let aw = simplified(16);
    let s = ctx.sphere();
    let mut count = 0;
    for (t, class) in aw.provenance_iter() {
        count += 1;
        let [a, b, c] = t;
        let edges = [(a, b), (b, c), (a, c)].iter().filter(|&&(x, y)| s.neighbours(x).contains(&y)).count();
        let face = s.faces().iter().any(|f| {
            let mut f = *f;
            f.sort_unstable();
            f == t
        });
        let expected = match (edges, face) {
            (3, true) => TriangleClass::Face,
            (2, _) => TriangleClass::TwoEdge,
            (1, _) => TriangleClass::OneEdgeFlow,
            _ => TriangleClass::ZeroEdgeInductive,
        };
        assert_eq!(class, expected, "{t:?}");
    }
    assert_eq!(count, 18 * 17 * 16 / 6);
    assert!(aw.warnings.is_empty());
    let sidecar = aw.provenance_sidecar();
    assert_eq!(sidecar.lines().count(), count);
    for line in sidecar.lines() {
        let parts: Vec<&str> = line.split(' ').collect();
        let t = [0, 1, 2].map(|i| parts[i].parse::<usize>().unwrap());
        assert_eq!(aw.provenance(t), Some(parts[3].parse().unwrap()));
    }
}

// ---- base and two-edge weights ----

/// Faces touching a special vertex, counted directly.
fn special_star_faces(n: usize) -> usize {
    let s = context(n).sphere();
    let special: Vec<usize> = (0..s.vertex_count()).filter(|&v| s.degree(v) != 6).collect();
    s.faces()
        .iter()
        .filter(|f| special.iter().any(|z| f.contains(z)))
        .count()
}

#[test]
fn simplified_face_weights() {
    for n in [16, 25] {
        let ctx = context(n);
        let a = simplified_assignment(ctx, &VariantConfig::default());
        let zeros = a.faces.iter().filter(|w| w.is_zero()).count();
        assert_eq!(zeros, special_star_faces(n));
        assert_eq!(zeros, 28);
        assert!(a.faces.iter().all(|w| w.is_zero() || w.is_one()));
        assert_eq!(base_weights(ctx, &VariantConfig::default()).unwrap(), a.faces);
    }
}

#[test]
fn two_edge_weights() {
    let ctx = context(25);
    let a = simplified_assignment(ctx, &VariantConfig::default());
    let s = ctx.sphere();
    let (mut half, mut zero_near, mut flat) = (0, 0, 0);
    for &t in ctx.triples() {
        if ctx.class(t).0 != TriangleClass::TwoEdge {
            assert!(two_edge_weight(ctx, &a, tri(t)).is_err());
            continue;
        }
        let w = two_edge_weight(ctx, &a, tri(t)).unwrap();
        assert_eq!(two_edge_weight(ctx, &a, -tri(t)).unwrap(), -w.clone());
        if ctx.is_flat(t) {
            flat += 1;
            assert!(w.is_zero());
        }
        let Some(chosen) = ctx.chosen(t) else { continue };
        let v = two_edge_weight(ctx, &a, chosen).unwrap();
        assert!(v == frac(1, 2) || v.is_zero());
        let region = ctx.region(t);
        let special_near = region.faces().iter().any(|&f| a.faces[f].is_zero());
        if v == frac(1, 2) {
            half += 1;
            assert_eq!(region.area(), 2);
            assert!(!special_near);
        } else if special_near {
            zero_near += 1;
        }
    }
    assert!(half > 0 && zero_near > 0 && flat > 0);
    let _ = s;
}

// ---- flow networks ----

#[test]
fn networks_are_well_formed() {
    for n in [16, 25] {
        let ctx = context(n);
        let cfg = VariantConfig::default();
        let a = simplified_assignment(ctx, &cfg);
        let s = ctx.sphere();
        let allowed = [Rational::zero(), frac(1, 4), frac(1, 2), Rational::one()];
        for v in 0..s.vertex_count() {
            let net = build_flow_instance(ctx, &cfg, &a, v).unwrap();
            let flips = net.nodes.iter().filter(|k| matches!(k, NodeKind::Flip(_))).count();
            assert_eq!(flips, 2 * s.degree(v));
            let mut seen = BTreeSet::new();
            for arc in &net.arcs {
                assert!(allowed.contains(&arc.capacity), "{}", arc.capacity);
                if let ArcKind::Dual { triangle, .. } = arc.kind {
                    assert!(triangle.contains(v));
                    assert!(seen.insert(triangle.canonical()), "dual edge twice");
                }
            }
            // Every edge away from v and off its link is crossed once.
            let link = |x: usize, y: usize| s.neighbours(v).contains(&x) && s.neighbours(v).contains(&y)
                && s.neighbours(x).contains(&y)
                && [s.face_of_edge(x, y), s.face_of_edge(y, x)].iter().any(|f| s.faces()[f.unwrap()].contains(&v));
            let expected = (0..s.vertex_count())
                .flat_map(|x| s.neighbours(x).iter().map(move |&y| (x, y)))
                .filter(|&(x, y)| x < y && x != v && y != v && !link(x, y))
                .count();
            assert_eq!(seen.len(), expected);
            let res = max_flow(&net);
            for node in 2..net.nodes.len() {
                assert!(res.excess(&net, node).is_zero());
            }
            assert_eq!(res.cut_capacity(&net), res.value);
            assert!(res.value <= net.source_value);
        }
    }
}

#[test]
fn generic_vertex_has_source_value_six() {
    let ctx = context(49);
    let cfg = VariantConfig::default();
    let a = simplified_assignment(ctx, &cfg);
    let values: Vec<Rational> = (0..ctx.sphere().vertex_count())
        .map(|v| build_flow_instance(ctx, &cfg, &a, v).unwrap().source_value)
        .collect();
    assert!(values.contains(&int(6)));
    assert!(values.iter().all(|x| x <= &int(6)));
}

#[test]
fn full_variant_face_candidates_and_sink() {
    let ctx = context(25);
    let pairs = special_pairs(ctx).unwrap();
    assert_eq!(pairs.len(), 4);
    let candidates = face_candidates(ctx, &pairs);
    assert!(!candidates.is_empty());
    for faces in &candidates {
        let light = faces.iter().filter(|w| **w == frac(3, 4)).count();
        assert_eq!(light, TARGET_THREE_QUARTER_FACES);
        let total: Rational = faces.iter().cloned().sum();
        assert_eq!(total, int(2 * 25 - 6));
    }
    // A vertex touching no light face sees the whole sink: 24 x 1/4.
    let cfg = VariantConfig::full(2);
    let assignment = Assignment { faces: candidates[0].clone(), two_edge: Default::default() };
    let s = ctx.sphere();
    let far = (0..s.vertex_count())
        .find(|&v| {
            (0..s.faces().len()).all(|f| assignment.faces[f].is_one() || {
                let face = s.faces()[f];
                !face.contains(&v) && !face.iter().all(|&x| s.neighbours(v).contains(&x))
                    && !(0..3).any(|i| {
                        let (x, y) = (face[i], face[(i + 1) % 3]);
                        s.neighbours(v).contains(&x) && s.neighbours(v).contains(&y)
                            && s.faces()[s.face_of_edge(y, x).unwrap()].contains(&v)
                    })
            })
        });
    if let Some(v) = far {
        let net = build_flow_instance(ctx, &cfg, &assignment, v).unwrap();
        let sink: Rational = net.arcs.iter().filter(|a| a.kind == ArcKind::Sink).map(|a| a.capacity.clone()).sum();
        assert_eq!(sink, int(6));
    }
}

#[test]
fn flow_saturation_observed() {
    let cfg = VariantConfig::default();
    let at16 = flow_summaries(context(16), &cfg, &simplified_assignment(context(16), &cfg)).unwrap();
    assert!(at16.iter().all(FlowSummary::saturated));
    let at25 = flow_summaries(context(25), &cfg, &simplified_assignment(context(25), &cfg)).unwrap();
    let short: Vec<usize> = at25.iter().filter(|f| !f.saturated()).map(|f| f.s).collect();
    assert_eq!(short, vec![3, 10, 11, 18, 24]);
    assert_eq!(choose_c(&[context(16), context(25)]).unwrap(), None);
}

// ---- assembled weights ----

#[test]
fn one_edge_weights_follow_the_flow() {
    let ctx = context(16);
    let cfg = VariantConfig::default();
    let aw = simplified(16);
    for v in 0..ctx.sphere().vertex_count() {
        let net = build_flow_instance(ctx, &cfg, &aw.assignment, v).unwrap();
        let res = max_flow(&net);
        for (t, w) in one_edge_weights(&net, &res) {
            assert_eq!(aw.weights().eval(t), w);
            assert!(w.abs() <= frac(1, 2));
            if w.is_zero() {
                assert!(aw.weights().eval(t).is_zero());
            }
        }
    }
}

#[test]
fn weight_bounds_and_antisymmetry() {
    for n in [16, 25] {
        let ctx = context(n);
        let aw = simplified(n);
        for &t in ctx.triples() {
            let w = aw.weights().eval(tri(t));
            assert_eq!(aw.weights().eval(-tri(t)), -w.clone());
            assert!(w.abs() <= Rational::one());
            match aw.provenance(t).unwrap() {
                TriangleClass::Face => {}
                TriangleClass::ZeroEdgeInductive => {
                    let chosen = ctx.chosen(t).unwrap_or(tri(t));
                    let v = aw.weights().eval(chosen);
                    assert!(!v.is_negative() && v <= frac(1, 2));
                }
                _ => assert!(w.abs() <= frac(1, 2)),
            }
        }
    }
}

/// Recomputes `max(0, max_l f(l))` for one triangle from scratch.
fn inductive_oracle(ctx: &WeightContext, w: &WeightFunction, t: [usize; 3]) -> (Rational, Vec<usize>) {
    let Some(chosen) = ctx.chosen(t) else { return (Rational::zero(), Vec::new()) };
    let [i, j, k] = chosen.cycle();
    let area = ctx.area(t);
    let s = ctx.sphere();
    let mut verts: BTreeSet<usize> = BTreeSet::new();
    for &f in ctx.region(t).faces() {
        verts.extend(s.faces()[f]);
    }
    let mut best = Rational::zero();
    let mut witnesses = Vec::new();
    for l in verts {
        if [i, j, k].contains(&l) {
            continue;
        }
        let subs = [[i, j, l], [j, k, l], [k, i, l]];
        if subs.iter().any(|&x| ctx.area(x) >= area) {
            continue;
        }
        let f: Rational = subs.iter().map(|&[a, b, c]| w.eval(OrientedTriangle::new(a, b, c))).sum::<Rational>() - int(1);
        if f > best {
            best = f;
            witnesses = vec![l];
        } else if f == best && f.is_positive() {
            witnesses.push(l);
        }
    }
    (best, witnesses)
}

#[test]
fn zero_edge_weights_match_inductive_oracle() {
    for n in [16, 25] {
        let ctx = context(n);
        let aw = simplified(n);
        let mut positive = 0;
        for &t in ctx.triples() {
            if aw.provenance(t) != Some(TriangleClass::ZeroEdgeInductive) {
                continue;
            }
            let (want, witnesses) = inductive_oracle(ctx, aw.weights(), t);
            let chosen = ctx.chosen(t).unwrap_or(tri(t));
            assert_eq!(aw.weights().eval(chosen), want, "{t:?}");
            let (got, l) = zero_edge_weight(ctx, t, aw.weights(), &|_| true).unwrap();
            assert_eq!(got, want);
            if want.is_positive() {
                positive += 1;
                assert!(witnesses.contains(&l.unwrap()));
            }
            if ctx.area(t) == 0 {
                assert!(got.is_zero());
            }
        }
        assert_eq!(positive, if n == 16 { 0 } else { 12 });
    }
}

#[test]
fn zero_edge_requires_smaller_weights_first() {
    let ctx = context(25);
    let aw = simplified(25);
    let t = ctx
        .triples()
        .iter()
        .copied()
        .find(|&t| {
            aw.provenance(t) == Some(TriangleClass::ZeroEdgeInductive)
                && zero_edge_weight(ctx, t, aw.weights(), &|_| true).unwrap().1.is_some()
        })
        .unwrap();
    let err = zero_edge_weight(ctx, t, aw.weights(), &|_| false).unwrap_err();
    assert!(matches!(err, WeightError::InductionOrder { .. }));
}

#[test]
fn total_weight_is_two_n_minus_constant() {
    for n in [16, 25] {
        let ctx = context(n);
        let aw = simplified(n);
        let total = total_weight(ctx, aw);
        assert_eq!(total, int(2 * n as i64 - 28));
        // First triangulation minus second, through the LP pairing.
        let pairing = verify_certificate(aw.weights(), &rotated_zigzag(n, offset(n)).unwrap(), &zigzag(n).unwrap());
        if n == 16 {
            assert_eq!(pairing.unwrap(), total);
        } else {
            assert!(pairing.is_err());
        }
    }
}

// ---- tetrahedral sweep ----

fn sweep_oracle(w: &WeightFunction) -> Vec<[usize; 4]> {
    quadruples(w.n() + 2)
        .filter(|&q| {
            let tet = OrientedTetrahedron::new(q, Sign::Pos).unwrap();
            let sum = w.pair(&boundary(tet));
            sum.abs() > Rational::one()
        })
        .collect()
}

#[test]
fn sweep_agrees_with_boundary_pairing() {
    let aw = simplified(25);
    let report = check_tetrahedral_constraints(aw.weights(), Some(context(25).sphere()));
    let got: Vec<[usize; 4]> = report.violations.iter().map(|v| v.quadruple).collect();
    assert_eq!(got, sweep_oracle(aw.weights()));
    assert_eq!(report.checked, 27 * 26 * 25 * 24 / 24);
    assert!(report.to_csv().starts_with("i,j,k,l,sum,bound\n"));
}

#[test]
fn simplified_sweep_results() {
    let r16 = check_tetrahedral_constraints(simplified(16).weights(), Some(context(16).sphere()));
    assert!(r16.is_valid());
    assert!(r16.case_two_violations.is_empty());
    assert!(r16.case_two_checked > 0);
    // Observed at n=25: every violation has exactly one face, at a vertex
    // whose flow problem falls short.
    let r25 = check_tetrahedral_constraints(simplified(25).weights(), Some(context(25).sphere()));
    assert_eq!(r25.violations.len(), 6);
    assert_eq!(r25.violations, r25.case_two_violations);
}

#[test]
fn zero_weights_pass_and_corruption_is_caught() {
    let w = WeightFunction::zero(16);
    assert!(check_tetrahedral_constraints(&w, None).is_valid());
    let ctx = context(16);
    let aw = simplified(16);
    let heavy = (0..ctx.sphere().faces().len())
        .find(|&f| aw.weights().eval(ctx.sphere().face(f)).is_one())
        .unwrap();
    let bad = aw.perturbed(ctx.sphere().face(heavy), &int(1));
    let report = check_tetrahedral_constraints(bad.weights(), None);
    assert!(!report.is_valid());
    let face = ctx.sphere().face(heavy).canonical();
    assert!(report
        .violations
        .iter()
        .all(|v| face.iter().all(|x| v.quadruple.contains(x))));
}

#[test]
fn weight_bounds_hold_at_sixteen() {
    let ctx = context(16);
    let cfg = VariantConfig::default();
    let report = check_lemmas(ctx, &cfg, simplified(16));
    assert!(report.holds());
    assert!(report.half_bound_checked > 0);
    assert!(report.flat_checked > 0);
}

#[test]
fn large_triangle_check_is_vacuous_at_desk_scale() {
    let ctx = context(49);
    let cfg = VariantConfig::default();
    assert!(ctx.sphere().diameter() <= 10 * cfg.c);
    let aw = assemble_weight_function(ctx, &cfg).unwrap();
    let report = check_lemmas(ctx, &cfg, &aw);
    assert_eq!(report.far_zero_checked, 0);
    assert!(report.far_zero.is_empty());
    assert!(report.half_bound.is_empty());
    assert!(report.flat.is_empty());
}

#[test]
fn assembly_is_deterministic() {
    let ctx = context(16);
    let a = assemble_weight_function(ctx, &VariantConfig::default()).unwrap();
    let b = assemble_weight_function(ctx, &VariantConfig::default()).unwrap();
    assert_eq!(a.to_certificate(), b.to_certificate());
    assert_eq!(a.to_certificate(), simplified(16).to_certificate());
    let parsed = WeightFunction::parse_certificate(&a.to_certificate()).unwrap();
    assert_eq!(&parsed, a.weights());
}

#[test]
fn figure_solver_reports_failure_within_budget() {
    let ctx = context(16);
    let cfg = VariantConfig { solver_budget: 2, ..VariantConfig::full(2) };
    match solve_figure_gap(ctx, &cfg).unwrap() {
        FigureOutcome::Found(sol) => {
            let aw = assemble_with(ctx, &cfg, &sol.assignment).unwrap();
            assert!(check_tetrahedral_constraints(aw.weights(), None).is_valid());
        }
        FigureOutcome::Failed(fail) => {
            assert!(fail.evaluations <= 2);
            assert!(fail.best.is_none() || !fail.best_violations.is_empty());
            assert!(matches!(
                assemble_weight_function(ctx, &cfg),
                Err(WeightError::SolverFailure(_))
            ));
        }
    }
}
