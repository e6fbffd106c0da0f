use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use super::base::two_edge_weight;
use super::flow::{Arc, ArcKind, FlowNetwork, NodeKind};
use super::{Assignment, TriangleClass, Variant, VariantConfig, WeightContext, WeightError};
use crate::lp::{frac, Rational};
use crate::model::OrientedTriangle;

/// The flow problem of vertex `s`.
///
/// Every edge opposite `s` is flipped, so the faces around `s` and the faces
/// across its link are replaced by the `2 deg(s)` flip triangles. The source
/// feeds each flip triangle its two-edge weight; faces lighter than 1 drain
/// their deficit into the sink. Each remaining sphere edge `uv` away from
/// `s` gives one dual arc whose flow is the weight of `(s, u, v)`:
///
/// - one sphere edge: capacity 1/2 within `c` of the source (or, in the full
///   variant, of the sink), 1/4 beyond; directed out of the region when the
///   region is oriented and within `c'`, undirected otherwise; flat
///   triangles get capacity 0;
/// - two sphere edges: capacity equal to the fixed two-edge weight, directed
///   the way that weight is positive;
/// - three sphere edges without being a face: capacity 0.
pub fn build_flow_instance(
    ctx: &WeightContext,
    cfg: &VariantConfig,
    assignment: &Assignment,
    s: usize,
) -> Result<FlowNetwork, WeightError> {
    let sph = ctx.sphere();
    let v_count = sph.vertex_count();
    let face_of = |a: usize, b: usize| {
        sph.face_of_edge(a, b)
            .ok_or_else(|| WeightError::Structure(format!("edge {a}->{b} lies on no face")))
    };
    let contains_s = |f: usize| sph.faces()[f].contains(&s);

    // Faces across the link of s, each with its link edge.
    let mut across: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for &u in sph.neighbours(s) {
        let face = sph.faces()[face_of(s, u)?];
        let at = face.iter().position(|&x| x == u).expect("face contains its edge");
        let v = face[(at + 1) % 3];
        let g = face_of(v, u)?;
        if contains_s(g) {
            return Err(WeightError::Structure(format!("vertex {s} has degree below 3")));
        }
        if across.insert(g, (u, v)).is_some() {
            return Err(WeightError::Structure(format!(
                "face {g} lies across two link edges of {s}"
            )));
        }
    }

    let mut net = FlowNetwork::new();
    let mut face_node: HashMap<usize, usize> = HashMap::new();
    for f in 0..sph.faces().len() {
        if !contains_s(f) && !across.contains_key(&f) {
            face_node.insert(f, net.add_node(NodeKind::Face(f)));
        }
    }
    let mut flip_node: HashMap<OrientedTriangle, usize> = HashMap::new();
    let mut flips = Vec::new();
    for (&g, &(u, v)) in &across {
        let x = *sph.faces()[g]
            .iter()
            .find(|&&y| y != u && y != v)
            .expect("three vertices");
        if sph.is_edge(s, x) {
            return Err(WeightError::Structure(format!(
                "flipping {u}{v} around {s} would double the edge {s}{x}"
            )));
        }
        for t in [OrientedTriangle::new(s, u, x), OrientedTriangle::new(s, x, v)] {
            let id = net.add_node(NodeKind::Flip(t));
            flip_node.insert(t, id);
            flips.push((t, id));
        }
    }
    let node_of = |a: usize, b: usize| -> Result<usize, WeightError> {
        let f = face_of(a, b)?;
        Ok(match face_node.get(&f) {
            Some(&id) => id,
            None => flip_node[&OrientedTriangle::new(s, a, b)],
        })
    };

    let mut source_value = Rational::zero();
    for &(t, id) in &flips {
        let w = two_edge_weight(ctx, assignment, t)?;
        if w.is_negative() {
            return Err(WeightError::Structure(format!("flip triangle {t} has negative weight {w}")));
        }
        source_value += &w;
        net.add_arc(Arc {
            from: FlowNetwork::SOURCE,
            to: id,
            capacity: w,
            directed: true,
            kind: ArcKind::Source,
        });
    }
    net.source_value = source_value;

    let sink_vertices: Vec<usize> = {
        let mut vs: Vec<usize> = (0..sph.faces().len())
            .filter(|&f| !assignment.faces[f].is_one())
            .flat_map(|f| sph.faces()[f])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    };
    let (half, quarter) = (frac(1, 2), frac(1, 4));

    for u in 0..v_count {
        for &v in sph.neighbours(u) {
            if v < u || u == s || v == s {
                continue;
            }
            if contains_s(face_of(u, v)?) || contains_s(face_of(v, u)?) {
                continue; // a link edge, flipped away
            }
            let (nu, nv) = (node_of(u, v)?, node_of(v, u)?);
            let t = OrientedTriangle::new(s, u, v);
            let canon = t.canonical();
            let (class, odd) = ctx.class(canon);
            let mut arc = Arc {
                from: nu,
                to: nv,
                capacity: Rational::zero(),
                directed: true,
                kind: ArcKind::Dual { triangle: t, class },
            };
            match class {
                TriangleClass::TwoEdge => {
                    let w = two_edge_weight(ctx, assignment, t)?;
                    let is_flip = flip_node.contains_key(&t) || flip_node.contains_key(&-t);
                    if !w.is_zero() && !is_flip {
                        return Err(WeightError::Structure(format!(
                            "two-edge triangle {t} is not a flip triangle of {s} but weighs {w}"
                        )));
                    }
                    if w.is_negative() {
                        arc = reversed(arc, -t);
                    }
                    arc.capacity = w.abs();
                }
                TriangleClass::OneEdgeFlow => {
                    let d_src = sph.distance(s, u).min(sph.distance(s, v));
                    let d_sink = sink_vertices
                        .iter()
                        .map(|&p| sph.distance(p, u).min(sph.distance(p, v)))
                        .min()
                        .unwrap_or(usize::MAX);
                    let full = cfg.variant == Variant::Full;
                    let near = d_src <= cfg.c || (full && d_sink <= cfg.c);
                    let mid = d_src <= cfg.c_outer || (full && d_sink <= cfg.c_outer);
                    match ctx.chosen(canon) {
                        _ if ctx.is_flat(canon) => {}
                        Some(chosen) if mid => {
                            if chosen != t {
                                arc = reversed(arc, -t);
                            }
                            arc.capacity = if near { half.clone() } else { quarter.clone() };
                        }
                        _ => {
                            arc.directed = false;
                            arc.capacity = quarter.clone();
                        }
                    }
                }
                TriangleClass::Face | TriangleClass::ZeroEdgeInductive => {
                    debug_assert!(odd || class == TriangleClass::Face);
                }
            }
            net.add_arc(arc);
        }
    }

    for (&f, &id) in &face_node {
        let w = &assignment.faces[f];
        if w < &Rational::one() {
            net.add_arc(Arc {
                from: id,
                to: FlowNetwork::SINK,
                capacity: Rational::one() - w,
                directed: true,
                kind: ArcKind::Sink,
            });
        }
    }
    net.arcs.sort_by_key(|a| (a.from, a.to));
    Ok(net)
}

fn reversed(arc: Arc, triangle: OrientedTriangle) -> Arc {
    let ArcKind::Dual { class, .. } = arc.kind else {
        unreachable!("only dual arcs are reversed")
    };
    Arc {
        from: arc.to,
        to: arc.from,
        kind: ArcKind::Dual { triangle, class },
        ..arc
    }
}
