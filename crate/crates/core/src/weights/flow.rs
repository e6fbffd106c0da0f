use std::collections::VecDeque;
use std::fmt::Write;

use num_traits::{Signed, Zero};

use super::TriangleClass;
use crate::lp::{format_rational, Rational};
use crate::model::OrientedTriangle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Source,
    Sink,
    /// A sphere face that survives the flips around the source vertex.
    Face(usize),
    /// A triangle created by flipping an edge opposite the source vertex.
    Flip(OrientedTriangle),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcKind {
    Source,
    Sink,
    /// Crosses a sphere edge `uv`; positive flow from `from` to `to` is the
    /// weight of `triangle`, which is `(s, u, v)` in that orientation.
    Dual {
        triangle: OrientedTriangle,
        class: TriangleClass,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: Rational,
    /// Undirected arcs carry up to `capacity` either way.
    pub directed: bool,
    pub kind: ArcKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    pub nodes: Vec<NodeKind>,
    pub arcs: Vec<Arc>,
    /// Total weight the source must push out.
    pub source_value: Rational,
}

impl FlowNetwork {
    pub const SOURCE: usize = 0;
    pub const SINK: usize = 1;

    pub fn new() -> Self {
        Self {
            nodes: vec![NodeKind::Source, NodeKind::Sink],
            arcs: Vec::new(),
            source_value: Rational::zero(),
        }
    }

    pub fn add_node(&mut self, kind: NodeKind) -> usize {
        self.nodes.push(kind);
        self.nodes.len() - 1
    }

    pub fn add_arc(&mut self, arc: Arc) -> usize {
        debug_assert!(!arc.capacity.is_negative());
        self.arcs.push(arc);
        self.arcs.len() - 1
    }

    /// Capacities and directions as a DOT digraph; undirected arcs are drawn
    /// without arrowheads.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph flow {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let label = match node {
                NodeKind::Source => "s0".to_string(),
                NodeKind::Sink => "t0".to_string(),
                NodeKind::Face(f) => format!("f{f}"),
                NodeKind::Flip(t) => format!("flip {t}"),
            };
            let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
        }
        for arc in &self.arcs {
            let style = if arc.directed { "" } else { ", dir=none" };
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"{style}];",
                arc.from,
                arc.to,
                format_rational(&arc.capacity)
            );
        }
        out.push_str("}\n");
        out
    }
}

impl Default for FlowNetwork {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub value: Rational,
    /// Net flow along each arc from `from` to `to`; negative only on
    /// undirected arcs.
    pub arc_flow: Vec<Rational>,
    /// Nodes reachable from the source in the final residual graph.
    pub source_side: Vec<bool>,
    /// Arcs crossing the minimum cut.
    pub min_cut: Vec<usize>,
}

impl FlowResult {
    /// Whether the flow absorbs the whole source value.
    pub fn saturates(&self, net: &FlowNetwork) -> bool {
        self.value == net.source_value
    }

    /// Capacity of the reported cut, counted in the source-to-sink direction.
    pub fn cut_capacity(&self, net: &FlowNetwork) -> Rational {
        self.min_cut.iter().map(|&a| net.arcs[a].capacity.clone()).sum()
    }

    /// Net outflow minus inflow at `node`.
    pub fn excess(&self, net: &FlowNetwork, node: usize) -> Rational {
        let mut total = Rational::zero();
        for (arc, f) in net.arcs.iter().zip(&self.arc_flow) {
            if arc.from == node {
                total += f;
            }
            if arc.to == node {
                total -= f;
            }
        }
        total
    }
}

/// Exact maximum flow by shortest augmenting paths. Each arc keeps one net
/// flow `x`; its forward residual is `capacity - x` and its backward
/// residual is `x`, plus `capacity` when undirected.
pub fn max_flow(net: &FlowNetwork) -> FlowResult {
    let m = net.arcs.len();
    let nodes = net.nodes.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (i, arc) in net.arcs.iter().enumerate() {
        adj[arc.from].push(i);
        adj[arc.to].push(i);
    }
    let mut flow = vec![Rational::zero(); m];
    let residual = |flow: &[Rational], i: usize, forward: bool| -> Rational {
        let arc = &net.arcs[i];
        if forward {
            &arc.capacity - &flow[i]
        } else if arc.directed {
            flow[i].clone()
        } else {
            &arc.capacity + &flow[i]
        }
    };
    let mut value = Rational::zero();
    loop {
        // BFS for a shortest augmenting path.
        let mut prev: Vec<Option<(usize, bool)>> = vec![None; nodes];
        let mut seen = vec![false; nodes];
        seen[FlowNetwork::SOURCE] = true;
        let mut queue = VecDeque::from([FlowNetwork::SOURCE]);
        while let Some(u) = queue.pop_front() {
            if u == FlowNetwork::SINK {
                break;
            }
            for &i in &adj[u] {
                let arc = &net.arcs[i];
                let (v, forward) = if arc.from == u { (arc.to, true) } else { (arc.from, false) };
                if !seen[v] && residual(&flow, i, forward).is_positive() {
                    seen[v] = true;
                    prev[v] = Some((i, forward));
                    queue.push_back(v);
                }
            }
        }
        if !seen[FlowNetwork::SINK] {
            let min_cut = net
                .arcs
                .iter()
                .enumerate()
                .filter(|(_, a)| {
                    (seen[a.from] && !seen[a.to]) || (!a.directed && seen[a.to] && !seen[a.from])
                })
                .map(|(i, _)| i)
                .collect();
            return FlowResult {
                value,
                arc_flow: flow,
                source_side: seen,
                min_cut,
            };
        }
        let mut path = Vec::new();
        let mut v = FlowNetwork::SINK;
        while let Some((i, forward)) = prev[v] {
            path.push((i, forward));
            let arc = &net.arcs[i];
            v = if forward { arc.from } else { arc.to };
        }
        let delta = path
            .iter()
            .map(|&(i, forward)| residual(&flow, i, forward))
            .min()
            .expect("non-empty path");
        for (i, forward) in path {
            if forward {
                flow[i] += &delta;
            } else {
                flow[i] -= &delta;
            }
        }
        value += delta;
    }
}
