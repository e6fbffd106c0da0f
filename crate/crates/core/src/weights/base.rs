use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::figure::{solve_figure_gap, FigureOutcome};
use super::{Variant, VariantConfig, WeightContext, WeightError};
use crate::lp::{frac, Rational};
use crate::model::OrientedTriangle;

/// Face weights plus any explicitly fixed two-edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    /// Outward weight of each sphere face, indexed like the sphere's faces.
    pub faces: Vec<Rational>,
    /// Two-edge weights in their chosen orientation, keyed by sorted triple.
    /// Triangles not listed follow the generic rule.
    pub two_edge: BTreeMap<[usize; 3], Rational>,
}

/// Weight 0 on faces whose three vertices lie within `r0` of one special
/// vertex, 1 elsewhere.
pub fn simplified_assignment(ctx: &WeightContext, cfg: &VariantConfig) -> Assignment {
    let s = ctx.sphere();
    let special = s.special_vertices();
    let faces = s
        .faces()
        .iter()
        .map(|face| {
            let near = special
                .iter()
                .any(|&z| face.iter().all(|&x| s.distance(z, x) <= cfg.r0));
            if near {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
        .collect();
    Assignment {
        faces,
        two_edge: BTreeMap::new(),
    }
}

/// Outward face weights for the configured variant.
pub fn base_weights(ctx: &WeightContext, cfg: &VariantConfig) -> Result<Vec<Rational>, WeightError> {
    match cfg.variant {
        Variant::Simplified => Ok(simplified_assignment(ctx, cfg).faces),
        Variant::Full => match solve_figure_gap(ctx, cfg)? {
            FigureOutcome::Found(sol) => Ok(sol.assignment.faces),
            FigureOutcome::Failed(fail) => Err(WeightError::SolverFailure(fail.to_string())),
        },
    }
}

/// Weight of a triangle with exactly two sphere edges, in the orientation
/// given.
///
/// Triangles with a degenerate region weigh 0. Otherwise an explicit entry
/// of `assignment` wins; failing that the weight is 1/2 when the region is
/// the two faces of a flip and both weigh 1, and 0 otherwise.
pub fn two_edge_weight(
    ctx: &WeightContext,
    assignment: &Assignment,
    tri: OrientedTriangle,
) -> Result<Rational, WeightError> {
    let t = tri.canonical();
    let edges = ctx.sphere().edges_in(t);
    if edges != 2 {
        return Err(WeightError::ClassMismatch {
            triangle: tri,
            edges,
            expected: 2,
        });
    }
    let Some(chosen) = ctx.chosen(t) else {
        return Ok(Rational::zero());
    };
    let value = match assignment.two_edge.get(&t) {
        Some(v) => v.clone(),
        None => generic_two_edge(ctx, assignment, t),
    };
    Ok(if chosen == tri { value } else { -value })
}

pub(crate) fn generic_two_edge(ctx: &WeightContext, assignment: &Assignment, t: [usize; 3]) -> Rational {
    let region = ctx.region(t);
    let supported = region.area() == 2 && region.faces().iter().all(|&f| assignment.faces[f].is_one());
    if supported {
        frac(1, 2)
    } else {
        Rational::zero()
    }
}
