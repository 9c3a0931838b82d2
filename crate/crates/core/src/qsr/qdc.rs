//! Qualitative distance and relative size.

use crate::geom::{
    point_segment_distance, segment_segment_distance, Entity, Point, RegionLocation, Segment,
};
use crate::qsr::{DistanceRelation, QsrError, QualificationContext, Rcc8, SizeRelation};
use crate::scalar::Scalar;

/// Shortest distance between the boundaries of two entities, zero when they
/// overlap or touch.
///
/// Circle pairs are exact; everything else reduces to point and edge sets,
/// with discs polygonized at `ctx.circle_segments` sides.
pub fn boundary_gap<S: Scalar>(
    a: &Entity<S>,
    b: &Entity<S>,
    ctx: &QualificationContext<S>,
) -> Result<S, QsrError> {
    if let (Entity::Circle(ca), Entity::Circle(cb)) = (a, b) {
        let gap = ca.center.distance(cb.center) - ca.radius - cb.radius;
        return Ok(gap.max(S::zero()));
    }
    if a.kind().is_region() && b.kind().is_region() {
        let rel = crate::qsr::rcc8(a, b, ctx).expect("region kinds qualify");
        if rel != Rcc8::Dc {
            return Ok(S::zero());
        }
    } else if point_inside_region(a, b, ctx) || point_inside_region(b, a, ctx) {
        return Ok(S::zero());
    }
    let sa = shape_of(a, ctx);
    let sb = shape_of(b, ctx);
    Ok(shape_distance(&sa, &sb))
}

enum Shape<S: Scalar> {
    Single(Point<S>),
    Edges(Vec<Segment<S>>),
}

fn shape_of<S: Scalar>(e: &Entity<S>, ctx: &QualificationContext<S>) -> Shape<S> {
    match e {
        Entity::Point(p) => Shape::Single(*p),
        Entity::Segment(s) => Shape::Edges(vec![*s]),
        other => {
            let poly = other.region_polygon(ctx.circle_segments).expect("region kind");
            // Validated polygon edges have distinct endpoints.
            Shape::Edges(poly.edges().map(|(a, b)| Segment { a, b }).collect())
        }
    }
}

fn shape_distance<S: Scalar>(a: &Shape<S>, b: &Shape<S>) -> S {
    match (a, b) {
        (Shape::Single(p), Shape::Single(q)) => p.distance(*q),
        (Shape::Single(p), Shape::Edges(edges)) | (Shape::Edges(edges), Shape::Single(p)) => {
            let mut best = S::infinity();
            for e in edges {
                best = best.min(point_segment_distance(*p, e.a, e.b));
            }
            best
        }
        (Shape::Edges(ea), Shape::Edges(eb)) => {
            let mut best = S::infinity();
            for e1 in ea {
                for e2 in eb {
                    best = best.min(segment_segment_distance(e1, e2));
                }
            }
            best
        }
    }
}

/// True when `point` is a point entity lying inside the region `region`.
fn point_inside_region<S: Scalar>(
    point: &Entity<S>,
    region: &Entity<S>,
    ctx: &QualificationContext<S>,
) -> bool {
    let Entity::Point(p) = point else { return false };
    region
        .region_polygon(ctx.circle_segments)
        .map(|poly| poly.locate(*p, ctx.eps_contact) != RegionLocation::Exterior)
        .unwrap_or(false)
}

/// Buckets the boundary gap into `adjacent`, `near` or `far` using the
/// context thresholds.
pub fn qdc_distance<S: Scalar>(
    a: &Entity<S>,
    b: &Entity<S>,
    ctx: &QualificationContext<S>,
) -> Result<DistanceRelation, QsrError> {
    let gap = boundary_gap(a, b, ctx)?;
    if gap <= ctx.adjacent_threshold {
        Ok(DistanceRelation::Adjacent)
    } else if gap <= ctx.near_threshold {
        Ok(DistanceRelation::Near)
    } else {
        Ok(DistanceRelation::Far)
    }
}

/// Compares areas with relative tolerance `ctx.size_ratio_tol`.
///
/// The relative gap is `|area(a) - area(b)| / max(area(a), area(b))`, which
/// is undefined when both areas vanish: that case is [`QsrError::ZeroArea`].
/// A zero-area entity against a region compares as `smaller`.
pub fn size_relation<S: Scalar>(
    a: &Entity<S>,
    b: &Entity<S>,
    ctx: &QualificationContext<S>,
) -> Result<SizeRelation, QsrError> {
    let area_a = a.area();
    let area_b = b.area();
    let scale = area_a.max(area_b);
    if scale <= S::zero() {
        return Err(QsrError::ZeroArea);
    }
    if (area_a - area_b).abs() <= ctx.size_ratio_tol * scale {
        Ok(SizeRelation::EquiSized)
    } else if area_a < area_b {
        Ok(SizeRelation::Smaller)
    } else {
        Ok(SizeRelation::Larger)
    }
}
