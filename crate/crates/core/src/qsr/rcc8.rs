//! Mereotopology between plane regions.
//!
//! Three closed-form decision paths (circle/circle, box/box, polygon/polygon)
//! under one dispatcher. Mixed kinds are polygonized first, so every region
//! pair lands in exactly one base relation and converse coherence holds by
//! construction: each path is written in terms of argument-symmetric
//! primitives.

use crate::geom::{
    segment_segment_distance, Circle, Entity, Point, Polygon, RegionLocation, Segment,
};
use crate::qsr::{QsrError, QualificationContext, Rcc8, RelationFamily};
use crate::scalar::Scalar;

/// Classifies the mereotopology of two region entities.
///
/// Point and segment entities carry no area and are rejected with
/// [`QsrError::UnsupportedEntityPair`].
pub fn rcc8<S: Scalar>(
    a: &Entity<S>,
    b: &Entity<S>,
    ctx: &QualificationContext<S>,
) -> Result<Rcc8, QsrError> {
    if !a.kind().is_region() || !b.kind().is_region() {
        return Err(QsrError::UnsupportedEntityPair {
            a: a.kind(),
            b: b.kind(),
            family: RelationFamily::Mereotopology,
        });
    }
    match (a, b) {
        (Entity::Circle(ca), Entity::Circle(cb)) => Ok(circle_circle(ca, cb, ctx.eps_contact)),
        (Entity::AaRect(ra), Entity::AaRect(rb)) => Ok(box_box(
            ra.x_interval(),
            ra.y_interval(),
            rb.x_interval(),
            rb.y_interval(),
            ctx.eps_contact,
        )),
        _ => {
            let pa = a.region_polygon(ctx.circle_segments).expect("region kind polygonizes");
            let pb = b.region_polygon(ctx.circle_segments).expect("region kind polygonizes");
            Ok(polygon_polygon(&pa, &pb, ctx.eps_contact))
        }
    }
}

/// Exact path for two discs, decided purely from center distance and radii.
pub fn circle_circle<S: Scalar>(a: &Circle<S>, b: &Circle<S>, eps: S) -> Rcc8 {
    let d = a.center.distance(b.center);
    if d <= eps && (a.radius - b.radius).abs() <= eps {
        return Rcc8::Eq;
    }
    let gap = d - (a.radius + b.radius);
    if gap > eps {
        return Rcc8::Dc;
    }
    if gap >= -eps {
        return Rcc8::Ec;
    }
    // Overlapping interiors from here on; check containment both ways.
    let slack_ab = (b.radius - a.radius) - d;
    if slack_ab > eps {
        return Rcc8::Ntpp;
    }
    if slack_ab >= -eps {
        return Rcc8::Tpp;
    }
    let slack_ba = (a.radius - b.radius) - d;
    if slack_ba > eps {
        return Rcc8::Ntppi;
    }
    if slack_ba >= -eps {
        return Rcc8::Tppi;
    }
    Rcc8::Po
}

/// Exact path for two axis-aligned boxes given as per-axis intervals.
pub fn box_box<S: Scalar>(ax: (S, S), ay: (S, S), bx: (S, S), by: (S, S), eps: S) -> Rcc8 {
    let gap_x = (bx.0 - ax.1).max(ax.0 - bx.1);
    let gap_y = (by.0 - ay.1).max(ay.0 - by.1);
    let gap = gap_x.max(gap_y);
    if gap > eps {
        return Rcc8::Dc;
    }
    if gap >= -eps {
        return Rcc8::Ec;
    }
    let same = (ax.0 - bx.0).abs() <= eps
        && (ax.1 - bx.1).abs() <= eps
        && (ay.0 - by.0).abs() <= eps
        && (ay.1 - by.1).abs() <= eps;
    if same {
        return Rcc8::Eq;
    }
    // Tightest margin of a inside b; positive everywhere means proper part.
    let margin_ab =
        (ax.0 - bx.0).min(bx.1 - ax.1).min(ay.0 - by.0).min(by.1 - ay.1);
    if margin_ab > eps {
        return Rcc8::Ntpp;
    }
    if margin_ab >= -eps {
        return Rcc8::Tpp;
    }
    let margin_ba =
        (bx.0 - ax.0).min(ax.1 - bx.1).min(by.0 - ay.0).min(ay.1 - by.1);
    if margin_ba > eps {
        return Rcc8::Ntppi;
    }
    if margin_ba >= -eps {
        return Rcc8::Tppi;
    }
    Rcc8::Po
}

/// General path for two simple polygons.
pub fn polygon_polygon<S: Scalar>(a: &Polygon<S>, b: &Polygon<S>, eps: S) -> Rcc8 {
    if boundaries_properly_cross(a, b) {
        return Rcc8::Po;
    }
    let a_in_b = contained(a, b, eps);
    let b_in_a = contained(b, a, eps);
    let touch = boundaries_touch(a, b, eps);
    match (a_in_b, b_in_a) {
        (true, true) => Rcc8::Eq,
        (true, false) => {
            if touch {
                Rcc8::Tpp
            } else {
                Rcc8::Ntpp
            }
        }
        (false, true) => {
            if touch {
                Rcc8::Tppi
            } else {
                Rcc8::Ntppi
            }
        }
        (false, false) => {
            if touch {
                // Boundaries meet without crossing and neither side is
                // contained: exterior contact.
                Rcc8::Ec
            } else if a.locate(b.interior_point(), eps) == RegionLocation::Interior
                || b.locate(a.interior_point(), eps) == RegionLocation::Interior
            {
                // Interior probes catch overlap whose crossings were all
                // within eps of tangency.
                Rcc8::Po
            } else {
                Rcc8::Dc
            }
        }
    }
}

/// Polygon edges have distinct validated endpoints, so literal construction
/// is safe here.
fn edge_segment<S: Scalar>(e: (Point<S>, Point<S>)) -> Segment<S> {
    Segment { a: e.0, b: e.1 }
}

/// True when some edge of `a` strictly crosses some edge of `b`.
fn boundaries_properly_cross<S: Scalar>(a: &Polygon<S>, b: &Polygon<S>) -> bool {
    if a.bbox().gap(&b.bbox()) > S::zero() {
        return false;
    }
    for ea in a.edges() {
        for eb in b.edges() {
            if crate::geom::segments_properly_cross(&edge_segment(ea), &edge_segment(eb)) {
                return true;
            }
        }
    }
    false
}

/// True when the boundaries come within `eps` of each other.
fn boundaries_touch<S: Scalar>(a: &Polygon<S>, b: &Polygon<S>, eps: S) -> bool {
    if a.bbox().gap(&b.bbox()) > eps {
        return false;
    }
    for ea in a.edges() {
        for eb in b.edges() {
            if segment_segment_distance(&edge_segment(ea), &edge_segment(eb)) <= eps {
                return true;
            }
        }
    }
    false
}

/// True when every vertex of `inner` lies inside `outer` or within `eps` of
/// its boundary, and no edge of `inner` escapes.
fn contained<S: Scalar>(inner: &Polygon<S>, outer: &Polygon<S>, eps: S) -> bool {
    for &v in inner.vertices() {
        if vertex_escapes(v, outer, eps) {
            return false;
        }
    }
    // Vertices inside is not enough: an edge of `inner` could still dip
    // outside through a concavity of `outer`. Proper crossings are handled
    // by the caller, so only edge midpoints of near-tangent runs remain.
    for (p, q) in inner.edges() {
        let mid = Point::raw(
            (p.x + q.x) / S::of(2.0),
            (p.y + q.y) / S::of(2.0),
        );
        if vertex_escapes(mid, outer, eps) {
            return false;
        }
    }
    true
}

fn vertex_escapes<S: Scalar>(v: Point<S>, outer: &Polygon<S>, eps: S) -> bool {
    match outer.locate(v, eps) {
        RegionLocation::Interior | RegionLocation::Boundary => false,
        RegionLocation::Exterior => true,
    }
}
