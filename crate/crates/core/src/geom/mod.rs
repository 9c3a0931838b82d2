//! Planar geometric entities and exact predicates.
//!
//! Constructors validate invariants (finiteness, positive extents, CCW simple
//! polygons) and return [`GeomError`] on violation. Predicates that admit a
//! tolerance take an explicit `eps`; everything else uses exact floating-point
//! comparisons.

use crate::scalar::Scalar;
use thiserror::Error;

mod entity;
mod polygon;

pub use entity::{Aabb, Entity, EntityKind};
pub use polygon::Polygon;

/// Invariant violations raised by entity constructors and validators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("coordinate is not finite")]
    NonFiniteCoordinate,
    #[error("direction vector has zero length")]
    ZeroDirectionVector,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("{what} must be positive")]
    NonPositiveExtent { what: &'static str },
    #[error("polygon needs at least 3 vertices, got {got}")]
    TooFewVertices { got: usize },
    #[error("polygon vertices are clockwise or degenerate")]
    CwOrientation,
    #[error("polygon edges {i} and {j} intersect")]
    SelfIntersection { i: usize, j: usize },
}

/// Classification of a point against a region with an `eps` boundary band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionLocation {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vector<S> {
    pub dx: S,
    pub dy: S,
}

/// A point with a nonzero direction, e.g. a person position with a facing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedPoint<S> {
    pub pos: Point<S>,
    pub dir: Vector<S>,
}

/// Line segment with distinct endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment<S> {
    pub a: Point<S>,
    pub b: Point<S>,
}

/// Rectangle with an arbitrary base direction, extending toward the left
/// normal of `base`. `base` is unit length after construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedRect<S> {
    pub origin: Point<S>,
    pub base: Vector<S>,
    pub width: S,
    pub height: S,
}

/// Axis-aligned rectangle given by its lower-left corner and extents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AaRect<S> {
    pub x: S,
    pub y: S,
    pub w: S,
    pub h: S,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle<S> {
    pub center: Point<S>,
    pub radius: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Result<Self, GeomError> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(GeomError::NonFiniteCoordinate)
        }
    }

    pub fn raw(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn to_vector(self) -> Vector<S> {
        Vector { dx: self.x, dy: self.y }
    }

    pub fn distance(self, other: Self) -> S {
        (self - other).norm()
    }
}

/// Difference of points is the displacement from `rhs` to `self`.
impl<S: Scalar> std::ops::Sub for Point<S> {
    type Output = Vector<S>;

    fn sub(self, rhs: Self) -> Vector<S> {
        Vector { dx: self.x - rhs.x, dy: self.y - rhs.y }
    }
}

impl<S: Scalar> std::ops::Add<Vector<S>> for Point<S> {
    type Output = Point<S>;

    fn add(self, v: Vector<S>) -> Point<S> {
        Point { x: self.x + v.dx, y: self.y + v.dy }
    }
}

impl<S: Scalar> std::ops::Neg for Vector<S> {
    type Output = Vector<S>;

    fn neg(self) -> Vector<S> {
        Vector { dx: -self.dx, dy: -self.dy }
    }
}

impl<S: Scalar> Vector<S> {
    pub fn new(dx: S, dy: S) -> Result<Self, GeomError> {
        if dx.is_finite() && dy.is_finite() {
            Ok(Self { dx, dy })
        } else {
            Err(GeomError::NonFiniteCoordinate)
        }
    }

    pub fn raw(dx: S, dy: S) -> Self {
        Self { dx, dy }
    }

    pub fn dot(self, other: Self) -> S {
        self.dx * other.dx + self.dy * other.dy
    }

    pub fn cross(self, other: Self) -> S {
        self.dx * other.dy - self.dy * other.dx
    }

    pub fn norm(self) -> S {
        self.dot(self).sqrt()
    }

    pub fn scale(self, k: S) -> Self {
        Self { dx: self.dx * k, dy: self.dy * k }
    }

    /// Left normal: `base` rotated 90 degrees counter-clockwise.
    pub fn perp(self) -> Self {
        Self { dx: -self.dy, dy: self.dx }
    }

    pub fn normalize(self) -> Result<Self, GeomError> {
        let n = self.norm();
        if !n.is_finite() || n <= S::zero() {
            return Err(GeomError::ZeroDirectionVector);
        }
        Ok(self.scale(n.recip()))
    }

    /// Unsigned angle to `other` in `[0, pi]`.
    pub fn angle_to(self, other: Self) -> S {
        self.cross(other).abs().atan2(self.dot(other))
    }
}

/// Projection of the position vector of `p` onto `v`.
pub fn dot<S: Scalar>(p: Point<S>, v: Vector<S>) -> S {
    p.to_vector().dot(v)
}

impl<S: Scalar> OrientedPoint<S> {
    pub fn new(pos: Point<S>, dir: Vector<S>) -> Result<Self, GeomError> {
        Point::new(pos.x, pos.y)?;
        let n = dir.norm();
        if !n.is_finite() || n <= S::zero() {
            return Err(GeomError::ZeroDirectionVector);
        }
        Ok(Self { pos, dir })
    }
}

impl<S: Scalar> Segment<S> {
    pub fn new(a: Point<S>, b: Point<S>) -> Result<Self, GeomError> {
        Point::new(a.x, a.y)?;
        Point::new(b.x, b.y)?;
        if a == b {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Self { a, b })
    }

    pub fn length(&self) -> S {
        self.a.distance(self.b)
    }

    pub fn midpoint(&self) -> Point<S> {
        let half = S::of(0.5);
        Point { x: (self.a.x + self.b.x) * half, y: (self.a.y + self.b.y) * half }
    }

    pub fn direction(&self) -> Vector<S> {
        self.b - self.a
    }
}

impl<S: Scalar> OrientedRect<S> {
    /// Normalizes `base`; the rectangle spans `width` along `base` and
    /// `height` along its left normal.
    pub fn new(origin: Point<S>, base: Vector<S>, width: S, height: S) -> Result<Self, GeomError> {
        Point::new(origin.x, origin.y)?;
        let base = base.normalize()?;
        if !(width.is_finite() && width > S::zero()) {
            return Err(GeomError::NonPositiveExtent { what: "width" });
        }
        if !(height.is_finite() && height > S::zero()) {
            return Err(GeomError::NonPositiveExtent { what: "height" });
        }
        Ok(Self { origin, base, width, height })
    }

    /// Corners in CCW order starting at `origin`.
    pub fn corners(&self) -> [Point<S>; 4] {
        let along = self.base.scale(self.width);
        let up = self.base.perp().scale(self.height);
        [self.origin, self.origin + along, self.origin + along + up, self.origin + up]
    }

    /// Coordinates of `p` in the rectangle frame: distance along `base` and
    /// along its left normal.
    pub fn local_coords(&self, p: Point<S>) -> (S, S) {
        let d = p - self.origin;
        (d.dot(self.base), d.dot(self.base.perp()))
    }

    pub fn area(&self) -> S {
        self.width * self.height
    }

    pub fn centroid(&self) -> Point<S> {
        let half = S::of(0.5);
        let along = self.base.scale(self.width * half);
        let up = self.base.perp().scale(self.height * half);
        self.origin + along + up
    }
}

impl<S: Scalar> AaRect<S> {
    pub fn new(x: S, y: S, w: S, h: S) -> Result<Self, GeomError> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(GeomError::NonFiniteCoordinate);
        }
        if !(w.is_finite() && w > S::zero()) {
            return Err(GeomError::NonPositiveExtent { what: "width" });
        }
        if !(h.is_finite() && h > S::zero()) {
            return Err(GeomError::NonPositiveExtent { what: "height" });
        }
        Ok(Self { x, y, w, h })
    }

    pub fn x_interval(&self) -> (S, S) {
        (self.x, self.x + self.w)
    }

    pub fn y_interval(&self) -> (S, S) {
        (self.y, self.y + self.h)
    }

    pub fn corners(&self) -> [Point<S>; 4] {
        [
            Point { x: self.x, y: self.y },
            Point { x: self.x + self.w, y: self.y },
            Point { x: self.x + self.w, y: self.y + self.h },
            Point { x: self.x, y: self.y + self.h },
        ]
    }

    pub fn area(&self) -> S {
        self.w * self.h
    }

    pub fn centroid(&self) -> Point<S> {
        let half = S::of(0.5);
        Point { x: self.x + self.w * half, y: self.y + self.h * half }
    }

    /// Closed-box membership, no tolerance.
    pub fn contains(&self, p: Point<S>) -> bool {
        p.x >= self.x && p.x <= self.x + self.w && p.y >= self.y && p.y <= self.y + self.h
    }
}

impl<S: Scalar> Circle<S> {
    pub fn new(center: Point<S>, radius: S) -> Result<Self, GeomError> {
        Point::new(center.x, center.y)?;
        if !(radius.is_finite() && radius > S::zero()) {
            return Err(GeomError::NonPositiveExtent { what: "radius" });
        }
        Ok(Self { center, radius })
    }

    pub fn area(&self) -> S {
        S::PI() * self.radius * self.radius
    }

    /// Inscribed regular `n`-gon, CCW, first vertex at angle 0.
    pub fn to_polygon(&self, n: usize) -> Polygon<S> {
        let n = n.max(3);
        let mut vs = Vec::with_capacity(n);
        let tau = S::PI() + S::PI();
        for k in 0..n {
            let t = tau * S::from_usize(k).unwrap() / S::from_usize(n).unwrap();
            vs.push(Point {
                x: self.center.x + self.radius * t.cos(),
                y: self.center.y + self.radius * t.sin(),
            });
        }
        Polygon::new_unchecked(vs)
    }
}

/// Twice the signed area of triangle `a b c`; positive when `c` lies to the
/// left of the directed line `a -> b`.
pub fn orient<S: Scalar>(a: Point<S>, b: Point<S>, c: Point<S>) -> S {
    (b - a).cross(c - a)
}

fn on_segment<S: Scalar>(p: Point<S>, q: Point<S>, r: Point<S>) -> bool {
    // Assumes p, q, r collinear; is q within the bounding box of p..r?
    q.x >= p.x.min(r.x) && q.x <= p.x.max(r.x) && q.y >= p.y.min(r.y) && q.y <= p.y.max(r.y)
}

/// Closed intersection test: touching endpoints and collinear overlap count.
pub fn segments_intersect<S: Scalar>(s1: &Segment<S>, s2: &Segment<S>) -> bool {
    let (p1, p2) = (s1.a, s1.b);
    let (q1, q2) = (s2.a, s2.b);
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    let z = S::zero();
    if ((d1 > z && d2 < z) || (d1 < z && d2 > z)) && ((d3 > z && d4 < z) || (d3 < z && d4 > z)) {
        return true;
    }
    (d1 == z && on_segment(q1, p1, q2))
        || (d2 == z && on_segment(q1, p2, q2))
        || (d3 == z && on_segment(p1, q1, p2))
        || (d4 == z && on_segment(p1, q2, p2))
}

/// Strict transversal crossing: one interior point in common, no touches.
pub fn segments_properly_cross<S: Scalar>(s1: &Segment<S>, s2: &Segment<S>) -> bool {
    let d1 = orient(s2.a, s2.b, s1.a);
    let d2 = orient(s2.a, s2.b, s1.b);
    let d3 = orient(s1.a, s1.b, s2.a);
    let d4 = orient(s1.a, s1.b, s2.b);
    let z = S::zero();
    ((d1 > z && d2 < z) || (d1 < z && d2 > z)) && ((d3 > z && d4 < z) || (d3 < z && d4 > z))
}

/// Distance from `p` to the closed segment `a..b`.
pub fn point_segment_distance<S: Scalar>(p: Point<S>, a: Point<S>, b: Point<S>) -> S {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 <= S::zero() {
        return p.distance(a);
    }
    let t = (p - a).dot(ab) / len2;
    let t = t.max(S::zero()).min(S::one());
    p.distance(a + ab.scale(t))
}

/// Minimum distance between two closed segments (0 when they intersect).
pub fn segment_segment_distance<S: Scalar>(s1: &Segment<S>, s2: &Segment<S>) -> S {
    if segments_intersect(s1, s2) {
        return S::zero();
    }
    point_segment_distance(s1.a, s2.a, s2.b)
        .min(point_segment_distance(s1.b, s2.a, s2.b))
        .min(point_segment_distance(s2.a, s1.a, s1.b))
        .min(point_segment_distance(s2.b, s1.a, s1.b))
}

/// Classifies `p` against an oriented rectangle with an `eps` boundary band.
///
/// Exterior wins when `p` lies more than `eps` outside; otherwise a point
/// within `eps` of an edge is Boundary, and everything else Interior.
pub fn point_in_rect<S: Scalar>(p: Point<S>, r: &OrientedRect<S>, eps: S) -> RegionLocation {
    let (u, v) = r.local_coords(p);
    classify_box_coords(u, v, r.width, r.height, eps)
}

/// Same classification for an axis-aligned rectangle.
pub fn point_in_aarect<S: Scalar>(p: Point<S>, r: &AaRect<S>, eps: S) -> RegionLocation {
    classify_box_coords(p.x - r.x, p.y - r.y, r.w, r.h, eps)
}

fn classify_box_coords<S: Scalar>(u: S, v: S, w: S, h: S, eps: S) -> RegionLocation {
    let z = S::zero();
    if u < z - eps || u > w + eps || v < z - eps || v > h + eps {
        return RegionLocation::Exterior;
    }
    if u <= eps || u >= w - eps || v <= eps || v >= h - eps {
        return RegionLocation::Boundary;
    }
    RegionLocation::Interior
}

/// Classifies `p` against a circle with an `eps` band around the rim.
pub fn point_in_circle<S: Scalar>(p: Point<S>, c: &Circle<S>, eps: S) -> RegionLocation {
    let d = p.distance(c.center);
    if d > c.radius + eps {
        RegionLocation::Exterior
    } else if d >= c.radius - eps {
        RegionLocation::Boundary
    } else {
        RegionLocation::Interior
    }
}
