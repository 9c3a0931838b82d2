//! Simple polygons: CCW vertex lists without self-intersection.

use super::{orient, segments_intersect, Aabb, GeomError, Point, RegionLocation, Segment};
use crate::scalar::Scalar;

/// Simple polygon with counter-clockwise vertices.
///
/// Collinear runs of vertices are accepted; clockwise input is rejected, not
/// reversed, so callers keep control over vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon<S> {
    vertices: Vec<Point<S>>,
}

impl<S: Scalar> Polygon<S> {
    pub fn new(vertices: Vec<Point<S>>) -> Result<Self, GeomError> {
        validate_vertices(&vertices)?;
        Ok(Self { vertices })
    }

    /// Skips validation; for internally constructed vertex lists only.
    pub(crate) fn new_unchecked(vertices: Vec<Point<S>>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point<S>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> (Point<S>, Point<S>) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point<S>, Point<S>)> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    /// Shoelace area; positive because vertices are CCW.
    pub fn area(&self) -> S {
        signed_area(&self.vertices).abs()
    }

    pub fn centroid(&self) -> Point<S> {
        let mut cx = S::zero();
        let mut cy = S::zero();
        let mut a2 = S::zero();
        let n = self.vertices.len();
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let w = p.x * q.y - q.x * p.y;
            cx = cx + (p.x + q.x) * w;
            cy = cy + (p.y + q.y) * w;
            a2 = a2 + w;
        }
        if a2 == S::zero() {
            // Degenerate fallback: vertex average.
            let n_s = S::from_usize(n).unwrap();
            let (mut sx, mut sy) = (S::zero(), S::zero());
            for p in &self.vertices {
                sx = sx + p.x;
                sy = sy + p.y;
            }
            return Point { x: sx / n_s, y: sy / n_s };
        }
        let k = (S::of(3.0) * a2).recip();
        Point { x: cx * k, y: cy * k }
    }

    pub fn bbox(&self) -> Aabb<S> {
        Aabb::of_points(&self.vertices)
    }

    /// Even-odd interior test; points on the boundary are not classified
    /// reliably, use [`Polygon::locate`] for banded classification.
    pub fn contains_by_parity(&self, p: Point<S>) -> bool {
        let mut inside = false;
        let n = self.vertices.len();
        let mut j = n - 1;
        for i in 0..n {
            let vi = self.vertices[i];
            let vj = self.vertices[j];
            if (vi.y > p.y) != (vj.y > p.y) {
                let x_cross = vj.x + (vi.x - vj.x) * (p.y - vj.y) / (vi.y - vj.y);
                if p.x < x_cross {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }

    pub fn boundary_distance_to(&self, p: Point<S>) -> S {
        let mut best = S::infinity();
        for (a, b) in self.edges() {
            best = best.min(super::point_segment_distance(p, a, b));
        }
        best
    }

    /// Banded point classification: Boundary within `eps` of an edge.
    pub fn locate(&self, p: Point<S>, eps: S) -> RegionLocation {
        if self.boundary_distance_to(p) <= eps {
            RegionLocation::Boundary
        } else if self.contains_by_parity(p) {
            RegionLocation::Interior
        } else {
            RegionLocation::Exterior
        }
    }

    /// An interior point: the centroid when it tests inside, otherwise a
    /// point found by nudging off the first convex vertex.
    pub fn interior_point(&self) -> Point<S> {
        let c = self.centroid();
        if self.contains_by_parity(c) {
            return c;
        }
        // Midpoint of the diagonal of an ear whose midpoint is interior.
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 2) % n];
            let half = S::of(0.5);
            let m = Point { x: (a.x + b.x) * half, y: (a.y + b.y) * half };
            if self.contains_by_parity(m) {
                return m;
            }
        }
        c
    }
}

/// Twice the signed area: positive for CCW vertex order.
pub fn signed_area<S: Scalar>(vertices: &[Point<S>]) -> S {
    let mut a2 = S::zero();
    let n = vertices.len();
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        a2 = a2 + (p.x * q.y - q.x * p.y);
    }
    a2 * S::of(0.5)
}

/// Validates a vertex list as a simple CCW polygon.
///
/// Reports `CwOrientation` for clockwise or zero-area input and
/// `SelfIntersection { i, j }` with the first offending edge pair, where
/// edge `k` runs from vertex `k` to vertex `k + 1 mod n`.
pub fn validate_vertices<S: Scalar>(vertices: &[Point<S>]) -> Result<(), GeomError> {
    if vertices.len() < 3 {
        return Err(GeomError::TooFewVertices { got: vertices.len() });
    }
    for v in vertices {
        if !(v.x.is_finite() && v.y.is_finite()) {
            return Err(GeomError::NonFiniteCoordinate);
        }
    }
    let n = vertices.len();
    for i in 0..n {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue; // adjacent through the wraparound
            }
            let e1 = Segment { a: vertices[i], b: vertices[(i + 1) % n] };
            let e2 = Segment { a: vertices[j], b: vertices[(j + 1) % n] };
            if segments_intersect(&e1, &e2) {
                return Err(GeomError::SelfIntersection { i, j });
            }
        }
        // Repeated consecutive vertices collapse an edge.
        if vertices[i] == vertices[(i + 1) % n] {
            return Err(GeomError::SelfIntersection { i, j: (i + 1) % n });
        }
    }
    if signed_area(vertices) <= S::zero() {
        return Err(GeomError::CwOrientation);
    }
    // Adjacent edges may be collinear (collinear vertex runs are accepted)
    // but must not fold back onto each other.
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let c = vertices[(i + 2) % n];
        if orient(a, b, c) == S::zero() {
            let ab = b - a;
            let bc = c - b;
            if ab.dot(bc) < S::zero() {
                return Err(GeomError::SelfIntersection { i, j: (i + 1) % n });
            }
        }
    }
    Ok(())
}
