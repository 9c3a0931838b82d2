//! Uniform entity wrapper and axis-aligned bounds.

use super::{AaRect, Circle, OrientedRect, Point, Polygon, Segment};
use crate::scalar::Scalar;

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb<S> {
    pub min: Point<S>,
    pub max: Point<S>,
}

impl<S: Scalar> Aabb<S> {
    pub fn of_points(points: &[Point<S>]) -> Self {
        let mut min = Point { x: S::infinity(), y: S::infinity() };
        let mut max = Point { x: S::neg_infinity(), y: S::neg_infinity() };
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        Self { min, max }
    }

    pub fn union(self, other: Self) -> Self {
        Self {
            min: Point { x: self.min.x.min(other.min.x), y: self.min.y.min(other.min.y) },
            max: Point { x: self.max.x.max(other.max.x), y: self.max.y.max(other.max.y) },
        }
    }

    pub fn width(&self) -> S {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> S {
        self.max.y - self.min.y
    }

    /// Smallest distance between two boxes, 0 when they touch or overlap.
    pub fn gap(&self, other: &Self) -> S {
        let z = S::zero();
        let gx = (other.min.x - self.max.x).max(self.min.x - other.max.x).max(z);
        let gy = (other.min.y - self.max.y).max(self.min.y - other.max.y).max(z);
        (gx * gx + gy * gy).sqrt()
    }
}

/// Kind tag for [`Entity`], independent of the scalar type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EntityKind {
    Point,
    Segment,
    OrientedRect,
    AaRect,
    Circle,
    Polygon,
}

impl EntityKind {
    /// Entity kinds with two-dimensional extent.
    pub fn is_region(self) -> bool {
        matches!(
            self,
            EntityKind::OrientedRect | EntityKind::AaRect | EntityKind::Circle | EntityKind::Polygon
        )
    }
}

/// Any supported planar entity.
#[derive(Debug, Clone, PartialEq)]
pub enum Entity<S> {
    Point(Point<S>),
    Segment(Segment<S>),
    OrientedRect(OrientedRect<S>),
    AaRect(AaRect<S>),
    Circle(Circle<S>),
    Polygon(Polygon<S>),
}

impl<S: Scalar> Entity<S> {
    pub fn kind(&self) -> EntityKind {
        match self {
            Entity::Point(_) => EntityKind::Point,
            Entity::Segment(_) => EntityKind::Segment,
            Entity::OrientedRect(_) => EntityKind::OrientedRect,
            Entity::AaRect(_) => EntityKind::AaRect,
            Entity::Circle(_) => EntityKind::Circle,
            Entity::Polygon(_) => EntityKind::Polygon,
        }
    }

    /// Area; 0 for points and segments.
    pub fn area(&self) -> S {
        match self {
            Entity::Point(_) | Entity::Segment(_) => S::zero(),
            Entity::OrientedRect(r) => r.area(),
            Entity::AaRect(r) => r.area(),
            Entity::Circle(c) => c.area(),
            Entity::Polygon(p) => p.area(),
        }
    }

    pub fn centroid(&self) -> Point<S> {
        match self {
            Entity::Point(p) => *p,
            Entity::Segment(s) => s.midpoint(),
            Entity::OrientedRect(r) => r.centroid(),
            Entity::AaRect(r) => r.centroid(),
            Entity::Circle(c) => c.center,
            Entity::Polygon(p) => p.centroid(),
        }
    }

    pub fn bbox(&self) -> Aabb<S> {
        match self {
            Entity::Point(p) => Aabb { min: *p, max: *p },
            Entity::Segment(s) => Aabb::of_points(&[s.a, s.b]),
            Entity::OrientedRect(r) => Aabb::of_points(&r.corners()),
            Entity::AaRect(r) => Aabb::of_points(&r.corners()),
            Entity::Circle(c) => Aabb {
                min: Point { x: c.center.x - c.radius, y: c.center.y - c.radius },
                max: Point { x: c.center.x + c.radius, y: c.center.y + c.radius },
            },
            Entity::Polygon(p) => p.bbox(),
        }
    }

    /// Polygonal view of a region entity; circles become inscribed
    /// `circle_segments`-gons. `None` for points and segments.
    pub fn region_polygon(&self, circle_segments: usize) -> Option<Polygon<S>> {
        match self {
            Entity::Point(_) | Entity::Segment(_) => None,
            Entity::OrientedRect(r) => Some(Polygon::new_unchecked(r.corners().to_vec())),
            Entity::AaRect(r) => Some(Polygon::new_unchecked(r.corners().to_vec())),
            Entity::Circle(c) => Some(c.to_polygon(circle_segments)),
            Entity::Polygon(p) => Some(p.clone()),
        }
    }
}
