//! Batch qualification of whole scenes.

use crate::geom::{Entity, OrientedPoint, RegionLocation, Vector};
use crate::qsr::{
    lr, orientation_relation, qdc_distance, rcc8, size_relation, ObjectId, OccupancyRelation,
    QsrError, QualificationContext, RelationFamily, RelationSymbol, RelationTuple,
};
use crate::scalar::Scalar;

/// A named entity in a scene, optionally with a facing direction.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneObject<S> {
    pub id: ObjectId,
    pub entity: Entity<S>,
    pub facing: Option<Vector<S>>,
}

impl<S: Scalar> SceneObject<S> {
    pub fn new(id: impl Into<ObjectId>, entity: Entity<S>) -> Self {
        Self { id: id.into(), entity, facing: None }
    }

    pub fn with_facing(mut self, facing: Vector<S>) -> Self {
        self.facing = Some(facing);
        self
    }

    /// The object reduced to an oriented point at its centroid, when it has
    /// a facing direction.
    fn oriented_point(&self) -> Option<Result<OrientedPoint<S>, QsrError>> {
        let dir = self.facing?;
        Some(OrientedPoint::new(self.entity.centroid(), dir).map_err(|_| QsrError::DegenerateAxis))
    }
}

/// A pair the qualifier attempted but could not relate, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedPair {
    pub a: ObjectId,
    pub b: ObjectId,
    pub family: RelationFamily,
    pub error: QsrError,
}

/// The result of qualifying a scene: facts plus diagnostics.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Qualification {
    pub tuples: Vec<RelationTuple>,
    pub skipped: Vec<SkippedPair>,
}

impl Qualification {
    fn emit(&mut self, symbol: RelationSymbol, a: &SceneObject<impl Scalar>, b: &SceneObject<impl Scalar>) {
        self.tuples.push(RelationTuple::new(symbol, a.id.clone(), b.id.clone()));
    }

    fn skip(
        &mut self,
        family: RelationFamily,
        error: QsrError,
        a: &SceneObject<impl Scalar>,
        b: &SceneObject<impl Scalar>,
    ) {
        self.skipped.push(SkippedPair { a: a.id.clone(), b: b.id.clone(), family, error });
    }
}

/// Qualifies every ordered pair of distinct objects under the requested
/// families.
///
/// The static families are mereotopology, orientation, distance, size and
/// occupancy; interval and motion need temporal data and produce nothing
/// here. Under orientation, a pair with a segment-kind first argument gets a
/// relative-direction fact (`left(axis, obj)` places `obj` left of the
/// directed axis), and a pair where both objects have facing directions gets
/// the facing relations of their centroid points. Occupancy holds when a
/// point-kind object lies in a region-kind object. Pairs a family cannot
/// relate are recorded in `skipped`; combinations the family does not speak
/// about at all (objects without facing directions, non-point first
/// arguments for occupancy) produce neither a tuple nor a skip.
///
/// The output is deterministic: objects are visited in id order and
/// families in declaration order.
pub fn qualify_scene<S: Scalar>(
    objects: &[SceneObject<S>],
    families: &[RelationFamily],
    ctx: &QualificationContext<S>,
) -> Qualification {
    let mut sorted: Vec<&SceneObject<S>> = objects.iter().collect();
    sorted.sort_by(|x, y| x.id.cmp(&y.id));

    let mut out = Qualification::default();
    for a in &sorted {
        for b in &sorted {
            if a.id == b.id {
                continue;
            }
            for family in RelationFamily::ALL {
                if !families.contains(&family) {
                    continue;
                }
                qualify_pair(a, b, family, ctx, &mut out);
            }
        }
    }
    out
}

fn qualify_pair<S: Scalar>(
    a: &SceneObject<S>,
    b: &SceneObject<S>,
    family: RelationFamily,
    ctx: &QualificationContext<S>,
    out: &mut Qualification,
) {
    match family {
        RelationFamily::Mereotopology => match rcc8(&a.entity, &b.entity, ctx) {
            Ok(r) => out.emit(RelationSymbol::Mereotopology(r), a, b),
            Err(e) => out.skip(family, e, a, b),
        },
        RelationFamily::Orientation => {
            if let Entity::Segment(axis) = &a.entity {
                match lr(axis.a, axis.b, b.entity.centroid(), ctx.eps_contact) {
                    Ok(r) => out.emit(RelationSymbol::Lr(r), a, b),
                    Err(e) => out.skip(family, e, a, b),
                }
            }
            match (a.oriented_point(), b.oriented_point()) {
                (Some(Ok(pa)), Some(Ok(pb))) => match orientation_relation(&pa, &pb, ctx) {
                    Ok(set) => {
                        for r in set {
                            out.emit(RelationSymbol::Orientation(r), a, b);
                        }
                    }
                    Err(e) => out.skip(family, e, a, b),
                },
                (Some(Err(e)), Some(_)) | (Some(_), Some(Err(e))) => out.skip(family, e, a, b),
                _ => {}
            }
        }
        RelationFamily::Distance => match qdc_distance(&a.entity, &b.entity, ctx) {
            Ok(r) => out.emit(RelationSymbol::Distance(r), a, b),
            Err(e) => out.skip(family, e, a, b),
        },
        RelationFamily::Size => match size_relation(&a.entity, &b.entity, ctx) {
            Ok(r) => out.emit(RelationSymbol::Size(r), a, b),
            Err(e) => out.skip(family, e, a, b),
        },
        RelationFamily::Occupancy => {
            let Entity::Point(p) = &a.entity else { return };
            if !b.entity.kind().is_region() {
                return;
            }
            let inside = b
                .entity
                .region_polygon(ctx.circle_segments)
                .map(|poly| poly.locate(*p, ctx.eps_contact) != RegionLocation::Exterior)
                .unwrap_or(false);
            if inside {
                out.emit(RelationSymbol::Occupancy(OccupancyRelation::GazeOn), a, b);
            }
        }
        RelationFamily::Interval | RelationFamily::Motion => {}
    }
}
