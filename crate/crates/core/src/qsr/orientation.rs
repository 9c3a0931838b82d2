//! Coarse orientation between oriented points.

use std::collections::BTreeSet;

use crate::geom::OrientedPoint;
use crate::qsr::{OrientationRelation, QsrError, QualificationContext};
use crate::scalar::Scalar;

/// The set of orientation relations holding between `a` and `b`.
///
/// Facing is judged by the angle between `a`'s heading and the bearing to
/// `b`; heading agreement by the angle between the two headings. The
/// relations are independent, so the result is a set: a pair can face each
/// other and simultaneously have opposite headings. Coincident positions
/// leave the bearing undefined.
pub fn orientation_relation<S: Scalar>(
    a: &OrientedPoint<S>,
    b: &OrientedPoint<S>,
    ctx: &QualificationContext<S>,
) -> Result<BTreeSet<OrientationRelation>, QsrError> {
    if a.pos.distance(b.pos) <= ctx.eps_contact {
        return Err(QsrError::CoincidentPoints);
    }
    let mut out = BTreeSet::new();
    let bearing = b.pos - a.pos;
    if a.dir.angle_to(bearing) <= ctx.angle_tol {
        out.insert(OrientationRelation::FacingTowards);
    }
    if a.dir.angle_to(-bearing) <= ctx.angle_tol {
        out.insert(OrientationRelation::FacingAway);
    }
    let heading_gap = a.dir.angle_to(b.dir);
    if heading_gap <= ctx.angle_tol {
        out.insert(OrientationRelation::SameDirection);
    }
    if a.dir.angle_to(-b.dir) <= ctx.angle_tol {
        out.insert(OrientationRelation::OppositeDirection);
    }
    Ok(out)
}
