//! Relative direction of a point against a directed axis.

use crate::geom::Point;
use crate::qsr::{LrRelation, QsrError};
use crate::scalar::Scalar;

/// Classifies where `c` lies relative to the directed line from `a` to `b`.
///
/// Off the line the answer is `left` or `right` by the sign of the cross
/// product. Within `eps` of the line the longitudinal position refines the
/// collinear case into `back`, `start`, `on`, `end` or `front`. The axis must
/// be longer than `eps`.
pub fn lr<S: Scalar>(a: Point<S>, b: Point<S>, c: Point<S>, eps: S) -> Result<LrRelation, QsrError> {
    let axis = b - a;
    let len = axis.norm();
    if len <= eps {
        return Err(QsrError::DegenerateAxis);
    }
    let offset = axis.cross(c - a) / len;
    if offset > eps {
        return Ok(LrRelation::Left);
    }
    if offset < -eps {
        return Ok(LrRelation::Right);
    }
    // Collinear band: position along the axis, in units of its length.
    let t = axis.dot(c - a) / (len * len);
    let eps_t = eps / len;
    if t < -eps_t {
        Ok(LrRelation::Back)
    } else if t <= eps_t {
        Ok(LrRelation::Start)
    } else if t < S::one() - eps_t {
        Ok(LrRelation::On)
    } else if t <= S::one() + eps_t {
        Ok(LrRelation::End)
    } else {
        Ok(LrRelation::Front)
    }
}
