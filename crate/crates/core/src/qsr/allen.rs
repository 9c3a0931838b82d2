//! Interval relations on the line and their product on boxes.

use std::cmp::Ordering;

use crate::geom::AaRect;
use crate::qsr::AllenRelation;
use crate::scalar::Scalar;

/// Compares two endpoint values under a tolerance band.
fn cmp_eps<S: Scalar>(x: S, y: S, eps: S) -> Ordering {
    if (x - y).abs() <= eps {
        Ordering::Equal
    } else if x < y {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Classifies two closed intervals `(s1, e1)` and `(s2, e2)` with `s <= e`
/// into exactly one of the thirteen relations.
pub fn interval_relation<S: Scalar>(a: (S, S), b: (S, S), eps: S) -> AllenRelation {
    let (s1, e1) = a;
    let (s2, e2) = b;
    match cmp_eps(e1, s2, eps) {
        Ordering::Less => return AllenRelation::Precedes,
        Ordering::Equal => return AllenRelation::Meets,
        Ordering::Greater => {}
    }
    match cmp_eps(s1, e2, eps) {
        Ordering::Greater => return AllenRelation::PrecededBy,
        Ordering::Equal => return AllenRelation::MetBy,
        Ordering::Less => {}
    }
    // Interiors overlap; the start/end comparisons decide the rest.
    match (cmp_eps(s1, s2, eps), cmp_eps(e1, e2, eps)) {
        (Ordering::Equal, Ordering::Equal) => AllenRelation::Equals,
        (Ordering::Equal, Ordering::Less) => AllenRelation::Starts,
        (Ordering::Equal, Ordering::Greater) => AllenRelation::StartedBy,
        (Ordering::Less, Ordering::Equal) => AllenRelation::FinishedBy,
        (Ordering::Greater, Ordering::Equal) => AllenRelation::Finishes,
        (Ordering::Less, Ordering::Less) => AllenRelation::Overlaps,
        (Ordering::Greater, Ordering::Greater) => AllenRelation::OverlappedBy,
        (Ordering::Less, Ordering::Greater) => AllenRelation::Contains,
        (Ordering::Greater, Ordering::Less) => AllenRelation::During,
    }
}

/// The rectangle algebra: one interval relation per axis projection.
pub fn rectangle_algebra<S: Scalar>(
    a: &AaRect<S>,
    b: &AaRect<S>,
    eps: S,
) -> (AllenRelation, AllenRelation) {
    (
        interval_relation(a.x_interval(), b.x_interval(), eps),
        interval_relation(a.y_interval(), b.y_interval(), eps),
    )
}
