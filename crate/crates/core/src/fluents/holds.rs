//! Point-wise fluent evaluation and interval derivation.

use std::collections::BTreeSet;

use crate::fluents::{common_frames, FluentError, FluentInterval, Sample, TimePoint, Track};
use crate::geom::{Entity, OrientedPoint, RegionLocation};
use crate::qsr::{
    lr, orientation_relation, qdc_distance, rcc8, size_relation, ObjectId, OccupancyRelation,
    QualificationContext, RelationFamily, RelationSymbol, RelationTuple,
};
use crate::scalar::Scalar;

/// Every static relation symbol holding between two samples, restricted to
/// the requested families.
///
/// This is the single qualification kernel behind [`holds_in`] and
/// [`derive_fluents`]: a symbol is in the set iff the corresponding
/// qualifier produces it. Pairs a family cannot relate contribute nothing;
/// interval and motion families are window-based and never appear.
pub fn static_symbols<S: Scalar>(
    a: &Sample<S>,
    b: &Sample<S>,
    families: &[RelationFamily],
    ctx: &QualificationContext<S>,
) -> BTreeSet<RelationSymbol> {
    let mut out = BTreeSet::new();
    for family in RelationFamily::ALL {
        if !families.contains(&family) {
            continue;
        }
        match family {
            RelationFamily::Mereotopology => {
                if let Ok(r) = rcc8(&a.entity, &b.entity, ctx) {
                    out.insert(RelationSymbol::Mereotopology(r));
                }
            }
            RelationFamily::Orientation => {
                if let Entity::Segment(axis) = &a.entity {
                    if let Ok(r) = lr(axis.a, axis.b, b.entity.centroid(), ctx.eps_contact) {
                        out.insert(RelationSymbol::Lr(r));
                    }
                }
                let oriented = |s: &Sample<S>| {
                    s.facing.and_then(|dir| OrientedPoint::new(s.entity.centroid(), dir).ok())
                };
                if let (Some(pa), Some(pb)) = (oriented(a), oriented(b)) {
                    if let Ok(set) = orientation_relation(&pa, &pb, ctx) {
                        out.extend(set.into_iter().map(RelationSymbol::Orientation));
                    }
                }
            }
            RelationFamily::Distance => {
                if let Ok(r) = qdc_distance(&a.entity, &b.entity, ctx) {
                    out.insert(RelationSymbol::Distance(r));
                }
            }
            RelationFamily::Size => {
                if let Ok(r) = size_relation(&a.entity, &b.entity, ctx) {
                    out.insert(RelationSymbol::Size(r));
                }
            }
            RelationFamily::Occupancy => {
                if let Entity::Point(p) = &a.entity {
                    let inside = b
                        .entity
                        .region_polygon(ctx.circle_segments)
                        .map(|poly| poly.locate(*p, ctx.eps_contact) != RegionLocation::Exterior)
                        .unwrap_or(false);
                    if inside {
                        out.insert(RelationSymbol::Occupancy(OccupancyRelation::GazeOn));
                    }
                }
            }
            RelationFamily::Interval | RelationFamily::Motion => {}
        }
    }
    out
}

fn find_track<'t, S: Scalar>(
    tracks: &'t [Track<S>],
    id: &ObjectId,
    frame: u32,
) -> Result<&'t Track<S>, FluentError> {
    tracks
        .iter()
        .find(|t| t.id() == id)
        .ok_or_else(|| FluentError::MissingSample { object: id.clone(), frame })
}

/// Whether `rel` holds at time `t`, qualifying the tracked geometries at
/// that frame.
///
/// Both objects must be present at `t` (abstract entities always are). A
/// relation whose family does not apply to the pair's entity kinds is
/// `false`, not an error, so the learner can probe freely.
pub fn holds_in<S: Scalar>(
    rel: &RelationTuple,
    t: TimePoint,
    tracks: &[Track<S>],
    ctx: &QualificationContext<S>,
) -> Result<bool, FluentError> {
    let ta = find_track(tracks, &rel.a, t.frame)?;
    let tb = find_track(tracks, &rel.b, t.frame)?;
    let sa = ta.sample_at(t.frame)?;
    let sb = tb.sample_at(t.frame)?;
    let symbols = static_symbols(sa, sb, &[rel.symbol.family()], ctx);
    Ok(symbols.contains(&rel.symbol))
}

/// Maximal constant-relation intervals per ordered track pair and family.
///
/// For each ordered pair of distinct tracks and each frame where both are
/// present, the static symbols are computed; each symbol's maximal runs over
/// that common frame sequence become intervals. Frames where neither track
/// was observed neither extend nor break a run. For single-valued families
/// the intervals of a pair tile its common frames; set-valued families may
/// produce overlapping intervals for different symbols, never for the same
/// one.
pub fn derive_fluents<S: Scalar>(
    tracks: &[Track<S>],
    families: &[RelationFamily],
    ctx: &QualificationContext<S>,
) -> Vec<FluentInterval> {
    let mut order: Vec<&Track<S>> = tracks.iter().collect();
    order.sort_by(|x, y| x.id().cmp(y.id()));

    let mut out = Vec::new();
    for a in &order {
        for b in &order {
            if a.id() == b.id() {
                continue;
            }
            derive_pair(a, b, families, ctx, &mut out);
        }
    }
    out
}

fn derive_pair<S: Scalar>(
    a: &Track<S>,
    b: &Track<S>,
    families: &[RelationFamily],
    ctx: &QualificationContext<S>,
    out: &mut Vec<FluentInterval>,
) {
    let frames = common_frames(a, b);
    if frames.is_empty() {
        return;
    }
    // Open runs per symbol: (start time, last time symbol was seen).
    let mut open: Vec<(RelationSymbol, TimePoint, TimePoint)> = Vec::new();
    let mut pair_intervals = Vec::new();
    for &frame in &frames {
        let sa = a.sample_at(frame).expect("common frame is sampled");
        let sb = b.sample_at(frame).expect("common frame is sampled");
        // Interval endpoints are frame-addressed; sample stamps stay on the
        // samples.
        let now = TimePoint::new(frame);
        let symbols = static_symbols(sa, sb, families, ctx);
        // Close runs whose symbol vanished at this observed frame.
        let mut still_open = Vec::new();
        for (sym, start, last) in open.drain(..) {
            if symbols.contains(&sym) {
                still_open.push((sym, start, now));
            } else {
                pair_intervals.push(make_interval(sym, a.id(), b.id(), start, last));
            }
        }
        for sym in symbols {
            if !still_open.iter().any(|(s, _, _)| *s == sym) {
                still_open.push((sym, now, now));
            }
        }
        open = still_open;
    }
    for (sym, start, last) in open {
        pair_intervals.push(make_interval(sym, a.id(), b.id(), start, last));
    }
    pair_intervals.sort();
    out.append(&mut pair_intervals);
}

fn make_interval(
    sym: RelationSymbol,
    a: &ObjectId,
    b: &ObjectId,
    start: TimePoint,
    end: TimePoint,
) -> FluentInterval {
    FluentInterval { rel: RelationTuple::new(sym, a.clone(), b.clone()), start, end }
}
