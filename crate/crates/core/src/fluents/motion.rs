//! Window-based motion and extent-change relations.

use std::collections::BTreeSet;

use crate::fluents::{common_frames, FluentError, Track};
use crate::geom::{Entity, Point, Vector};
use crate::qsr::{
    qdc_distance, rcc8, DistanceRelation, MotionRelation, QualificationContext, Rcc8Union,
};
use crate::scalar::Scalar;

/// The motion relations of `a` relative to `b` over the last `window`
/// common frames.
///
/// Monotone trends (towards, away) tolerate per-step noise within
/// `ctx.eps_motion` but demand a net change beyond it, so the two are
/// mutually exclusive and swap under time reversal. Splitting and merging
/// watch the mereotopology for an overlap-to-discrete transition (and its
/// reverse) between consecutive frames. Passing relations need `b` to carry
/// a facing direction: they fire when `a`'s centroid crosses `b`'s facing
/// axis from one side to the other while the pair is within near distance,
/// in front or behind by the sign of the projection onto the facing.
pub fn motion_relation<S: Scalar>(
    a: &Track<S>,
    b: &Track<S>,
    window: usize,
    ctx: &QualificationContext<S>,
) -> Result<BTreeSet<MotionRelation>, FluentError> {
    let frames = common_frames(a, b);
    let want = window.max(2);
    if frames.len() < want {
        return Err(FluentError::WindowUncovered { want, have: frames.len() });
    }
    let frames = &frames[frames.len() - want..];

    let mut out = BTreeSet::new();
    let eps = ctx.eps_motion;

    let ca: Vec<Point<S>> = frames
        .iter()
        .map(|&f| a.sample_at(f).expect("common frame").entity.centroid())
        .collect();
    let cb: Vec<Point<S>> = frames
        .iter()
        .map(|&f| b.sample_at(f).expect("common frame").entity.centroid())
        .collect();
    let dist: Vec<S> = ca.iter().zip(&cb).map(|(p, q)| p.distance(*q)).collect();
    let n = dist.len();

    let net = dist[n - 1] - dist[0];
    let no_step_up = dist.windows(2).all(|w| w[1] <= w[0] + eps);
    let no_step_down = dist.windows(2).all(|w| w[1] >= w[0] - eps);
    if no_step_up && net <= -eps {
        out.insert(MotionRelation::MovingTowards);
    }
    if no_step_down && net >= eps {
        out.insert(MotionRelation::MovingAway);
    }

    let disp_a = ca[n - 1] - ca[0];
    let disp_b = cb[n - 1] - cb[0];
    if disp_a.norm() > eps
        && disp_b.norm() > eps
        && disp_a.angle_to(disp_b) <= ctx.angle_tol
        && net.abs() <= eps
    {
        out.insert(MotionRelation::MovingParallel);
    }

    if a.entity_kind().is_region() && b.entity_kind().is_region() {
        for pair in frames.windows(2) {
            let ea = &a.sample_at(pair[0]).expect("common frame").entity;
            let eb = &b.sample_at(pair[0]).expect("common frame").entity;
            let ea2 = &a.sample_at(pair[1]).expect("common frame").entity;
            let eb2 = &b.sample_at(pair[1]).expect("common frame").entity;
            let (Ok(before), Ok(after)) = (rcc8(ea, eb, ctx), rcc8(ea2, eb2, ctx)) else {
                continue;
            };
            let was_overlap = Rcc8Union::O.contains(before);
            let was_dr = Rcc8Union::Dr.contains(before);
            let now_overlap = Rcc8Union::O.contains(after);
            let now_dr = Rcc8Union::Dr.contains(after);
            if was_overlap && now_dr {
                out.insert(MotionRelation::Splitting);
            }
            if was_dr && now_overlap {
                out.insert(MotionRelation::Merging);
            }
        }
    }

    detect_passing(a, b, frames, ctx, &mut out);
    Ok(out)
}

/// Side of the facing axis: positive cross means left.
fn definite_side<S: Scalar>(pos: Point<S>, origin: Point<S>, facing: Vector<S>, eps: S) -> Option<bool> {
    let len = facing.norm();
    if len <= S::zero() {
        return None;
    }
    let offset = facing.cross(pos - origin) / len;
    if offset > eps {
        Some(true)
    } else if offset < -eps {
        Some(false)
    } else {
        None
    }
}

fn detect_passing<S: Scalar>(
    a: &Track<S>,
    b: &Track<S>,
    frames: &[u32],
    ctx: &QualificationContext<S>,
    out: &mut BTreeSet<MotionRelation>,
) {
    // Last frame index at which the mover sat definitely off the axis.
    let mut last: Option<(bool, usize)> = None;
    for (i, &frame) in frames.iter().enumerate() {
        let sa = a.sample_at(frame).expect("common frame");
        let sb = b.sample_at(frame).expect("common frame");
        let Some(facing) = sb.facing else {
            last = None;
            continue;
        };
        let origin = sb.entity.centroid();
        let pos = sa.entity.centroid();
        let Some(side) = definite_side(pos, origin, facing, ctx.eps_contact) else {
            continue;
        };
        if let Some((prev_side, prev_idx)) = last {
            if prev_side != side
                && near_at(a, b, frames[prev_idx], ctx)
                && near_at(a, b, frame, ctx)
            {
                // Signed distance ahead of b along its facing, averaged over
                // the two sides of the crossing.
                let prev_sa = a.sample_at(frames[prev_idx]).expect("common frame");
                let prev_sb = b.sample_at(frames[prev_idx]).expect("common frame");
                let proj =
                    |s_a: &Point<S>, s_b: &Point<S>, f: Vector<S>| (*s_a - *s_b).dot(f) / f.norm();
                let p0 = proj(
                    &prev_sa.entity.centroid(),
                    &prev_sb.entity.centroid(),
                    prev_sb.facing.unwrap_or(facing),
                );
                let p1 = proj(&pos, &origin, facing);
                if p0 + p1 >= S::zero() {
                    out.insert(MotionRelation::PassingInFront);
                } else {
                    out.insert(MotionRelation::PassingBehind);
                }
            }
        }
        last = Some((side, i));
    }
}

fn near_at<S: Scalar>(a: &Track<S>, b: &Track<S>, frame: u32, ctx: &QualificationContext<S>) -> bool {
    let sa = a.sample_at(frame).expect("common frame");
    let sb = b.sample_at(frame).expect("common frame");
    matches!(
        qdc_distance(&sa.entity, &sb.entity, ctx),
        Ok(DistanceRelation::Adjacent | DistanceRelation::Near)
    )
}

/// Extent trends of a rectangle track over its last `window` frames.
pub fn growth_relation<S: Scalar>(
    track: &Track<S>,
    window: usize,
    ctx: &QualificationContext<S>,
) -> Result<BTreeSet<MotionRelation>, FluentError> {
    let extents: Vec<(S, S)> = track
        .samples()
        .iter()
        .map(|s| match &s.entity {
            Entity::AaRect(r) => Ok((r.w, r.h)),
            Entity::OrientedRect(r) => Ok((r.width, r.height)),
            _ => Err(FluentError::NoExtent { object: track.id().clone() }),
        })
        .collect::<Result<_, _>>()?;
    let want = window.max(2);
    if extents.len() < want {
        return Err(FluentError::WindowUncovered { want, have: extents.len() });
    }
    let extents = &extents[extents.len() - want..];

    let eps = ctx.eps_motion;
    let mut out = BTreeSet::new();
    let widths: Vec<S> = extents.iter().map(|e| e.0).collect();
    let heights: Vec<S> = extents.iter().map(|e| e.1).collect();
    for (values, grow, shrink) in [
        (&widths, MotionRelation::GrowingHorizontally, MotionRelation::ShrinkingHorizontally),
        (&heights, MotionRelation::GrowingVertically, MotionRelation::ShrinkingVertically),
    ] {
        let net = values[values.len() - 1] - values[0];
        if values.windows(2).all(|w| w[1] >= w[0] - eps) && net >= eps {
            out.insert(grow);
        }
        if values.windows(2).all(|w| w[1] <= w[0] + eps) && net <= -eps {
            out.insert(shrink);
        }
    }
    Ok(out)
}
