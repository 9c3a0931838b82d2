//! Tracks, fluents and motion: the temporal layer.
//!
//! Entities become space-time histories ([`Track`]), relations become
//! fluents evaluated at sampled time points ([`holds_in`]) or summarized as
//! maximal constant intervals ([`derive_fluents`]). Relations are only ever
//! evaluated at samples; nothing interpolates between frames.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::geom::{Entity, EntityKind, Vector};
use crate::qsr::ObjectId;
use crate::scalar::Scalar;

mod holds;
mod motion;

pub use holds::{derive_fluents, holds_in, static_symbols};
pub use motion::{growth_relation, motion_relation};


/// A sampled instant: a frame index, optionally tagged with wall-clock
/// seconds. Ordering and equality are by frame, with the stamp as a
/// tiebreaker so distinct stamps never alias.
#[derive(Debug, Clone, Copy)]
pub struct TimePoint {
    pub frame: u32,
    pub stamp: Option<f64>,
}

impl TimePoint {
    pub fn new(frame: u32) -> Self {
        Self { frame, stamp: None }
    }

    pub fn with_stamp(frame: u32, stamp: f64) -> Self {
        Self { frame, stamp: Some(stamp) }
    }

    fn key(&self) -> (u32, Option<u64>) {
        (self.frame, self.stamp.map(f64::to_bits))
    }
}

impl PartialEq for TimePoint {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for TimePoint {}

impl PartialOrd for TimePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TimePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.frame.cmp(&other.frame).then_with(|| match (&self.stamp, &other.stamp) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.total_cmp(b),
        })
    }
}

impl std::fmt::Display for TimePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.frame)
    }
}

/// Role of a track's object.
///
/// `Abstract` marks time-invariant scene furniture (the symmetry axis):
/// abstract tracks are treated as present at every frame, carrying their
/// nearest sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TrackKind {
    Person,
    Face,
    Gaze,
    Abstract,
    Generic,
}

impl TrackKind {
    pub fn name(self) -> &'static str {
        match self {
            TrackKind::Person => "person",
            TrackKind::Face => "face",
            TrackKind::Gaze => "gaze",
            TrackKind::Abstract => "abstract",
            TrackKind::Generic => "generic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "person" => Some(TrackKind::Person),
            "face" => Some(TrackKind::Face),
            "gaze" => Some(TrackKind::Gaze),
            "abstract" => Some(TrackKind::Abstract),
            "generic" => Some(TrackKind::Generic),
            _ => None,
        }
    }
}

/// One observation of a tracked object.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample<S> {
    pub time: TimePoint,
    pub entity: Entity<S>,
    pub facing: Option<Vector<S>>,
}

impl<S> Sample<S> {
    pub fn new(time: TimePoint, entity: Entity<S>) -> Self {
        Self { time, entity, facing: None }
    }

    pub fn with_facing(mut self, facing: Vector<S>) -> Self {
        self.facing = Some(facing);
        self
    }
}

/// Failures of temporal evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FluentError {
    #[error("object {object} has no sample at frame {frame}")]
    MissingSample { object: ObjectId, frame: u32 },
    #[error("track {object} is empty")]
    EmptyTrack { object: ObjectId },
    #[error("track samples out of order at index {index}")]
    UnorderedSamples { index: usize },
    #[error("track mixes geometry kinds at index {index}")]
    MixedKinds { index: usize },
    #[error("track does not cover a window of {want} frames (has {have})")]
    WindowUncovered { want: usize, have: usize },
    #[error("track {object} has no width/height extent")]
    NoExtent { object: ObjectId },
}

/// A space-time history: samples of one object, strictly increasing in
/// frame, uniform in geometry kind.
#[derive(Debug, Clone, PartialEq)]
pub struct Track<S> {
    id: ObjectId,
    kind: TrackKind,
    samples: Vec<Sample<S>>,
}

impl<S: Scalar> Track<S> {
    pub fn new(
        id: impl Into<ObjectId>,
        kind: TrackKind,
        samples: Vec<Sample<S>>,
    ) -> Result<Self, FluentError> {
        let id = id.into();
        if samples.is_empty() {
            return Err(FluentError::EmptyTrack { object: id });
        }
        for i in 1..samples.len() {
            if samples[i].time.frame <= samples[i - 1].time.frame {
                return Err(FluentError::UnorderedSamples { index: i });
            }
            if samples[i].entity.kind() != samples[0].entity.kind() {
                return Err(FluentError::MixedKinds { index: i });
            }
        }
        Ok(Self { id, kind, samples })
    }

    pub fn id(&self) -> &ObjectId {
        &self.id
    }

    pub fn kind(&self) -> TrackKind {
        self.kind
    }

    pub fn samples(&self) -> &[Sample<S>] {
        &self.samples
    }

    pub fn entity_kind(&self) -> EntityKind {
        self.samples[0].entity.kind()
    }

    /// Frames at which the object was observed.
    pub fn frames(&self) -> impl Iterator<Item = u32> + '_ {
        self.samples.iter().map(|s| s.time.frame)
    }

    /// True when the track is treated as present at every frame.
    pub fn is_persistent(&self) -> bool {
        self.kind == TrackKind::Abstract
    }

    /// The sample governing `frame`: the exact observation, or for abstract
    /// tracks the nearest one at or before `frame` (the first sample before
    /// any observation).
    pub fn sample_at(&self, frame: u32) -> Result<&Sample<S>, FluentError> {
        match self.samples.binary_search_by_key(&frame, |s| s.time.frame) {
            Ok(i) => Ok(&self.samples[i]),
            Err(insert) => {
                if self.is_persistent() {
                    Ok(&self.samples[insert.saturating_sub(1).min(self.samples.len() - 1)])
                } else {
                    Err(FluentError::MissingSample { object: self.id.clone(), frame })
                }
            }
        }
    }

    /// True when the object is observed (or persists) at `frame`.
    pub fn covers(&self, frame: u32) -> bool {
        self.is_persistent()
            || self.samples.binary_search_by_key(&frame, |s| s.time.frame).is_ok()
    }
}

/// Frames where both tracks are present, ascending.
///
/// A persistent track adopts the other's sampling; two persistent tracks
/// meet at the union of their own sample frames.
pub fn common_frames<S: Scalar>(a: &Track<S>, b: &Track<S>) -> Vec<u32> {
    match (a.is_persistent(), b.is_persistent()) {
        (false, false) => {
            let bs: BTreeSet<u32> = b.frames().collect();
            a.frames().filter(|f| bs.contains(f)).collect()
        }
        (true, false) => b.frames().collect(),
        (false, true) => a.frames().collect(),
        (true, true) => {
            let mut all: BTreeSet<u32> = a.frames().collect();
            all.extend(b.frames());
            all.into_iter().collect()
        }
    }
}

/// A relation asserted to hold at one sampled time.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FluentAssertion {
    pub rel: crate::qsr::RelationTuple,
    pub time: TimePoint,
}

/// A maximal run of sampled times over which one relation holds.
///
/// Maximality is against observation: the relation holds at every common
/// sample in `[start, end]` and fails (or is unobserved) at the common
/// samples just outside.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FluentInterval {
    pub rel: crate::qsr::RelationTuple,
    pub start: TimePoint,
    pub end: TimePoint,
}

impl std::fmt::Display for FluentInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} over [{}, {}]", self.rel, self.start, self.end)
    }
}
