//! Qualification: mapping metric configurations to symbolic relations.
//!
//! Every operation takes a [`QualificationContext`] that fixes the tolerance
//! bands. Comparisons within `eps_contact` of a boundary configuration snap
//! to the contact relation (ec, tpp, meets, on, ...), so tiny numeric noise
//! never flips a clear-cut answer.

use crate::fluents::TimePoint;
use crate::geom::EntityKind;
use crate::scalar::Scalar;
use thiserror::Error;

mod allen;
mod lr;
mod orientation;
mod qdc;
mod qualify;
mod rcc8;
mod symbols;

pub use allen::{interval_relation, rectangle_algebra};
pub use lr::lr;
pub use orientation::orientation_relation;
pub use qdc::{boundary_gap, qdc_distance, size_relation};
pub use qualify::{qualify_scene, Qualification, SceneObject, SkippedPair};
pub use rcc8::rcc8;
pub use symbols::{
    AllenRelation, DistanceRelation, LrRelation, MotionRelation, OccupancyRelation,
    OrientationRelation, Rcc5, Rcc8, Rcc8Union, RelationFamily, RelationSymbol, SizeRelation,
};

/// Identifier of a scene object or track.
pub type ObjectId = String;

/// Failures of individual qualification operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QsrError {
    #[error("unsupported entity pair {a:?}/{b:?} for {family} relations")]
    UnsupportedEntityPair { a: EntityKind, b: EntityKind, family: RelationFamily },
    #[error("axis endpoints coincide")]
    DegenerateAxis,
    #[error("oriented points coincide")]
    CoincidentPoints,
    #[error("size relation needs entities with area")]
    ZeroArea,
}

/// Tolerance bands for qualification.
///
/// The distance and motion thresholds are scene-scale quantities; build the
/// context with [`QualificationContext::for_diagonal`] from the scene
/// diagonal to get the default proportions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualificationContext<S> {
    /// Band around boundary contact; also the generic coordinate tolerance.
    pub eps_contact: S,
    /// Boundary gap below which two entities are adjacent.
    pub adjacent_threshold: S,
    /// Boundary gap below which two entities are near.
    pub near_threshold: S,
    /// Relative area difference below which two entities are equi-sized.
    pub size_ratio_tol: S,
    /// Angular tolerance for orientation relations, radians.
    pub angle_tol: S,
    /// Circle approximation fidelity for polygonal boundary tests.
    pub circle_segments: usize,
    /// Minimum centroid displacement that counts as motion.
    pub eps_motion: S,
    /// Default frame count for motion windows.
    pub motion_window: usize,
}

impl<S: Scalar> QualificationContext<S> {
    /// Context with the default proportions for a scene of the given
    /// diagonal length.
    pub fn for_diagonal(diagonal: S) -> Self {
        Self {
            eps_contact: S::of(1e-9),
            adjacent_threshold: S::of(0.01) * diagonal,
            near_threshold: S::of(0.2) * diagonal,
            size_ratio_tol: S::of(0.15),
            angle_tol: S::PI() / S::of(8.0),
            circle_segments: 64,
            eps_motion: S::of(0.005) * diagonal,
            motion_window: 5,
        }
    }

    /// Context for a `width` by `height` scene.
    pub fn for_scene(width: S, height: S) -> Self {
        Self::for_diagonal(width.hypot(height))
    }
}

impl<S: Scalar> Default for QualificationContext<S> {
    fn default() -> Self {
        Self::for_diagonal(S::one())
    }
}

/// A single qualified fact: `symbol(a, b)`, optionally at a time point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RelationTuple {
    pub symbol: RelationSymbol,
    pub a: ObjectId,
    pub b: ObjectId,
    pub time: Option<TimePoint>,
}

impl RelationTuple {
    pub fn new(symbol: RelationSymbol, a: impl Into<ObjectId>, b: impl Into<ObjectId>) -> Self {
        Self { symbol, a: a.into(), b: b.into(), time: None }
    }

    pub fn at(mut self, t: TimePoint) -> Self {
        self.time = Some(t);
        self
    }
}

impl std::fmt::Display for RelationTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({}, {})", self.symbol.name(), self.a, self.b)?;
        if let Some(t) = &self.time {
            write!(f, "@{}", t.frame)?;
        }
        Ok(())
    }
}
