//! Qualitative spatio-temporal reasoning over quantitative scene data, with a
//! relational learner on top.
//!
//! The crate is organised in six layers:
//!
//! * [`geom`] — planar entities (points, segments, rectangles, circles,
//!   simple polygons) with validated constructors and exact predicates.
//! * [`qsr`] — qualification: mapping metric configurations to symbolic
//!   relations (mereotopology, interval algebra, relative direction,
//!   orientation, distance, size) under explicit tolerance bands.
//! * [`analytic`] — the reverse direction: relation symbols become polynomial
//!   constraint systems, decided by an interval branch-and-prune solver with
//!   an exact rational engine for the linear fragment.
//! * [`fluents`] — time: tracks of sampled geometry, relation fluents over
//!   maximal intervals, motion and growth relations.
//! * [`ilp`] — mode-directed inductive learning of relational clauses whose
//!   body literals are evaluated by qualification on demand.
//! * [`data`] — scene/episode file formats, dataset generators with verified
//!   labels, and persistence.
//!
//! Numeric kernels are generic over [`scalar::Scalar`]; the aliases below fix
//! the default `f64` instantiation used by the data and learning layers.

pub mod analytic;
pub mod data;
pub mod fluents;
pub mod geom;
pub mod ilp;
pub mod qsr;
pub mod scalar;

/// Default scalar for the data and learning layers.
pub type Real = f64;

pub type Point = geom::Point<Real>;
pub type Vector = geom::Vector<Real>;
pub type OrientedPoint = geom::OrientedPoint<Real>;
pub type Segment = geom::Segment<Real>;
pub type OrientedRect = geom::OrientedRect<Real>;
pub type AaRect = geom::AaRect<Real>;
pub type Circle = geom::Circle<Real>;
pub type Polygon = geom::Polygon<Real>;
pub type Entity = geom::Entity<Real>;
pub type QualificationContext = qsr::QualificationContext<Real>;
