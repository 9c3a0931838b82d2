//! Scalar abstraction for the numeric kernels.
//!
//! All geometric and analytic code is generic over [`Scalar`] so the same
//! predicates run at `f32` or `f64`. The crate root exports `f64` aliases,
//! which the data and learning layers use exclusively.

use num_traits::{Float, FloatConst, FromPrimitive, NumCast, ToPrimitive};
use std::fmt::{Debug, Display};

/// Floating-point scalar usable by every numeric kernel in this crate.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumCast + Debug + Display + 'static
{
    /// Shorthand for lossy conversion from `f64` literals in defaults.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 converts to any Scalar")
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + NumCast + Debug + Display + 'static
{
}
