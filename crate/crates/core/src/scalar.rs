//! Scalar abstraction for the numeric subsystem.
//!
//! Graph structure and the search itself are integer-exact; everything that
//! touches eigenvalues or certificate arithmetic is generic over [`Real`]
//! so it can run in `f32` or `f64`. Concrete aliases live at the crate root.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `usize`, saturating at the type's max.
    fn from_count(c: usize) -> Self {
        Self::from_usize(c).unwrap_or_else(Self::max_value)
    }
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}
