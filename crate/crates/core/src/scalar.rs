//! Floating-point scalar abstraction shared by the numeric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Real scalar type the geometric and network code is generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal; every supported type can represent (a rounding of) it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + NumAssign + Debug + Display + Default + Sum + Send + Sync + 'static
{
}

/// Total order on finite scalars. Callers guarantee no NaN reaches this.
pub(crate) fn cmp_finite<T: Scalar>(a: &T, b: &T) -> std::cmp::Ordering {
    a.partial_cmp(b).expect("finite scalars are totally ordered")
}
