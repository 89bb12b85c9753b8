//! Scalar abstraction shared by every model.
//!
//! All physics is written against [`Real`] so the same code runs in `f64`
//! (the default used by the CLI) and `f32`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

use crate::linalg::LinearScalar;

/// Floating point scalar usable by the solvers: `f32` or `f64`.
pub trait Real:
    LinearScalar<Real = Self> + Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only if the value is not representable at all.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in scalar type")
    }

    /// Lossy conversion used for diagnostics.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Converts an atom count.
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count not representable in scalar type")
    }
}

impl<T> Real for T where
    T: LinearScalar<Real = T>
        + Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}
