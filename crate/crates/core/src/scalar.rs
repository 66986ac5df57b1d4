//! Floating point scalar abstraction.

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Real scalar used by the numeric kernels.
pub trait Real: Float + FloatConst + FromPrimitive + NumCast + std::fmt::Debug + Send + Sync + 'static {
    /// Converts an `f64` constant, panicking only for values no float can hold.
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable as float")
    }

    /// Converts a count to the scalar type.
    fn from_count(x: usize) -> Self {
        Self::from_usize(x).expect("count representable as float")
    }

    /// Widens to `f64` for reporting.
    fn as_f64(self) -> f64 {
        NumCast::from(self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
