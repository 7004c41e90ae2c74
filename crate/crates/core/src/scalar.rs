//! Floating-point abstraction shared by every module.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::Serialize;

/// Real scalar the geometry is computed in: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Serialize
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    /// Widens to `f64` for reporting.
    #[inline]
    fn f64(self) -> f64 {
        self.to_f64().expect("finite scalar converts to f64")
    }

    /// A tolerance stated for `f64`, rescaled to this type's machine epsilon.
    ///
    /// `tol(1e-12)` is exactly `1e-12` for `f64`; for `f32` it grows by
    /// `f32::EPSILON / f64::EPSILON`, capped at `1e-3` unless the stated
    /// tolerance is already looser.
    #[inline]
    fn tol(v: f64) -> Self {
        let ratio = Self::epsilon().f64() / f64::EPSILON;
        Self::lit((v * ratio).min(v.max(1e-3)))
    }
}

impl Real for f32 {}
impl Real for f64 {}
