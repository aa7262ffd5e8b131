//! Real scalar abstraction shared by every numerical routine in the crate.
//!
//! Operators are complex matrices whose entries are `Complex<T>` for some
//! `T: Real`. Everything downstream (SVD, hermitian eigensolves, dual-number
//! jets) is written against this trait, so the same code runs in `f32` and
//! `f64`.

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Floating point real scalar: `f32` or `f64`.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync + 'static {
    /// Converts an `f64` literal. Panics only for non-representable input,
    /// which cannot happen for the primitive float types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex entry type of an operator over `T`.
pub type Cx<T> = Complex<T>;

#[inline]
pub(crate) fn cre<T: Real>(re: T) -> Cx<T> {
    Complex::new(re, T::zero())
}
