//! Floating-point scalar abstraction.
//!
//! Everything that evaluates a character sum or a Fourier coefficient is
//! generic over [`Scalar`], so the same code runs in `f32` and `f64`. The
//! crate root fixes `f64` aliases for everyday use; the library tolerance of
//! `1e-6` is calibrated for `f64` only.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    #[inline]
    fn of_f64(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 is representable")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize is representable")
    }

    #[inline]
    fn of_i64(n: i64) -> Self {
        Self::from_i64(n).expect("i64 is representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `base^exp` for a small integer base, evaluated in `T`.
pub fn powi<T: Scalar>(base: usize, exp: i32) -> T {
    T::of_usize(base).powi(exp)
}

pub(crate) fn czero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// `true` if both parts of `z` are finite.
pub fn is_finite<T: Scalar>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
