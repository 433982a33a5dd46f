//! Floating-point scalar abstraction shared by the numeric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar usable by the samplers, score computations, eigensolvers and
/// threshold calculators. Implemented for `f32` and `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal or computed constant.
    fn of(x: f64) -> Self;

    /// Widening (or identity) conversion to `f64`.
    fn as_f64(self) -> f64;
}

impl Scalar for f32 {
    #[inline]
    fn of(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn of(x: f64) -> Self {
        x
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

/// `log(n)` and `sqrt(log n / n)` for a problem size, the two scalings that
/// appear throughout the models.
#[inline]
pub(crate) fn log_scale<T: Scalar>(n: usize) -> (T, T) {
    let nf = T::of(n as f64);
    let ln = nf.ln();
    (ln, (ln / nf).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_round_trip() {
        assert_eq!(<f64 as Scalar>::of(0.25).as_f64(), 0.25);
        assert_eq!(<f32 as Scalar>::of(0.25).as_f64(), 0.25);
    }

    #[test]
    fn log_scale_matches_direct_formula() {
        let (ln, f) = log_scale::<f64>(100);
        assert!((ln - 100f64.ln()).abs() < 1e-15);
        assert!((f - (100f64.ln() / 100.0).sqrt()).abs() < 1e-15);
    }
}
