//! Scalar abstraction shared by the numeric modules.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the billiard and Hilbert-space code is written against.
///
/// Implemented for `f32` and `f64`. Tolerances that only make sense relative to
/// machine precision are exposed here so generic code never hard-codes them.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Default + Debug + Display + Send + Sync + 'static
{
    /// Threshold for numerical rank decisions on unit-scale vectors.
    const RANK_EPS: f64;
    /// Absolute tolerance on event times and contact distances.
    const EVENT_EPS: f64;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    const RANK_EPS: f64 = 1e-5;
    const EVENT_EPS: f64 = 1e-5;
}

impl Scalar for f64 {
    const RANK_EPS: f64 = 1e-10;
    const EVENT_EPS: f64 = 1e-12;
}

/// Wraps an angle into (-pi, pi].
pub fn wrap_angle<F: Scalar>(x: F) -> F {
    let two_pi = F::TAU();
    let mut y = x % two_pi;
    if y <= -F::PI() {
        y = y + two_pi;
    } else if y > F::PI() {
        y = y - two_pi;
    }
    y
}

/// Fixed 12-significant-digit rendering used by every numeric output file.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        // avoid "-0" vs "0" drift between runs that differ only in sign of zero
        return format!("{:.11e}", 0.0f64);
    }
    format!("{:.11e}", x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_angle_range() {
        use std::f64::consts::PI;
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_angle(-7.0f64) - (-7.0 + 2.0 * PI)).abs() < 1e-15);
        assert!((wrap_angle(0.25f32) - 0.25).abs() < 1e-7);
    }

    #[test]
    fn fmt12_has_twelve_digits() {
        assert_eq!(fmt12(1.0), "1.00000000000e0");
        assert_eq!(fmt12(-0.0), fmt12(0.0));
        assert_eq!(fmt12(0.1 + 0.2), "3.00000000000e-1");
    }
}
