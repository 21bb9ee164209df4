//! Thin wrappers over `libm` so the crate does not need `std` for float
//! math. Everything transcendental goes through here.

pub(crate) use libm::{acos, atan2, cos, exp, fabs, floor, log10, log2, pow, round, sin, sincos,
                      sqrt};

pub(crate) const TAU: f64 = 2.0 * core::f64::consts::PI;

/// Wrap an angle into `[0, 2*pi)`.
pub(crate) fn wrap_angle(x: f64) -> f64 {
    let w = x % TAU;
    if w < 0.0 {
        w + TAU
    } else {
        w
    }
}

/// `acos` with the argument clamped into `[-1, 1]` so that rounding noise
/// near the ends of the range cannot produce NaN.
pub(crate) fn acos_clamped(x: f64) -> f64 {
    acos(x.clamp(-1.0, 1.0))
}
