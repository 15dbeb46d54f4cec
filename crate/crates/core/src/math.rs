// Real-valued math for no_std builds.

use crate::C64;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn acos(x: f64) -> f64 {
    libm::acos(x)
}

#[inline]
pub(crate) fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `e^{iθ}`
#[inline]
pub(crate) fn cis(theta: f64) -> C64 {
    C64::new(cos(theta), sin(theta))
}

/// Wraps an angle into `(-π, π]`.
pub(crate) fn wrap_phase(theta: f64) -> f64 {
    let z = cis(theta);
    atan2(z.im, z.re)
}
