//! Float helpers backed by `libm` so the crate stays `no_std`.

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    let scale = abs(a).max(abs(b)).max(1.0);
    abs(a - b) <= tol * scale
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}
