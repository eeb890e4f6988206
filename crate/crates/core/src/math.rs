//! Thin libm shims so the numeric code reads like std.

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// `|t|^e * sg(t)`, with `0` mapped to `0`.
#[inline]
pub(crate) fn signed_pow(t: f64, e: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        let m = powf(t.abs(), e);
        if t < 0.0 {
            -m
        } else {
            m
        }
    }
}
