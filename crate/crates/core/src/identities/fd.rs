use crate::error::Result;

/// Step used by the derivative-based identities.
pub const FD_STEP: f64 = 1e-3;

/// Five-point central first derivative.
pub fn central_d1(f: impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    Ok((f(x - 2.0 * h)? - 8.0 * f(x - h)? + 8.0 * f(x + h)? - f(x + 2.0 * h)?) / (12.0 * h))
}

/// Five-point central second derivative.
pub fn central_d2(f: impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    Ok(
        (-f(x - 2.0 * h)? + 16.0 * f(x - h)? - 30.0 * f(x)? + 16.0 * f(x + h)? - f(x + 2.0 * h)?)
            / (12.0 * h * h),
    )
}
