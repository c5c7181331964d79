use super::series::{first_live_index, sum_series, Level, RatioSeries};
use super::{check_finite, power_over_factorial, EvalPolicy, SeriesResult};
use crate::error::{domain, Result};
use crate::gamma::{gamma, rgamma};

const MAX_PARAM: f64 = 100.0;

fn check_param(name: &str, v: f64) -> Result<()> {
    check_finite(name, v)?;
    if v.abs() > MAX_PARAM {
        return Err(domain(format!("|{name}| must be <= {MAX_PARAM}, got {v}")));
    }
    Ok(())
}

/// Sum of Σ_k w^k Π 1/Γ(b_j + k) over k >= first live index.
fn gamma_series(w: f64, shifts: &[f64], prefactor: f64, policy: &EvalPolicy) -> Result<SeriesResult> {
    let mut lower = vec![1.0];
    lower.extend_from_slice(shifts);
    let k0 = first_live_index(&lower);
    let kf = k0 as f64;
    let mut t0 = prefactor * w.powi(k0 as i32);
    for b in &lower {
        t0 *= rgamma(b + kf);
    }
    let s = RatioSeries {
        z: w,
        upper: &[],
        lower: &lower,
        k0,
        t0,
    };
    sum_series(&s, policy, Level::Double)
}

/// Two-index Humbert function J_{μ,ν}(z) = Σ (-z)^k / (k! Γ(k+μ+1) Γ(k+ν+1)).
pub fn humbert2(mu: f64, nu: f64, z: f64, policy: &EvalPolicy) -> Result<SeriesResult> {
    check_param("mu", mu)?;
    check_param("nu", nu)?;
    check_finite("z", z)?;
    policy.validate()?;
    gamma_series(-z, &[mu + 1.0, nu + 1.0], 1.0, policy)
}

/// Three-index Humbert function J_{μ,ν,ρ}(z) = Σ (-z)^k / (k! Γ(k+μ+1) Γ(k+ν+1) Γ(k+ρ+1)).
pub fn humbert3(mu: f64, nu: f64, rho: f64, z: f64, policy: &EvalPolicy) -> Result<SeriesResult> {
    check_param("mu", mu)?;
    check_param("nu", nu)?;
    check_param("rho", rho)?;
    check_finite("z", z)?;
    policy.validate()?;
    gamma_series(-z, &[mu + 1.0, nu + 1.0, rho + 1.0], 1.0, policy)
}

/// k-th term of the [`humbert2`] series, computed directly.
pub fn humbert2_term(mu: f64, nu: f64, z: f64, k: usize) -> f64 {
    let kf = k as f64;
    power_over_factorial(-z, k) * rgamma(kf + mu + 1.0) * rgamma(kf + nu + 1.0)
}

/// k-th term of the [`humbert3`] series, computed directly.
pub fn humbert3_term(mu: f64, nu: f64, rho: f64, z: f64, k: usize) -> f64 {
    let kf = k as f64;
    power_over_factorial(-z, k) * rgamma(kf + mu + 1.0) * rgamma(kf + nu + 1.0) * rgamma(kf + rho + 1.0)
}

/// 1F2(a; b1, b2; z) in Pochhammer form.
///
/// A non-positive integer b is a pole unless a terminates the series first.
pub fn hyp1f2(a: f64, b1: f64, b2: f64, z: f64, policy: &EvalPolicy) -> Result<SeriesResult> {
    check_param("a", a)?;
    check_param("b1", b1)?;
    check_param("b2", b2)?;
    check_finite("z", z)?;
    policy.validate()?;
    let s = RatioSeries {
        z,
        upper: &[a],
        lower: &[b1, b2, 1.0],
        k0: 0,
        t0: 1.0,
    };
    sum_series(&s, policy, Level::Double)
}

/// Δ_{α,β}(γ; x) = Σ (-x²/4)^k Γ(γ+k) / (k! Γ(k+α+1) Γ(k+β+1)), γ > 0.
///
/// Equals Γ(γ)/(Γ(1+α)Γ(1+β)) · 1F2(γ; 1+α, 1+β; -x²/4) when the
/// lower parameters avoid the poles; the Γ form stays finite when they do not.
pub fn delta_fn(alpha: f64, beta: f64, gamma_: f64, x: f64, policy: &EvalPolicy) -> Result<SeriesResult> {
    check_param("alpha", alpha)?;
    check_param("beta", beta)?;
    check_param("gamma", gamma_)?;
    check_finite("x", x)?;
    policy.validate()?;
    if gamma_ <= 0.0 {
        return Err(domain(format!("delta_fn needs gamma > 0, got {gamma_}")));
    }
    let w = -x * x / 4.0;
    let lower = [1.0, alpha + 1.0, beta + 1.0];
    let k0 = first_live_index(&lower);
    let kf = k0 as f64;
    let mut t0 = w.powi(k0 as i32) * gamma(gamma_ + kf)?;
    for b in &lower {
        t0 *= rgamma(b + kf);
    }
    let s = RatioSeries {
        z: w,
        upper: &[gamma_],
        lower: &lower,
        k0,
        t0,
    };
    sum_series(&s, policy, Level::Double)
}
