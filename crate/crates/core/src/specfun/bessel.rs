use std::f64::consts::PI;

use super::asymptotic::{bessel_jy_counted, envelope, hankel_pq_terminating, phase};
use super::series::{first_live_index, sum_series, Level, RatioSeries};
use super::{check_finite, dispatch, power_over_factorial, EvalPolicy, Path, SeriesResult};
use crate::error::{domain, Error, Result};
use crate::gamma::{rgamma, Hermite2Coeffs};
use crate::sum::NeumaierSum;

/// Highest order accepted by [`rayleigh_jn`].
pub const RAYLEIGH_MAX_ORDER: usize = 30;

const SPH_MIN_ORDER: i32 = -50;
const SPH_MAX_ORDER: i32 = 200;

fn alt(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Bessel function of the first kind J_ν(x), x >= 0.
pub fn cyl_j(nu: f64, x: f64, policy: &EvalPolicy) -> Result<SeriesResult> {
    check_finite("nu", nu)?;
    check_finite("x", x)?;
    if x < 0.0 {
        return Err(domain(format!("cyl_j needs x >= 0, got {x}")));
    }
    if nu.abs() > 100.0 {
        return Err(domain(format!("cyl_j supports |nu| <= 100, got {nu}")));
    }
    let lower = [1.0, nu + 1.0];
    let k0 = first_live_index(&lower);
    let lead = nu + 2.0 * k0 as f64;
    if x == 0.0 {
        if lead < 0.0 {
            return Err(domain(format!("J_{nu} is singular at x = 0")));
        }
        let v = if lead == 0.0 { 1.0 } else { 0.0 };
        return Ok(SeriesResult::exact(v, Path::Series));
    }
    let h = x / 2.0;
    let t0 = alt(k0) * h.powf(lead) * rgamma(k0 as f64 + 1.0) * rgamma(nu + 1.0 + k0 as f64);
    let series = |level: Level| {
        let s = RatioSeries {
            z: -h * h,
            upper: &[],
            lower: &lower,
            k0,
            t0,
        };
        sum_series(&s, policy, level)
    };
    let asym = || {
        let (j, _, err, terms) = bessel_jy_counted(nu, x);
        Some((
            SeriesResult {
                value: j,
                terms_used: terms,
                tail_estimate: err,
                path: Path::Asymptotic,
            },
            envelope(x),
        ))
    };
    dispatch(x, policy, Some(&asym), &series)
}

/// Modified Bessel function I_0(t).
pub fn mod_i0(t: f64, policy: &EvalPolicy) -> Result<f64> {
    check_finite("t", t)?;
    if t.abs() > 700.0 {
        return Err(Error::Overflow(format!("I_0({t}) exceeds f64 range")));
    }
    let h = t / 2.0;
    let s = RatioSeries {
        z: h * h,
        upper: &[],
        lower: &[1.0, 1.0],
        k0: 0,
        t0: 1.0,
    };
    let local = EvalPolicy {
        max_terms: policy.max_terms.max(1000),
        ..*policy
    };
    Ok(sum_series(&s, &local, Level::Double)?.value)
}

fn sph_closed_form(n: i32, x: f64) -> f64 {
    sph_closed_form_with_error(n, x).0
}

/// Terminating Hankel form and a bound on its rounding error.
fn sph_closed_form_with_error(n: i32, x: f64) -> (f64, f64) {
    let nu = n as f64 + 0.5;
    let pq = hankel_pq_terminating(nu, x);
    let (c, s) = phase(nu, x);
    ((pq.p * c - pq.q * s) / x, 4.0 * f64::EPSILON * pq.magnitude / x)
}

/// Spherical Bessel function j_n(x) for integer n (negative n allowed, x != 0).
pub fn sph_j(n: i32, x: f64, policy: &EvalPolicy) -> Result<SeriesResult> {
    check_finite("x", x)?;
    if !(SPH_MIN_ORDER..=SPH_MAX_ORDER).contains(&n) {
        return Err(domain(format!(
            "sph_j order must lie in [{SPH_MIN_ORDER}, {SPH_MAX_ORDER}], got {n}"
        )));
    }
    if x == 0.0 {
        return match n {
            0 => Ok(SeriesResult::exact(1.0, Path::Series)),
            n if n > 0 => Ok(SeriesResult::exact(0.0, Path::Series)),
            _ => Err(domain(format!("j_{n} is singular at x = 0"))),
        };
    }
    let ax = x.abs();
    let parity = if x < 0.0 && n.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    if n < 0 {
        return Ok(SeriesResult::exact(parity * sph_closed_form(n, ax), Path::ClosedForm));
    }
    let h = ax / 2.0;
    let lower = [1.0, n as f64 + 1.5];
    let t0 = parity * PI.sqrt() / 2.0 * h.powi(n) * rgamma(n as f64 + 1.5);
    let series = |level: Level| {
        let s = RatioSeries {
            z: -h * h,
            upper: &[],
            lower: &lower,
            k0: 0,
            t0,
        };
        sum_series(&s, policy, level)
    };
    let closed = || {
        // the terminating expansion cancels badly when n^2 >> x
        let (value, tail) = sph_closed_form_with_error(n, ax);
        Some((
            SeriesResult {
                value: parity * value,
                terms_used: n as usize + 1,
                tail_estimate: tail,
                path: Path::ClosedForm,
            },
            1.0 / ax,
        ))
    };
    if policy.forced_path == Some(Path::ClosedForm) {
        return Ok(closed().map(|c| c.0).unwrap());
    }
    dispatch(x, policy, Some(&closed), &series)
}

/// k-th term of the power series of j_n(x), computed directly.
pub fn sph_j_term(n: u32, x: f64, k: usize) -> f64 {
    let h = x / 2.0;
    PI.sqrt() / 2.0 * h.powi(n as i32) * power_over_factorial(-h * h, k) * rgamma(n as f64 + k as f64 + 1.5)
}

/// j_n(x) from the closed form (-x)^n (x^{-1} d/dx)^n (sin x / x).
pub fn rayleigh_jn(n: usize, x: f64) -> Result<f64> {
    check_finite("x", x)?;
    if n > RAYLEIGH_MAX_ORDER {
        return Err(Error::OrderLimit {
            order: n,
            limit: RAYLEIGH_MAX_ORDER,
        });
    }
    if x == 0.0 {
        return Err(domain("rayleigh_jn is undefined at x = 0"));
    }
    // f = A(u) sin x + B(u) cos x with u = 1/x; D = u d/dx acts as
    // A <- u(-u^2 A' - B), B <- u(A - u^2 B').
    let mut a = vec![0.0, 1.0];
    let mut b: Vec<f64> = vec![0.0];
    for _ in 0..n {
        let len = a.len().max(b.len()) + 3;
        let mut na = vec![0.0; len];
        let mut nb = vec![0.0; len];
        for (m, &c) in a.iter().enumerate() {
            // -u^3 * m c u^{m-1} = -m c u^{m+2}
            na[m + 2] -= m as f64 * c;
            nb[m + 1] += c;
        }
        for (m, &c) in b.iter().enumerate() {
            na[m + 1] -= c;
            nb[m + 2] -= m as f64 * c;
        }
        a = na;
        b = nb;
    }
    let u = 1.0 / x;
    let (s, c) = x.sin_cos();
    let mut acc = NeumaierSum::new();
    for (m, &coef) in a.iter().enumerate() {
        if coef != 0.0 {
            acc.add(coef * u.powi(m as i32 - n as i32) * s);
        }
    }
    for (m, &coef) in b.iter().enumerate() {
        if coef != 0.0 {
            acc.add(coef * u.powi(m as i32 - n as i32) * c);
        }
    }
    Ok(if n.is_multiple_of(2) { acc.value() } else { -acc.value() })
}

/// n-th derivative of j_0 at x, as a finite combination of j_{n-k}(x).
pub fn sph_j_deriv(n: usize, x: f64, policy: &EvalPolicy) -> Result<f64> {
    check_finite("x", x)?;
    if n > RAYLEIGH_MAX_ORDER {
        return Err(Error::OrderLimit {
            order: n,
            limit: RAYLEIGH_MAX_ORDER,
        });
    }
    if x == 0.0 {
        return Err(domain("sph_j_deriv needs x != 0"));
    }
    let coeffs = Hermite2Coeffs::new(n)?;
    let mut acc = NeumaierSum::new();
    for (k, c) in coeffs.coeffs().iter().enumerate() {
        let j = sph_j((n - k) as i32, x, policy)?.value;
        acc.add(alt(n + k) * c * (2.0 * x).powi(-(k as i32)) * j);
    }
    Ok(acc.value())
}
