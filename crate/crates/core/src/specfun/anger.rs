use super::asymptotic::{self, envelope, AsymptoticParts};
use super::series::{first_live_index, sum_series, Level, RatioSeries};
use super::{check_finite, dispatch, EvalPolicy, Path, SeriesResult};
use crate::error::{domain, Result};
use crate::gamma::{cos_pi, rgamma, sin_pi};

const MAX_ORDER: f64 = 20.0;

fn check(nu: f64, x: f64) -> Result<()> {
    check_finite("nu", nu)?;
    check_finite("x", x)?;
    if nu.abs() > MAX_ORDER {
        return Err(domain(format!("|nu| must be <= {MAX_ORDER}, got {nu}")));
    }
    if x < 0.0 {
        return Err(domain(format!("x must be >= 0, got {x}")));
    }
    Ok(())
}

fn half_series(
    nu: f64,
    x: f64,
    shift: f64,
    parts: fn(f64, f64) -> AsymptoticParts,
    policy: &EvalPolicy,
) -> Result<SeriesResult> {
    check(nu, x)?;
    let lower = [shift + nu / 2.0, shift - nu / 2.0];
    let k0 = first_live_index(&lower);
    let kf = k0 as f64;
    // shift 1 gives even powers, 3/2 odd powers
    let lead = 2.0 * kf + 2.0 * (shift - 1.0);
    let coef = if k0.is_multiple_of(2) { 1.0 } else { -1.0 } * rgamma(lower[0] + kf) * rgamma(lower[1] + kf);
    if x == 0.0 {
        let v = if lead == 0.0 { coef } else { 0.0 };
        return Ok(SeriesResult::exact(v, Path::Series));
    }
    let h = x / 2.0;
    let t0 = coef * h.powf(lead);
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
        let p = parts(nu, x);
        Some((
            SeriesResult {
                value: p.value(),
                terms_used: 0,
                tail_estimate: p.error,
                path: Path::Asymptotic,
            },
            envelope(x).max(p.algebraic.abs()),
        ))
    };
    dispatch(x, policy, Some(&asym), &series)
}

/// S1(ν, x) = Σ (-1)^k (x/2)^{2k} / (Γ(k+1+ν/2) Γ(k+1-ν/2)).
pub fn s1(nu: f64, x: f64, policy: &EvalPolicy) -> Result<SeriesResult> {
    half_series(nu, x, 1.0, asymptotic::s1_parts, policy)
}

/// S2(ν, x) = Σ (-1)^k (x/2)^{2k+1} / (Γ(k+3/2+ν/2) Γ(k+3/2-ν/2)).
pub fn s2(nu: f64, x: f64, policy: &EvalPolicy) -> Result<SeriesResult> {
    half_series(nu, x, 1.5, asymptotic::s2_parts, policy)
}

pub fn s1_parts(nu: f64, x: f64) -> AsymptoticParts {
    asymptotic::s1_parts(nu, x)
}

pub fn s2_parts(nu: f64, x: f64) -> AsymptoticParts {
    asymptotic::s2_parts(nu, x)
}

fn combine(a: f64, b: f64, nu: f64, x: f64, policy: &EvalPolicy) -> Result<f64> {
    let mut v = 0.0;
    if a != 0.0 {
        v += a * s1(nu, x, policy)?.value;
    }
    if b != 0.0 {
        v += b * s2(nu, x, policy)?.value;
    }
    Ok(v)
}

/// Anger function: cos(νπ/2) S1 + sin(νπ/2) S2.
pub fn anger(nu: f64, x: f64, policy: &EvalPolicy) -> Result<f64> {
    check(nu, x)?;
    combine(cos_pi(nu / 2.0), sin_pi(nu / 2.0), nu, x, policy)
}

/// Weber function: sin(νπ/2) S1 - cos(νπ/2) S2.
pub fn weber(nu: f64, x: f64, policy: &EvalPolicy) -> Result<f64> {
    check(nu, x)?;
    combine(sin_pi(nu / 2.0), -cos_pi(nu / 2.0), nu, x, policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anger_integer_is_bessel() {
        let p = EvalPolicy::default();
        for n in 0..4 {
            for &x in &[0.5, 3.0, 12.0] {
                let a = anger(n as f64, x, &p).unwrap();
                let j = super::super::cyl_j(n as f64, x, &p).unwrap().value;
                assert!((a - j).abs() < 1e-13, "n={n} x={x}: {a} vs {j}");
            }
        }
    }

    #[test]
    fn weber_zero_is_minus_struve() {
        let p = EvalPolicy::default();
        let w = weber(0.0, 2.0, &p).unwrap();
        let h = super::super::struve_h(0.0, 2.0, &p).unwrap().value;
        assert!((w + h).abs() < 1e-14);
    }

    #[test]
    fn s1_at_origin() {
        let p = EvalPolicy::default();
        let v = s1(0.6, 0.0, &p).unwrap().value;
        assert!((v - rgamma(1.3) * rgamma(0.7)).abs() < 1e-15);
        assert_eq!(s2(0.6, 0.0, &p).unwrap().value, 0.0);
    }
}
