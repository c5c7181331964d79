use super::asymptotic::{envelope, struve_parts, AsymptoticParts};
use super::series::{first_live_index, sum_series, Level, RatioSeries};
use super::{check_finite, dispatch, EvalPolicy, Path, SeriesResult};
use crate::error::{domain, Result};
use crate::gamma::rgamma;

const MAX_ORDER: f64 = 60.0;

/// Struve function H_α(x) = Σ (-1)^k (x/2)^{2k+α+1} / (Γ(k+3/2) Γ(k+α+3/2)), x >= 0.
pub fn struve_h(alpha: f64, x: f64, policy: &EvalPolicy) -> Result<SeriesResult> {
    check_finite("alpha", alpha)?;
    check_finite("x", x)?;
    if x < 0.0 {
        return Err(domain(format!("struve_h needs x >= 0, got {x}")));
    }
    if alpha.abs() > MAX_ORDER {
        return Err(domain(format!("struve_h supports |alpha| <= {MAX_ORDER}, got {alpha}")));
    }
    let lower = [1.5, alpha + 1.5];
    let k0 = first_live_index(&lower);
    let lead = 2.0 * k0 as f64 + alpha + 1.0;
    let coef = if k0.is_multiple_of(2) { 1.0 } else { -1.0 } * rgamma(k0 as f64 + 1.5) * rgamma(alpha + 1.5 + k0 as f64);
    if x == 0.0 {
        if lead < 0.0 {
            return Err(domain(format!("H_{alpha} is singular at x = 0")));
        }
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
        let parts = struve_parts(alpha, x);
        let v = parts.value();
        Some((
            SeriesResult {
                value: v,
                terms_used: 0,
                tail_estimate: parts.error,
                path: Path::Asymptotic,
            },
            envelope(x).max(parts.algebraic.abs()),
        ))
    };
    dispatch(x, policy, Some(&asym), &series)
}

/// Split large-x form of H_α: Y_α (oscillatory) plus the algebraic series.
pub fn struve_h_parts(alpha: f64, x: f64) -> AsymptoticParts {
    struve_parts(alpha, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let p = EvalPolicy::default();
        // mpmath struveh
        let cases = [
            (0.0, 1.0, 0.568_656_627_048_287_9),
            (1.0, 2.0, 0.646_763_728_283_562_1),
            (0.5, 10.0, 0.464_022_118_533_414_2),
            (0.0, 80.0, -0.047_663_833_591_418_26),
        ];
        for (a, x, want) in cases {
            let r = struve_h(a, x, &p).unwrap().value;
            assert!((r - want).abs() < 1e-13, "H_{a}({x}) = {r}, want {want}");
        }
    }

    #[test]
    fn at_origin() {
        let p = EvalPolicy::default();
        assert_eq!(struve_h(0.5, 0.0, &p).unwrap().value, 0.0);
        // α = -1: leading power zero
        let v = struve_h(-1.0, 0.0, &p).unwrap().value;
        assert!((v - rgamma(1.5) * rgamma(0.5)).abs() < 1e-15);
        assert!(struve_h(-1.2, 0.0, &p).is_err());
        // α = -3/2: first term killed, next power positive
        assert_eq!(struve_h(-1.5, 0.0, &p).unwrap().value, 0.0);
    }
}
