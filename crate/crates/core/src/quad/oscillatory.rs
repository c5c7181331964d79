use std::f64::consts::PI;

use serde::Serialize;

use super::{integrate_finite, QuadStatus, QuadraturePlan, QuadratureResult, Strategy};
use crate::error::{Error, Result};
use crate::sum::DoubleDouble;

const MAX_ORDER: usize = 20;

/// How consecutive cell boundaries are placed beyond the start point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CellSpacing {
    /// x_k = start + k·period
    Uniform { period: f64 },
    /// scale·x_k^power = scale·start^power + kπ, for phases growing like a power.
    PowerPhase { scale: f64, power: f64 },
}

impl From<f64> for CellSpacing {
    fn from(period: f64) -> Self {
        CellSpacing::Uniform { period }
    }
}

impl CellSpacing {
    pub(crate) fn validate(&self, start: f64) -> Result<()> {
        match *self {
            CellSpacing::Uniform { period } if !(period > 0.0 && period.is_finite()) => Err(
                Error::InvalidPlan(format!("period hint must be positive, got {period}")),
            ),
            CellSpacing::PowerPhase { scale, power } if !(scale > 0.0 && power > 0.0 && start > 0.0) => {
                Err(Error::InvalidPlan(
                    "power-law phase needs positive scale, power and start".into(),
                ))
            }
            _ => Ok(()),
        }
    }

    fn boundary(&self, start: f64, k: usize) -> f64 {
        match *self {
            CellSpacing::Uniform { period } => start + k as f64 * period,
            CellSpacing::PowerPhase { scale, power } => {
                let theta = scale * start.powf(power) + k as f64 * PI;
                (theta / scale).powf(1.0 / power)
            }
        }
    }
}

fn binomial(k: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

/// Levin u-transform of partial sums `s` with terms `a` (β = 1). `n0` is the
/// absolute index of `s[0]`.
pub fn levin_u(s: &[f64], a: &[f64], n0: usize) -> Option<f64> {
    let k = s.len().checked_sub(1)?;
    if k == 0 || a.len() != s.len() {
        return None;
    }
    let beta = 1.0;
    let top = beta + (n0 + k) as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..=k {
        let nj = beta + (n0 + j) as f64;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign * binomial(k, j) * (nj / top).powi(k as i32 - 1);
        let omega = nj * a[j];
        if omega == 0.0 || !omega.is_finite() {
            return None;
        }
        num += c * s[j] / omega;
        den += c / omega;
    }
    let v = num / den;
    v.is_finite().then_some(v)
}

/// Repeated averaging of neighbouring partial sums.
fn euler_average(s: &[f64]) -> (f64, f64) {
    let mut row = s.to_vec();
    let mut prev = row[row.len() - 1];
    while row.len() > 1 {
        prev = row[row.len() - 1];
        row = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    (row[0], (row[0] - prev).abs())
}

/// ∫_start^∞ f by summing cells between estimated zeros and accelerating the
/// partial sums.
pub fn integrate_oscillatory<F>(
    f: F,
    start: f64,
    spacing: impl Into<CellSpacing>,
    plan: &QuadraturePlan,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    let spacing = spacing.into();
    spacing.validate(start)?;
    let (max_cells, antilimit) = match plan.strategy {
        Strategy::Oscillatory {
            max_cells, antilimit, ..
        } => (max_cells, antilimit),
        _ => (60, false),
    };
    if max_cells < 3 {
        return Err(Error::InvalidPlan("oscillatory integration needs at least 3 cells".into()));
    }
    let cell_plan = QuadraturePlan {
        target_abs: plan.target_abs * 1e-3,
        target_rel: (plan.target_rel * 1e-2).max(1e-15),
        ..*plan
    };
    let mut cells: Vec<f64> = Vec::new();
    let mut partial: Vec<f64> = Vec::new();
    let mut sum = DoubleDouble::ZERO;
    let mut quad_err = 0.0;
    let mut estimates: Vec<f64> = Vec::new();
    let mut best: Option<(f64, f64)> = None;
    let mut lo = spacing.boundary(start, 0);
    for n in 0..max_cells {
        let hi = spacing.boundary(start, n + 1);
        let cell = integrate_finite(&f, lo, hi, &cell_plan)?;
        lo = hi;
        quad_err += cell.error_estimate;
        cells.push(cell.value);
        sum = sum + DoubleDouble::new(cell.value);
        partial.push(sum.to_f64());

        if n >= 2 && cells[n - 2..=n].iter().all(|&c| c == 0.0) {
            // compact support: the tail is exactly zero
            return Ok(QuadratureResult {
                value: partial[n],
                error_estimate: quad_err,
                cells_or_nodes: n + 1,
                status: QuadStatus::Converged,
            });
        }
        if n < 2 {
            continue;
        }
        let decaying = cells[n].abs() < cells[n - 1].abs() && cells[n - 1].abs() < cells[n - 2].abs();
        let n0 = (n + 1).saturating_sub(MAX_ORDER + 1);
        let est = levin_u(&partial[n0..=n], &cells[n0..=n], n0)
            .unwrap_or_else(|| euler_average(&partial[n0..=n]).0);
        estimates.push(est);
        let m = estimates.len();
        if m < 3 || !(decaying || antilimit) {
            continue;
        }
        let err = (estimates[m - 1] - estimates[m - 2])
            .abs()
            .max((estimates[m - 2] - estimates[m - 3]).abs())
            + quad_err;
        if best.is_none_or(|(_, e)| err < e) {
            best = Some((est, err));
        }
        if err <= plan.tolerance(est) {
            return Ok(QuadratureResult {
                value: est,
                error_estimate: err,
                cells_or_nodes: n + 1,
                status: QuadStatus::Accelerated,
            });
        }
    }
    check_cells(&cells)?;
    let (value, err) = best.ok_or_else(|| Error::AccelerationDivergence("too few cells".into()))?;
    if !(err <= 1e-2 * value.abs().max(1.0)) {
        return Err(Error::AccelerationDivergence(format!(
            "best estimate {value} carries error {err}"
        )));
    }
    Ok(QuadratureResult {
        value,
        error_estimate: err,
        cells_or_nodes: cells.len(),
        status: QuadStatus::MaxRefinement,
    })
}

/// Cells that neither alternate nor shrink mean the boundaries do not track
/// the integrand's zeros.
fn check_cells(cells: &[f64]) -> Result<()> {
    let tail = &cells[cells.len().saturating_sub(6)..];
    let alternating = tail.windows(2).all(|w| w[0] * w[1] <= 0.0);
    let shrinking = tail.windows(2).all(|w| w[1].abs() <= w[0].abs());
    if alternating || shrinking {
        Ok(())
    } else {
        Err(Error::AccelerationDivergence(
            "cells neither alternate nor decay; check the period hint".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::Domain;

    fn plan() -> QuadraturePlan {
        QuadraturePlan::new(
            Domain::SemiInfinite(0.0),
            Strategy::Oscillatory {
                spacing: CellSpacing::Uniform { period: PI },
                start_x: 0.0,
                max_cells: 60,
                antilimit: false,
            },
        )
        .with_targets(1e-11, 1e-11)
    }

    #[test]
    fn sine_integral() {
        let sinc = |x: f64| Ok(if x == 0.0 { 1.0 } else { x.sin() / x });
        let r = integrate_oscillatory(sinc, 0.0, PI, &plan()).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-9, "{r:?}");
        assert_eq!(r.status, QuadStatus::Accelerated);
    }

    #[test]
    fn compact_support() {
        let f = |x: f64| Ok(if x < 5.0 { x } else { 0.0 });
        let r = integrate_oscillatory(f, 0.0, 1.0, &plan()).unwrap();
        assert!((r.value - 12.5).abs() < 1e-12);
        assert_eq!(r.status, QuadStatus::Converged);
        let g = |x: f64| Ok(if x < 5.0 * PI { x.sin() } else { 0.0 });
        let r = integrate_oscillatory(g, 0.0, PI, &plan()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        assert_eq!(r.status, QuadStatus::Converged);
    }

    #[test]
    fn levin_on_log2() {
        // 1 - 1/2 + 1/3 - ... = ln 2
        let a: Vec<f64> = (0..12).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / (k + 1) as f64).collect();
        let s: Vec<f64> = a
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect();
        let v = levin_u(&s, &a, 0).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-12);
    }
}
