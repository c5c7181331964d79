//! Series, extended-precision and asymptotic evaluators for the Bessel-type
//! families used by the identity catalog.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) mod asymptotic;
mod anger;
mod bessel;
mod humbert;
pub(crate) mod series;
mod struve;

pub use anger::{anger, s1, s1_parts, s2, s2_parts, weber};
pub use asymptotic::{s1_algebraic_tail, s2_over_x_algebraic_tail, struve_algebraic_tail, AsymptoticParts};
pub use bessel::{cyl_j, mod_i0, rayleigh_jn, sph_j, sph_j_deriv, sph_j_term, RAYLEIGH_MAX_ORDER};
pub use humbert::{delta_fn, humbert2, humbert2_term, humbert3, humbert3_term, hyp1f2};
pub use struve::{struve_h, struve_h_parts};

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    Series,
    ExtendedSeries,
    Asymptotic,
    ClosedForm,
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Path::Series => "series",
            Path::ExtendedSeries => "extended_series",
            Path::Asymptotic => "asymptotic",
            Path::ClosedForm => "closed_form",
        })
    }
}

/// Accuracy targets and path thresholds shared by all evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPolicy {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
    /// Above this |x| series start in double-double.
    pub crossover_x: f64,
    /// Above this |x| the asymptotic expansion is tried first.
    pub extended_x: f64,
    /// Diagnostic override of the starting route. Series routes still
    /// escalate precision when cancellation demands it.
    pub forced_path: Option<Path>,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_terms: 500,
            crossover_x: 25.0,
            extended_x: 60.0,
            forced_path: None,
        }
    }
}

impl EvalPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::Domain(format!("rel_tol must be in (0, 1), got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::Domain(format!("abs_tol must be >= 0, got {}", self.abs_tol)));
        }
        if self.max_terms == 0 {
            return Err(Error::Domain("max_terms must be positive".into()));
        }
        if !(self.crossover_x > 0.0 && self.extended_x >= self.crossover_x) {
            return Err(Error::Domain(format!(
                "need 0 < crossover_x <= extended_x, got {} and {}",
                self.crossover_x, self.extended_x
            )));
        }
        Ok(())
    }

    pub fn with_forced_path(mut self, path: Path) -> Self {
        self.forced_path = Some(path);
        self
    }
}

/// Value plus provenance of a series-type evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    /// Bound on the neglected tail (or the asymptotic truncation error).
    pub tail_estimate: f64,
    pub path: Path,
}

impl SeriesResult {
    pub(crate) fn exact(value: f64, path: Path) -> Self {
        Self {
            value,
            terms_used: 1,
            tail_estimate: 0.0,
            path,
        }
    }
}

pub(crate) fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {v}")))
    }
}

/// Picks asymptotic or series evaluation according to the policy.
///
/// `asym` returns a candidate and the scale its error is judged against.
pub(crate) fn dispatch(
    x: f64,
    policy: &EvalPolicy,
    asym: Option<&dyn Fn() -> Option<(SeriesResult, f64)>>,
    series: &dyn Fn(series::Level) -> Result<SeriesResult>,
) -> Result<SeriesResult> {
    use series::Level;
    policy.validate()?;
    let ax = x.abs();
    match policy.forced_path {
        Some(Path::Asymptotic) => {
            if let Some(a) = asym {
                if let Some((r, _)) = a() {
                    return Ok(r);
                }
            }
            return Err(Error::Domain("no asymptotic expansion available here".into()));
        }
        Some(Path::Series) => return series(Level::Double),
        Some(Path::ExtendedSeries) => return series(Level::DoubleDouble),
        _ => {}
    }
    if ax > policy.extended_x {
        if let Some(a) = asym {
            if let Some((r, scale)) = a() {
                if r.tail_estimate <= policy.rel_tol * scale {
                    return Ok(r);
                }
            }
        }
    }
    if ax > policy.crossover_x {
        series(Level::DoubleDouble)
    } else {
        series(Level::Double)
    }
}

/// z^k / k!, rounded once from double-double.
pub(crate) fn power_over_factorial(z: f64, k: usize) -> f64 {
    use crate::sum::DoubleDouble;
    let mut den = DoubleDouble::ONE;
    for i in 2..=k {
        den = den * DoubleDouble::new(i as f64);
    }
    (DoubleDouble::new(z).powi(k as u32) / den).to_f64()
}
