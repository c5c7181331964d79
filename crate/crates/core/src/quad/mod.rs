//! Numerical integration: adaptive Gauss-Kronrod, generalized Gauss-Laguerre,
//! and accelerated cell sums for oscillatory tails.

use serde::Serialize;

use crate::error::{Error, Result};

mod kronrod;
mod laguerre;
mod oscillatory;

pub use kronrod::{integrate_finite, integrate_semi_infinite};
pub use laguerre::{integrate_laguerre, laguerre_rule, LaguerreRule, MAX_NODES, MIN_NODES};
pub use oscillatory::{integrate_oscillatory, levin_u, CellSpacing};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Domain {
    Finite(f64, f64),
    SemiInfinite(f64),
    RealLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Strategy {
    Adaptive,
    /// Weight s^σ e^{-s} on [0, ∞) after shifting to the domain start.
    Laguerre { sigma: f64, nodes: usize },
    /// Finite quadrature up to `start_x`, accelerated cells beyond. With
    /// `antilimit` the transform is also accepted on growing cells, which
    /// yields the regularized value of a divergent integral.
    Oscillatory {
        spacing: CellSpacing,
        start_x: f64,
        max_cells: usize,
        antilimit: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraturePlan {
    pub domain: Domain,
    pub strategy: Strategy,
    pub target_abs: f64,
    pub target_rel: f64,
    /// Maximum number of subintervals for adaptive refinement.
    pub max_subdivisions: usize,
}

impl QuadraturePlan {
    pub fn new(domain: Domain, strategy: Strategy) -> Self {
        Self {
            domain,
            strategy,
            target_abs: 1e-12,
            target_rel: 1e-12,
            max_subdivisions: 2000,
        }
    }

    pub fn finite(a: f64, b: f64) -> Self {
        Self::new(Domain::Finite(a, b), Strategy::Adaptive)
    }

    pub fn with_targets(mut self, abs: f64, rel: f64) -> Self {
        self.target_abs = abs;
        self.target_rel = rel;
        self
    }

    pub(crate) fn tolerance(&self, value: f64) -> f64 {
        self.target_abs.max(self.target_rel * value.abs())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPlan(m));
        if !(self.target_abs >= 0.0 && self.target_rel >= 0.0) || self.target_abs + self.target_rel == 0.0 {
            return bad("targets must be non-negative and not both zero".into());
        }
        if self.max_subdivisions == 0 {
            return bad("max_subdivisions must be positive".into());
        }
        match self.domain {
            Domain::Finite(a, b) if !(a.is_finite() && b.is_finite() && a < b) => {
                return bad(format!("finite domain needs a < b, got [{a}, {b}]"));
            }
            Domain::SemiInfinite(a) if !a.is_finite() => {
                return bad(format!("semi-infinite domain needs finite start, got {a}"));
            }
            _ => {}
        }
        match self.strategy {
            Strategy::Laguerre { sigma, nodes } => {
                if !(sigma > -1.0) {
                    return bad(format!("Laguerre weight needs sigma > -1, got {sigma}"));
                }
                if !(MIN_NODES..=MAX_NODES).contains(&nodes) {
                    return Err(Error::NodeLimit {
                        nodes,
                        min: MIN_NODES,
                        max: MAX_NODES,
                    });
                }
            }
            Strategy::Oscillatory {
                spacing,
                start_x,
                max_cells,
                ..
            } => {
                spacing.validate(start_x)?;
                if max_cells < 3 {
                    return bad("oscillatory integration needs at least 3 cells".into());
                }
            }
            Strategy::Adaptive => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadStatus {
    Converged,
    MaxRefinement,
    Accelerated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub cells_or_nodes: usize,
    pub status: QuadStatus,
}

impl QuadratureResult {
    /// Sum of two pieces of one integral.
    pub fn combine(self, o: Self) -> Self {
        let status = match (self.status, o.status) {
            (QuadStatus::MaxRefinement, _) | (_, QuadStatus::MaxRefinement) => QuadStatus::MaxRefinement,
            (QuadStatus::Accelerated, _) | (_, QuadStatus::Accelerated) => QuadStatus::Accelerated,
            _ => QuadStatus::Converged,
        };
        Self {
            value: self.value + o.value,
            error_estimate: self.error_estimate + o.error_estimate,
            cells_or_nodes: self.cells_or_nodes + o.cells_or_nodes,
            status,
        }
    }

    pub fn scaled(mut self, c: f64) -> Self {
        self.value *= c;
        self.error_estimate *= c.abs();
        self
    }
}

/// Parity of an integrand on the real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Symmetry {
    Even,
    Odd,
    General,
}

pub(crate) fn checked(x: f64, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { x, value: v })
    }
}

/// Integrates over the plan's domain with the plan's strategy.
pub fn integrate<F>(f: F, plan: &QuadraturePlan) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    plan.validate()?;
    match plan.domain {
        Domain::Finite(a, b) => match plan.strategy {
            Strategy::Adaptive => integrate_finite(&f, a, b, plan),
            _ => Err(Error::InvalidPlan("finite domains use the adaptive strategy".into())),
        },
        Domain::SemiInfinite(a) => half_line(&f, a, plan),
        Domain::RealLine => integrate_real_line(&f, plan, Symmetry::General),
    }
}

fn half_line<F>(f: &F, a: f64, plan: &QuadraturePlan) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    match plan.strategy {
        Strategy::Adaptive => integrate_semi_infinite(f, a, plan),
        Strategy::Laguerre { sigma, nodes } => integrate_laguerre(|s| f(a + s), sigma, nodes),
        Strategy::Oscillatory { spacing, start_x, .. } => {
            if start_x < a {
                return Err(Error::InvalidPlan(format!(
                    "oscillatory start {start_x} lies before the domain start {a}"
                )));
            }
            let head = if start_x > a {
                integrate_finite(f, a, start_x, plan)?
            } else {
                QuadratureResult {
                    value: 0.0,
                    error_estimate: 0.0,
                    cells_or_nodes: 0,
                    status: QuadStatus::Converged,
                }
            };
            let tail = integrate_oscillatory(f, start_x, spacing, plan)?;
            Ok(head.combine(tail))
        }
    }
}

/// ∫_ℝ f, split at 0. Even integrands use twice the positive half; odd ones
/// integrate to zero.
pub fn integrate_real_line<F>(f: F, plan: &QuadraturePlan, symmetry: Symmetry) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    let local = QuadraturePlan {
        domain: Domain::SemiInfinite(0.0),
        ..*plan
    };
    local.validate()?;
    match symmetry {
        Symmetry::Odd => Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            cells_or_nodes: 0,
            status: QuadStatus::Converged,
        }),
        Symmetry::Even => Ok(half_line(&f, 0.0, &local)?.scaled(2.0)),
        Symmetry::General => {
            let pos = half_line(&f, 0.0, &local)?;
            let neg = half_line(&|x: f64| f(-x), 0.0, &local)?;
            Ok(pos.combine(neg))
        }
    }
}
