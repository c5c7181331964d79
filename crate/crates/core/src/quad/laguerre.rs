use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;

use super::{checked, QuadStatus, QuadratureResult};
use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use crate::sum::NeumaierSum;

pub const MIN_NODES: usize = 8;
pub const MAX_NODES: usize = 200;

/// Nodes and weights of the n-point rule for s^σ e^{-s} on [0, ∞).
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

type Cache = Mutex<HashMap<(u64, usize), Arc<LaguerreRule>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached generalized Gauss-Laguerre rule.
pub fn laguerre_rule(sigma: f64, n: usize) -> Result<Arc<LaguerreRule>> {
    if !(MIN_NODES..=MAX_NODES).contains(&n) {
        return Err(Error::NodeLimit {
            nodes: n,
            min: MIN_NODES,
            max: MAX_NODES,
        });
    }
    if !(sigma > -1.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!("Laguerre weight needs sigma > -1, got {sigma}")));
    }
    let key = (sigma.to_bits(), n);
    if let Some(r) = cache().lock().expect("rule cache poisoned").get(&key) {
        return Ok(Arc::clone(r));
    }
    let rule = Arc::new(build_rule(sigma, n)?);
    cache()
        .lock()
        .expect("rule cache poisoned")
        .entry(key)
        .or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

fn diag(sigma: f64, k: usize) -> f64 {
    2.0 * k as f64 + sigma + 1.0
}

fn off(sigma: f64, k: usize) -> f64 {
    let k = k as f64;
    (k * (k + sigma)).sqrt()
}

/// Orthonormal recurrence at x: (p_n(x), p_n'(x), ln Σ_{k<n} p_k(x)^2), with
/// p values carried as scaled numbers.
fn recurrence(sigma: f64, n: usize, x: f64, ln_p0: f64) -> (f64, f64, f64) {
    let mut p_prev = 0.0;
    let mut p = 1.0;
    let mut d_prev = 0.0;
    let mut d = 0.0;
    let mut ln_scale = ln_p0;
    let mut sumsq = 1.0;
    for k in 0..n {
        let b_next = off(sigma, k + 1);
        let a = diag(sigma, k);
        let bk = off(sigma, k);
        let p_next = ((x - a) * p - bk * p_prev) / b_next;
        let d_next = (p + (x - a) * d - bk * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        if k + 1 < n {
            sumsq += p * p;
        }
        let m = p.abs().max(p_prev.abs());
        if m > 1e100 {
            let s = 1.0 / m;
            p *= s;
            p_prev *= s;
            d *= s;
            d_prev *= s;
            sumsq *= s * s;
            ln_scale -= s.ln();
        }
    }
    (p, d, sumsq.ln() + 2.0 * ln_scale)
}

fn build_rule(sigma: f64, n: usize) -> Result<LaguerreRule> {
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jac[(k, k)] = diag(sigma, k);
        if k + 1 < n {
            let b = off(sigma, k + 1);
            jac[(k, k + 1)] = b;
            jac[(k + 1, k)] = b;
        }
    }
    let mut nodes: Vec<f64> = jac.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    let ln_mu0 = ln_gamma(sigma + 1.0)?;
    let ln_p0 = -0.5 * ln_mu0;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, d, _) = recurrence(sigma, n, *x, ln_p0);
            if d == 0.0 {
                break;
            }
            let step = p / d;
            *x -= step;
            if step.abs() <= 1e-16 * x.abs() {
                break;
            }
        }
        let (_, _, ln_sum) = recurrence(sigma, n, *x, ln_p0);
        weights.push((-ln_sum).exp());
    }
    Ok(LaguerreRule { nodes, weights })
}

fn apply<F>(f: &F, rule: &LaguerreRule) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut acc = NeumaierSum::new();
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        if w == 0.0 {
            continue;
        }
        acc.add(w * checked(x, f(x)?)?);
    }
    Ok(acc.value())
}

/// ∫_0^∞ s^σ e^{-s} f(s) ds with an n-point rule, error from comparison
/// against a rule of twice (or, at the cap, half) the size.
pub fn integrate_laguerre<F>(f: F, sigma: f64, nodes: usize) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    let rule = laguerre_rule(sigma, nodes)?;
    let (fine_n, coarse_n) = if 2 * nodes <= MAX_NODES {
        (2 * nodes, nodes)
    } else {
        (nodes, (nodes / 2).max(MIN_NODES))
    };
    let fine_rule = if fine_n == nodes { rule } else { laguerre_rule(sigma, fine_n)? };
    let fine = apply(&f, &fine_rule)?;
    let coarse = apply(&f, &*laguerre_rule(sigma, coarse_n)?)?;
    Ok(QuadratureResult {
        value: fine,
        error_estimate: (fine - coarse).abs(),
        cells_or_nodes: fine_n,
        status: QuadStatus::Converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;

    #[test]
    fn constant_integrands() {
        let r = integrate_laguerre(|_| Ok(1.0), 0.0, 16).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        let r = integrate_laguerre(|_| Ok(1.0), 1.0, 16).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn polynomial_exactness() {
        for &sigma in &[0.0, -0.5, 1.7] {
            let n = 12;
            let rule = laguerre_rule(sigma, n).unwrap();
            for deg in 0..2 * n {
                let q: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(x, w)| w * x.powi(deg as i32))
                    .sum();
                let want = gamma(sigma + deg as f64 + 1.0).unwrap();
                assert!(((q - want) / want).abs() < 1e-13, "sigma={sigma} deg={deg}");
            }
        }
    }

    #[test]
    fn node_limits() {
        assert!(matches!(integrate_laguerre(|_| Ok(1.0), 0.0, 4), Err(Error::NodeLimit { .. })));
        assert!(matches!(integrate_laguerre(|_| Ok(1.0), 0.0, 201), Err(Error::NodeLimit { .. })));
        assert!(integrate_laguerre(|_| Ok(1.0), -1.0, 16).is_err());
    }

    #[test]
    fn large_rule_weights_sum_to_gamma() {
        let rule = laguerre_rule(0.5, 200).unwrap();
        let s: f64 = rule.weights.iter().sum();
        assert!((s - gamma(1.5).unwrap()).abs() < 1e-13);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
    }
}
