//! Umbral image calculus.
//!
//! An umbral symbol ĉ acts on the vacuum through ĉ^a φ0 = 1/Γ(a + 1). Integrals
//! of Gaussian or Laplace type are first evaluated as if ĉ were an ordinary
//! positive constant, expanded into powers of ĉ, and only then projected onto
//! numbers by [`reduce`].

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::gamma::{gamma, rgamma};
use crate::sum::{DoubleDouble, NeumaierSum};

/// Maximum number of symbols in one expression.
pub const MAX_SYMBOLS: usize = 3;
/// Maximum expansion order.
pub const MAX_ORDER: usize = 500;

/// coeff · Π ĉ_i^{e_i}
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UmbralTerm {
    pub coeff: f64,
    pub exponents: Vec<f64>,
}

impl UmbralTerm {
    /// Value after acting on the vacuum.
    pub fn reduce(&self) -> f64 {
        self.exponents
            .iter()
            .fold(self.coeff, |acc, &e| acc * rgamma(e + 1.0))
    }
}

/// Finite linear combination of umbral monomials over a fixed symbol set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UmbralExpr {
    symbols: usize,
    terms: Vec<UmbralTerm>,
}

impl UmbralExpr {
    pub fn new(symbols: usize) -> Result<Self> {
        if symbols == 0 || symbols > MAX_SYMBOLS {
            return Err(domain(format!(
                "umbral expressions carry 1..={MAX_SYMBOLS} symbols, got {symbols}"
            )));
        }
        Ok(Self {
            symbols,
            terms: Vec::new(),
        })
    }

    pub fn push(&mut self, coeff: f64, exponents: &[f64]) -> Result<()> {
        if exponents.len() != self.symbols {
            return Err(domain(format!(
                "term has {} exponents, expression has {} symbols",
                exponents.len(),
                self.symbols
            )));
        }
        if !coeff.is_finite() || exponents.iter().any(|e| !e.is_finite()) {
            return Err(domain("umbral term must be finite"));
        }
        self.terms.push(UmbralTerm {
            coeff,
            exponents: exponents.to_vec(),
        });
        Ok(())
    }

    pub fn with_term(mut self, coeff: f64, exponents: &[f64]) -> Result<Self> {
        self.push(coeff, exponents)?;
        Ok(self)
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols
    }

    pub fn terms(&self) -> &[UmbralTerm] {
        &self.terms
    }

    pub fn scale(mut self, a: f64) -> Self {
        for t in &mut self.terms {
            t.coeff *= a;
        }
        self
    }

    /// Concatenation of the two term lists.
    pub fn concat(mut self, other: &Self) -> Result<Self> {
        if other.symbols != self.symbols {
            return Err(domain("cannot add expressions over different symbol sets"));
        }
        self.terms.extend(other.terms.iter().cloned());
        Ok(self)
    }

    /// Per-term values after acting on the vacuum.
    pub fn reduced_terms(&self) -> Vec<f64> {
        self.terms.iter().map(UmbralTerm::reduce).collect()
    }
}

/// Σ coeff · Π 1/Γ(e_i + 1), compensated.
pub fn reduce(expr: &UmbralExpr) -> f64 {
    let mut acc = NeumaierSum::new();
    for t in expr.terms() {
        acc.add(t.reduce());
    }
    acc.value()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Π ĉ_i^{a_i} · exp(± z Π ĉ_i^{d_i}), truncated at `order`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UmbralExpSeries {
    pub prefactor: Vec<f64>,
    pub step: Vec<u32>,
    pub scale: f64,
    pub sign: Sign,
    pub order: usize,
}

impl UmbralExpSeries {
    pub fn new(prefactor: Vec<f64>, step: Vec<u32>, scale: f64, sign: Sign, order: usize) -> Result<Self> {
        if prefactor.len() != step.len() {
            return Err(domain("prefactor and step must have the same length"));
        }
        if !scale.is_finite() {
            return Err(domain("scale must be finite"));
        }
        Ok(Self {
            prefactor,
            step,
            scale,
            sign,
            order,
        })
    }
}

/// Expands the exponential into terms k = 0..=order with coefficients
/// (±z)^k/k! and exponents a_i + k d_i.
pub fn expand(series: &UmbralExpSeries) -> Result<UmbralExpr> {
    if series.order > MAX_ORDER {
        return Err(Error::OrderLimit {
            order: series.order,
            limit: MAX_ORDER,
        });
    }
    let mut expr = UmbralExpr::new(series.prefactor.len())?;
    let w = DoubleDouble::new(series.sign.value() * series.scale);
    let mut c = DoubleDouble::ONE;
    let mut exps = series.prefactor.clone();
    for k in 0..=series.order {
        if k > 0 {
            c = c * w / DoubleDouble::new(k as f64);
            for (e, (a, d)) in exps.iter_mut().zip(series.prefactor.iter().zip(&series.step)) {
                *e = a + (k as f64) * f64::from(*d);
            }
        }
        expr.push(c.to_f64(), &exps)?;
    }
    Ok(expr)
}

/// Result of a Gaussian integral in the umbral picture: factor · series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianImage {
    pub factor: f64,
    pub series: UmbralExpSeries,
}

impl GaussianImage {
    /// factor · reduce(expand(series)).
    pub fn evaluate(&self) -> Result<f64> {
        Ok(self.factor * reduce(&expand(&self.series)?))
    }
}

/// Default expansion order used by the reduction helpers.
pub const DEFAULT_ORDER: usize = 80;

/// ∫ ĉ^a exp(-ĉ q x² + ĉ p x) dx = sqrt(π/q) ĉ^{a-1/2} exp(ĉ p²/(4q)), q > 0.
pub fn gaussian_reduce(a: f64, q: f64, p: f64) -> Result<GaussianImage> {
    gaussian_reduce_with_order(a, q, p, DEFAULT_ORDER)
}

pub fn gaussian_reduce_with_order(a: f64, q: f64, p: f64, order: usize) -> Result<GaussianImage> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(domain(format!("gaussian_reduce needs q > 0, got {q}")));
    }
    if !a.is_finite() || !p.is_finite() {
        return Err(domain("gaussian_reduce needs finite a and p"));
    }
    Ok(GaussianImage {
        factor: (PI / q).sqrt(),
        series: UmbralExpSeries::new(vec![a - 0.5], vec![1], p * p / (4.0 * q), Sign::Plus, order)?,
    })
}

/// Umbral image of ∫_0^∞ s^{γ-1} e^{-s} ĉ1^α ĉ2^β exp(-ĉ1 ĉ2 w s) ds:
/// Σ_{k<=order} (-w)^k Γ(γ+k)/k! ĉ1^{α+k} ĉ2^{β+k}.
pub fn laplace_reduce(gamma_: f64, w: f64, alpha: f64, beta: f64, order: usize) -> Result<UmbralExpr> {
    if !(gamma_ > 0.0) || !gamma_.is_finite() {
        return Err(domain(format!("laplace_reduce needs gamma > 0, got {gamma_}")));
    }
    if order > MAX_ORDER {
        return Err(Error::OrderLimit {
            order,
            limit: MAX_ORDER,
        });
    }
    let mut expr = UmbralExpr::new(2)?;
    let mut c = DoubleDouble::new(gamma(gamma_)?);
    for k in 0..=order {
        if k > 0 {
            let kf = k as f64;
            c = c * DoubleDouble::new(-w) * DoubleDouble::new(gamma_ + kf - 1.0) / DoubleDouble::new(kf);
        }
        let kf = k as f64;
        expr.push(c.to_f64(), &[alpha + kf, beta + kf])?;
    }
    Ok(expr)
}

/// ∫_ℝ j_0(x) dx through the umbral form j_0(x) = (√(πĉ)/2) exp(-ĉ x²/4).
pub fn sph_j0_integral() -> Result<f64> {
    let image = gaussian_reduce(0.5, 0.25, 0.0)?;
    Ok(PI.sqrt() / 2.0 * image.evaluate()?)
}

/// ∫_ℝ j_0(√(x² - 2xt)) dx in the umbral picture: π Σ (t/2)^{2k}/(k!)².
pub fn sph_j0_shifted_integral(t: f64) -> Result<f64> {
    let image = gaussian_reduce(0.5, 0.25, t / 2.0)?;
    Ok(PI.sqrt() / 2.0 * image.evaluate()?)
}

/// Umbral form of the Humbert function J_{μ,ν}(z) = ĉ1^μ ĉ2^ν exp(-ĉ1 ĉ2 z).
pub fn humbert2_image(mu: f64, nu: f64, z: f64, order: usize) -> Result<UmbralExpr> {
    expand(&UmbralExpSeries::new(vec![mu, nu], vec![1, 1], z, Sign::Minus, order)?)
}

/// Umbral form of J_{μ,ν,ρ}(z) over three symbols.
pub fn humbert3_image(mu: f64, nu: f64, rho: f64, z: f64, order: usize) -> Result<UmbralExpr> {
    expand(&UmbralExpSeries::new(vec![mu, nu, rho], vec![1, 1, 1], z, Sign::Minus, order)?)
}

/// Umbral form of j_n(x) = sqrt(π/(2x)) (ĉx/2)^{n+1/2} exp(-ĉ(x/2)²) as
/// (prefactor, expression).
pub fn sph_j_image(n: u32, x: f64, order: usize) -> Result<(f64, UmbralExpr)> {
    if !(x > 0.0) {
        return Err(domain(format!("sph_j_image needs x > 0, got {x}")));
    }
    let h = x / 2.0;
    let factor = (PI / (2.0 * x)).sqrt() * h.powf(n as f64 + 0.5);
    let expr = expand(&UmbralExpSeries::new(
        vec![n as f64 + 0.5],
        vec![1],
        h * h,
        Sign::Minus,
        order,
    )?)?;
    Ok((factor, expr))
}
