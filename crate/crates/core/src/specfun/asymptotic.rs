//! Large-argument expansions (Hankel P/Q and the algebraic companions of the
//! Struve and Anger-Weber families).

use std::f64::consts::PI;

use crate::gamma::{cos_pi, rgamma, sin_pi};

const MAX_TERMS: usize = 400;

/// Hankel's P(ν, x), Q(ν, x) with the size of the first omitted term.
#[derive(Debug, Clone, Copy)]
pub(crate) struct HankelPQ {
    pub p: f64,
    pub q: f64,
    pub err: f64,
    pub terms: usize,
    /// 1 + Σ|term|, bounds the rounding error of the sum in units of eps.
    pub magnitude: f64,
}

pub(crate) fn hankel_pq(nu: f64, x: f64) -> HankelPQ {
    hankel_pq_impl(nu, x, false)
}

/// Full sum for half-integer ν, where the expansion terminates.
pub(crate) fn hankel_pq_terminating(nu: f64, x: f64) -> HankelPQ {
    hankel_pq_impl(nu, x, true)
}

fn hankel_pq_impl(nu: f64, x: f64, terminating: bool) -> HankelPQ {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a: f64 = 1.0;
    let mut err = 0.0;
    let mut terms = 1;
    let mut magnitude = 1.0;
    for k in 1..MAX_TERMS {
        let odd = (2 * k - 1) as f64;
        let next = a * (mu - odd * odd) / (8.0 * k as f64 * x);
        if next == 0.0 {
            err = 0.0;
            break;
        }
        if !terminating && k > 1 && next.abs() >= a.abs() {
            err = a.abs();
            break;
        }
        a = next;
        terms += 1;
        magnitude += a.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        err = a.abs();
        if !terminating && a.abs() < 1e-18 * (p.abs() + q.abs()) {
            break;
        }
    }
    HankelPQ {
        p,
        q,
        err,
        terms,
        magnitude,
    }
}

/// cos and sin of x - (ν/2 + 1/4)π without forming the shifted angle.
pub(crate) fn phase(nu: f64, x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    let a = nu / 2.0 + 0.25;
    let (ca, sa) = (cos_pi(a), sin_pi(a));
    (c * ca + s * sa, s * ca - c * sa)
}

pub(crate) fn envelope(x: f64) -> f64 {
    (2.0 / (PI * x)).sqrt()
}

/// J_ν(x) and Y_ν(x) for large x, with a shared absolute error estimate.
pub(crate) fn bessel_jy(nu: f64, x: f64) -> (f64, f64, f64) {
    let (j, y, err, _) = bessel_jy_counted(nu, x);
    (j, y, err)
}

pub(crate) fn bessel_jy_counted(nu: f64, x: f64) -> (f64, f64, f64, usize) {
    let pq = hankel_pq(nu, x);
    let (c, s) = phase(nu, x);
    let e = envelope(x);
    (
        e * (pq.p * c - pq.q * s),
        e * (pq.p * s + pq.q * c),
        e * pq.err,
        pq.terms,
    )
}

/// Oscillatory and algebraic pieces of a large-x expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParts {
    pub oscillatory: f64,
    pub algebraic: f64,
    /// Estimated absolute truncation error of the sum.
    pub error: f64,
}

impl AsymptoticParts {
    pub fn value(&self) -> f64 {
        self.oscillatory + self.algebraic
    }
}

/// Σ t_k with t_{k+1} = t_k r(k), stopped at the smallest term.
pub(crate) fn divergent_sum(t0: f64, ratio: impl Fn(usize) -> f64) -> (f64, f64) {
    if t0 == 0.0 {
        return (0.0, 0.0);
    }
    let mut sum = t0;
    let mut t = t0;
    for k in 0..MAX_TERMS {
        let next = t * ratio(k);
        if next == 0.0 {
            return (sum, 0.0);
        }
        if next.abs() >= t.abs() {
            return (sum, t.abs());
        }
        sum += next;
        t = next;
        if t.abs() < 1e-18 * sum.abs() {
            return (sum, t.abs());
        }
    }
    (sum, t.abs())
}

/// H_α(x) = Y_α(x) + (1/π) Σ Γ(k+1/2) (x/2)^(α-2k-1) / Γ(α+1/2-k).
pub(crate) fn struve_parts(alpha: f64, x: f64) -> AsymptoticParts {
    let (_, y, ey) = bessel_jy(alpha, x);
    let h = x / 2.0;
    let t0 = PI.sqrt() * h.powf(alpha - 1.0) * rgamma(alpha + 0.5) / PI;
    let (alg, ea) = divergent_sum(t0, |k| {
        let k = k as f64;
        (k + 0.5) * (alpha - 0.5 - k) / (h * h)
    });
    AsymptoticParts {
        oscillatory: y,
        algebraic: alg,
        error: ey + ea,
    }
}

/// Large-x parts of S1(ν, x) = Σ (-1)^k (x/2)^{2k} / (Γ(k+1+ν/2) Γ(k+1-ν/2)).
pub(crate) fn s1_parts(nu: f64, x: f64) -> AsymptoticParts {
    let pq = hankel_pq(nu, x);
    let (s, c) = (x - PI / 4.0).sin_cos();
    let e = envelope(x);
    let osc = e * (pq.p * c - pq.q * s);
    let h2 = (x / 2.0) * (x / 2.0);
    let t0 = rgamma(nu / 2.0) * rgamma(-nu / 2.0) / h2;
    let (alg, ea) = divergent_sum(t0, |m| {
        let m = (m + 1) as f64;
        -(m * m - nu * nu / 4.0) / h2
    });
    AsymptoticParts {
        oscillatory: osc,
        algebraic: alg,
        error: e * pq.err + ea,
    }
}

/// Large-x parts of S2(ν, x) = Σ (-1)^k (x/2)^{2k+1} / (Γ(k+3/2+ν/2) Γ(k+3/2-ν/2)).
pub(crate) fn s2_parts(nu: f64, x: f64) -> AsymptoticParts {
    let pq = hankel_pq(nu, x);
    let (s, c) = (x - PI / 4.0).sin_cos();
    let e = envelope(x);
    let osc = e * (pq.p * s + pq.q * c);
    let h = x / 2.0;
    let t0 = rgamma(0.5 + nu / 2.0) * rgamma(0.5 - nu / 2.0) / h;
    let (alg, ea) = divergent_sum(t0, |m| {
        let a = m as f64 + 0.5;
        -(a * a - nu * nu / 4.0) / (h * h)
    });
    AsymptoticParts {
        oscillatory: osc,
        algebraic: alg,
        error: e * pq.err + ea,
    }
}

/// Σ t_k w_k for the same truncation rule as [`divergent_sum`].
fn weighted_divergent_sum(t0: f64, ratio: impl Fn(usize) -> f64, weight: impl Fn(usize) -> f64) -> (f64, f64) {
    if t0 == 0.0 {
        return (0.0, 0.0);
    }
    let mut sum = t0 * weight(0);
    let mut t = t0;
    for k in 0..MAX_TERMS {
        let next = t * ratio(k);
        if next == 0.0 {
            return (sum, 0.0);
        }
        if next.abs() >= t.abs() {
            return (sum, (t * weight(k)).abs());
        }
        let term = next * weight(k + 1);
        sum += term;
        t = next;
        if term.abs() < 1e-18 * sum.abs() {
            return (sum, term.abs());
        }
    }
    (sum, (t * weight(MAX_TERMS)).abs())
}

/// ∫_X^∞ of the algebraic part of H_α, term by term (needs α < 0).
pub fn struve_algebraic_tail(alpha: f64, big_x: f64) -> (f64, f64) {
    let h = big_x / 2.0;
    let t0 = PI.sqrt() * h.powf(alpha - 1.0) * rgamma(alpha + 0.5) / PI;
    weighted_divergent_sum(
        t0,
        |k| {
            let k = k as f64;
            (k + 0.5) * (alpha - 0.5 - k) / (h * h)
        },
        |k| big_x / (2.0 * k as f64 - alpha),
    )
}

/// ∫_X^∞ of the algebraic part of S1(ν, ·).
pub fn s1_algebraic_tail(nu: f64, big_x: f64) -> (f64, f64) {
    let h2 = (big_x / 2.0) * (big_x / 2.0);
    let t0 = rgamma(nu / 2.0) * rgamma(-nu / 2.0) / h2;
    weighted_divergent_sum(
        t0,
        |m| {
            let m = (m + 1) as f64;
            -(m * m - nu * nu / 4.0) / h2
        },
        // term m+1 decays like x^{-2(m+1)}
        |m| big_x / (2.0 * m as f64 + 1.0),
    )
}

/// ∫_X^∞ of the algebraic part of S2(ν, x)/x.
pub fn s2_over_x_algebraic_tail(nu: f64, big_x: f64) -> (f64, f64) {
    let h = big_x / 2.0;
    let t0 = rgamma(0.5 + nu / 2.0) * rgamma(0.5 - nu / 2.0) / h;
    weighted_divergent_sum(
        t0,
        |m| {
            let a = m as f64 + 0.5;
            -(a * a - nu * nu / 4.0) / (h * h)
        },
        |m| 1.0 / (2.0 * m as f64 + 1.0),
    )
}
