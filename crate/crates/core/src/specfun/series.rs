//! Generic hypergeometric-type series with a precision ladder.
//!
//! Terms obey t_{k+1} = t_k · z · Π(u_i + k) / Π(l_j + k) starting at k0.
//! Sums are first taken in f64; when the cancellation estimate exceeds the
//! target the same truncated series is re-summed in double-double and, if
//! needed, exactly in rational arithmetic on the (dyadic) inputs.

use super::{EvalPolicy, Path, SeriesResult};
use crate::error::{Error, Result};
use crate::exact::{horner_ratio_sum, Dyadic, Rational};
use crate::gamma::is_nonpositive_integer;
use crate::sum::{DoubleDouble, NeumaierSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Level {
    Double,
    DoubleDouble,
    Exact,
}

const TRUNCATION_REL: f64 = 1e-17;

pub(crate) struct RatioSeries<'a> {
    pub z: f64,
    pub upper: &'a [f64],
    pub lower: &'a [f64],
    pub k0: usize,
    /// Term at index k0.
    pub t0: f64,
}

/// Smallest k >= 0 such that none of 1/Γ(b + k) vanishes.
pub(crate) fn first_live_index(gamma_args: &[f64]) -> usize {
    gamma_args
        .iter()
        .map(|&b| {
            if is_nonpositive_integer(b) {
                (1.0 - b) as usize
            } else {
                0
            }
        })
        .max()
        .unwrap_or(0)
}

struct Terms<'a> {
    s: &'a RatioSeries<'a>,
    t: Vec<f64>,
    /// Number of nonzero terms once the series is known to terminate.
    len: Option<usize>,
}

impl<'a> Terms<'a> {
    fn new(s: &'a RatioSeries<'a>) -> Self {
        Self {
            s,
            t: vec![s.t0],
            len: if s.t0 == 0.0 { Some(0) } else { None },
        }
    }

    fn ratio(&self, k: usize) -> Result<Option<f64>> {
        let kf = k as f64;
        let mut num = self.s.z;
        for u in self.s.upper {
            num *= u + kf;
        }
        if num == 0.0 {
            return Ok(None);
        }
        let mut den = 1.0;
        for l in self.s.lower {
            den *= l + kf;
        }
        if den == 0.0 {
            return Err(Error::ParameterPole(format!(
                "lower parameter hits a non-positive integer at term {k}"
            )));
        }
        Ok(Some(num / den))
    }

    fn get(&mut self, i: usize) -> Result<f64> {
        while self.t.len() <= i {
            if let Some(n) = self.len {
                if i >= n {
                    return Ok(0.0);
                }
            }
            let j = self.t.len() - 1;
            match self.ratio(self.s.k0 + j)? {
                None => {
                    self.len = Some(j + 1);
                    return Ok(0.0);
                }
                Some(r) => {
                    let next = self.t[j] * r;
                    if !next.is_finite() {
                        return Err(Error::Overflow(format!("series term {} overflows", j + 1)));
                    }
                    self.t.push(next);
                }
            }
        }
        Ok(self.t[i])
    }

    /// Tail bound if summing the first `m` terms is accurate for |S| = s_abs.
    fn certify(&mut self, m: usize, s_abs: f64, policy: &EvalPolicy) -> Result<Option<f64>> {
        let a = self.get(m)?.abs();
        if self.len.is_some_and(|n| m >= n) {
            return Ok(Some(0.0));
        }
        let b = self.get(m + 1)?.abs();
        // truncation is pushed below f64 resolution; rel_tol governs the
        // precision ladder
        let tol = policy.rel_tol.min(TRUNCATION_REL) * s_abs + policy.abs_tol;
        if a <= tol && b <= tol && b <= 0.5 * a {
            Ok(Some(a + 2.0 * b))
        } else if a == 0.0 && b == 0.0 {
            Ok(Some(0.0))
        } else {
            Ok(None)
        }
    }
}

fn accepted(err: f64, s: f64, policy: &EvalPolicy) -> bool {
    err <= 0.5 * policy.rel_tol * s.abs() + policy.abs_tol
}

fn non_convergence(policy: &EvalPolicy) -> Error {
    Error::NonConvergence {
        max_terms: policy.max_terms,
    }
}

/// Sums the series to `policy.rel_tol`, starting at `start`.
pub(crate) fn sum_series(s: &RatioSeries, policy: &EvalPolicy, start: Level) -> Result<SeriesResult> {
    if !s.t0.is_finite() {
        return Err(Error::Overflow("leading series term is not finite".into()));
    }
    let mut terms = Terms::new(s);
    if s.t0 == 0.0 {
        return Ok(SeriesResult {
            value: 0.0,
            terms_used: 1,
            tail_estimate: 0.0,
            path: Path::Series,
        });
    }
    let mut level = start;
    let mut m_hint = 0;
    let mut s_hint = 0.0;
    loop {
        match level {
            Level::Double => {
                let mut acc = NeumaierSum::new();
                let mut abs_sum = 0.0;
                let mut m = 0;
                let tail = loop {
                    if m >= policy.max_terms {
                        return Err(non_convergence(policy));
                    }
                    let t = terms.get(m)?;
                    acc.add(t);
                    abs_sum += t.abs();
                    m += 1;
                    if let Some(tail) = terms.certify(m, acc.value().abs(), policy)? {
                        break tail;
                    }
                };
                let v = acc.value();
                let err = 0.5 * f64::EPSILON * abs_sum * (2.0 + (m as f64).sqrt());
                if accepted(err, v, policy) {
                    return Ok(SeriesResult {
                        value: v,
                        terms_used: m,
                        tail_estimate: tail,
                        path: Path::Series,
                    });
                }
                m_hint = m;
                s_hint = v;
                level = Level::DoubleDouble;
            }
            Level::DoubleDouble => {
                let z = DoubleDouble::new(s.z);
                let mut t = DoubleDouble::new(s.t0);
                let mut acc = DoubleDouble::ZERO;
                let mut abs_sum = 0.0;
                let mut m = 0;
                let tail = loop {
                    if m >= policy.max_terms {
                        return Err(non_convergence(policy));
                    }
                    // keep the f64 shadow terms in sync for certification
                    terms.get(m)?;
                    acc = acc + t;
                    abs_sum += t.hi.abs();
                    let k = (s.k0 + m) as f64;
                    let mut num = z;
                    for &u in s.upper {
                        num = num * (DoubleDouble::new(u) + DoubleDouble::new(k));
                    }
                    let mut den = DoubleDouble::ONE;
                    for &l in s.lower {
                        den = den * (DoubleDouble::new(l) + DoubleDouble::new(k));
                    }
                    m += 1;
                    if let Some(tail) = terms.certify(m, acc.to_f64().abs(), policy)? {
                        break tail;
                    }
                    if den.hi == 0.0 {
                        return Err(Error::ParameterPole(format!(
                            "lower parameter hits a non-positive integer at term {m}"
                        )));
                    }
                    t = t * num / den;
                };
                let v = acc.to_f64();
                let err = 4.0 * DoubleDouble::EPS * abs_sum * (2.0 + (m as f64).sqrt());
                if accepted(err, v, policy) {
                    return Ok(SeriesResult {
                        value: v,
                        terms_used: m,
                        tail_estimate: tail,
                        path: Path::ExtendedSeries,
                    });
                }
                m_hint = m_hint.max(m);
                s_hint = v;
                level = Level::Exact;
            }
            Level::Exact => return sum_exact(s, &mut terms, policy, m_hint.max(1), s_hint),
        }
    }
}

fn sum_exact(
    s: &RatioSeries,
    terms: &mut Terms,
    policy: &EvalPolicy,
    mut m: usize,
    s_hint: f64,
) -> Result<SeriesResult> {
    let z = Dyadic::from_f64(s.z);
    let upper: Vec<Dyadic> = s.upper.iter().map(|&u| Dyadic::from_f64(u)).collect();
    let lower: Vec<Dyadic> = s.lower.iter().map(|&l| Dyadic::from_f64(l)).collect();
    let mut ratios: Vec<Rational> = Vec::new();
    let mut s_abs = s_hint.abs();
    // extend m until the tail test passes against the current estimate
    let certify_from = |m0: usize, s_abs: f64, terms: &mut Terms| -> Result<(usize, f64)> {
        let mut m = m0;
        loop {
            if m > policy.max_terms {
                return Err(non_convergence(policy));
            }
            if let Some(tail) = terms.certify(m, s_abs, policy)? {
                return Ok((m, tail));
            }
            m += 1;
        }
    };
    for _round in 0..8 {
        let (m_new, tail) = certify_from(m, s_abs, terms)?;
        m = m_new;
        while ratios.len() + 1 < m {
            let k = (s.k0 + ratios.len()) as i64;
            let mut num = z.clone();
            for u in &upper {
                num = num.mul(&u.add_int(k));
            }
            let mut den = Dyadic::from_f64(1.0);
            for l in &lower {
                den = den.mul(&l.add_int(k));
            }
            if den.is_zero() {
                return Err(Error::ParameterPole(format!(
                    "lower parameter hits a non-positive integer at term {}",
                    ratios.len()
                )));
            }
            ratios.push(Rational::from_dyadic_ratio(&num, &den));
        }
        let v = s.t0 * horner_ratio_sum(&ratios[..m - 1]);
        if v == 0.0 || terms.certify(m, v.abs(), policy)?.is_some() {
            let tail = if v == 0.0 { tail } else { terms.certify(m, v.abs(), policy)?.unwrap_or(tail) };
            return Ok(SeriesResult {
                value: v,
                terms_used: m,
                tail_estimate: tail,
                path: Path::ExtendedSeries,
            });
        }
        s_abs = v.abs();
    }
    Err(non_convergence(policy))
}
