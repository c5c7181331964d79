//! The identity catalog and its verifier.
//!
//! Each identity binds two independent evaluators to a parameter domain, a
//! default sample grid and tolerances. [`verify`] evaluates one point,
//! [`verify_all`] sweeps every default grid.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::EvalPolicy;

mod catalog;
mod fd;

pub use catalog::{delta_generating_sum, humbert_generating_sum, GENERATING_ORDER};
pub use fd::{central_d1, central_d2, FD_STEP};

/// Named parameter values of one sample point.
pub type Params = BTreeMap<String, f64>;

/// Interval with optional open ends; `integer` restricts to whole numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamDomain {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
    pub integer: bool,
}

impl ParamDomain {
    pub const fn closed(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_open: false,
            hi_open: false,
            integer: false,
        }
    }

    /// (lo, hi]
    pub const fn left_open(lo: f64, hi: f64) -> Self {
        Self {
            lo_open: true,
            ..Self::closed(lo, hi)
        }
    }

    pub const fn open(lo: f64, hi: f64) -> Self {
        Self {
            lo_open: true,
            hi_open: true,
            ..Self::closed(lo, hi)
        }
    }

    pub const fn integers(lo: f64, hi: f64) -> Self {
        Self {
            integer: true,
            ..Self::closed(lo, hi)
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        if !v.is_finite() {
            return false;
        }
        let above = if self.lo_open { v > self.lo } else { v >= self.lo };
        let below = if self.hi_open { v < self.hi } else { v <= self.hi };
        above && below && (!self.integer || v.fract() == 0.0)
    }
}

impl fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)?;
        if self.integer {
            write!(f, " integer")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub domain: ParamDomain,
}

/// What one side of an identity computes and which library modules it uses.
#[derive(Debug, Clone, Serialize)]
pub struct Binding {
    pub route: &'static str,
    /// Modules above the gamma kernel this side depends on.
    pub modules: &'static [&'static str],
}

/// Evaluated sides of one identity. `scale` widens the relative-error
/// denominator for claims whose right side is zero or tiny.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sides {
    pub lhs: f64,
    pub rhs: f64,
    pub scale: f64,
}

impl Sides {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs, scale: 0.0 }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale.abs();
        self
    }
}

type Evaluator = fn(&Params, &EvalPolicy) -> Result<Sides>;
type Constraint = fn(&Params) -> std::result::Result<(), String>;

#[derive(Clone, Serialize)]
pub struct Identity {
    pub id: &'static str,
    pub description: &'static str,
    /// Where the claim comes from, as a short label.
    pub reference: &'static str,
    pub params: Vec<ParamSpec>,
    /// Default sample points, values in `params` order.
    pub grid: Vec<Vec<f64>>,
    pub lhs: Binding,
    pub rhs: Binding,
    /// Both sides necessarily evaluate the same family (recurrences, shifts).
    pub relational: bool,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub window_note: &'static str,
    #[serde(skip)]
    constraint: Option<Constraint>,
    #[serde(skip)]
    eval: Evaluator,
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Identity")
            .field("id", &self.id)
            .field("description", &self.description)
            .field("grid_points", &self.grid.len())
            .finish()
    }
}

impl Identity {
    /// Grid point `i` as named parameters.
    pub fn point(&self, i: usize) -> Params {
        self.params
            .iter()
            .zip(&self.grid[i])
            .map(|(p, &v)| (p.name.to_string(), v))
            .collect()
    }

    /// Checks names, domains and cross-parameter windows.
    pub fn check_params(&self, params: &Params) -> Result<()> {
        for name in params.keys() {
            if !self.params.iter().any(|p| p.name == name) {
                return Err(Error::UnknownParameter(format!("{name} (identity {})", self.id)));
            }
        }
        for spec in &self.params {
            let v = *params
                .get(spec.name)
                .ok_or_else(|| Error::MissingParameter(format!("{} (identity {})", spec.name, self.id)))?;
            if !spec.domain.contains(v) {
                return Err(Error::OutOfDomain {
                    name: spec.name.to_string(),
                    value: v,
                    domain: spec.domain.to_string(),
                });
            }
        }
        if let Some(c) = self.constraint {
            c(params).map_err(|msg| Error::Domain(format!("{} window: {msg}", self.id)))?;
        }
        Ok(())
    }

    /// Evaluates both sides without the domain check.
    pub fn evaluate(&self, params: &Params, policy: &EvalPolicy) -> Result<Sides> {
        (self.eval)(params, policy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Outcome of one identity at one parameter point. Non-finite numbers are
/// reported as `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: Params,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub status: Status,
    pub seconds: f64,
    pub reason: Option<String>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl VerificationReport {
    fn from_outcome(identity: &Identity, params: Params, outcome: Result<Sides>, seconds: f64) -> Self {
        let mut report = Self {
            id: identity.id.to_string(),
            params,
            lhs: None,
            rhs: None,
            abs_err: None,
            rel_err: None,
            tol_abs: identity.tol_abs,
            tol_rel: identity.tol_rel,
            status: Status::Skipped,
            seconds,
            reason: None,
        };
        match outcome {
            Err(e) => report.reason = Some(e.to_string()),
            Ok(s) => {
                let abs = (s.lhs - s.rhs).abs();
                let denom = s.rhs.abs().max(s.scale);
                let rel = if abs == 0.0 { 0.0 } else { abs / denom };
                report.lhs = finite(s.lhs);
                report.rhs = finite(s.rhs);
                report.abs_err = finite(abs);
                report.rel_err = finite(rel);
                report.status = if abs <= identity.tol_abs || rel <= identity.tol_rel {
                    Status::Pass
                } else {
                    Status::Fail
                };
                if !abs.is_finite() {
                    report.status = Status::Fail;
                    report.reason = Some("non-finite side".into());
                }
            }
        }
        report
    }
}

/// The fixed catalog, ordered by id.
pub fn list_identities() -> &'static [Identity] {
    static CATALOG: OnceLock<Vec<Identity>> = OnceLock::new();
    CATALOG.get_or_init(catalog::build)
}

pub fn find(id: &str) -> Result<&'static Identity> {
    list_identities()
        .iter()
        .find(|i| i.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Verifies one identity at one point. Domain violations are errors;
/// evaluator failures become skipped reports.
pub fn verify(id: &str, params: &Params, policy: &EvalPolicy) -> Result<VerificationReport> {
    policy.validate()?;
    let identity = find(id)?;
    identity.check_params(params)?;
    Ok(run(identity, params.clone(), policy, true))
}

fn run(identity: &Identity, params: Params, policy: &EvalPolicy, timing: bool) -> VerificationReport {
    let start = Instant::now();
    let outcome = identity.evaluate(&params, policy);
    let seconds = if timing { start.elapsed().as_secs_f64() } else { 0.0 };
    VerificationReport::from_outcome(identity, params, outcome, seconds)
}

/// Options for a sweep over the default grids.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub parallelism: usize,
    /// Nonzero seeds jitter continuous grid values by up to 0.5%.
    pub seed: u64,
    /// Record wall time per report; off gives byte-identical output.
    pub timing: bool,
    /// Restrict to these ids; empty means all.
    pub ids: Vec<String>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            parallelism: 1,
            seed: 0,
            timing: true,
            ids: Vec::new(),
        }
    }
}

/// Runs every identity over its default grid. Reports come back ordered by
/// (id, grid index) whatever the parallelism.
pub fn verify_all(policy: &EvalPolicy, parallelism: usize) -> Result<Vec<VerificationReport>> {
    sweep(
        policy,
        &SweepOptions {
            parallelism,
            ..SweepOptions::default()
        },
    )
}

pub fn sweep(policy: &EvalPolicy, options: &SweepOptions) -> Result<Vec<VerificationReport>> {
    policy.validate()?;
    let selected: Vec<(usize, &Identity)> = if options.ids.is_empty() {
        list_identities().iter().enumerate().collect()
    } else {
        let mut v = Vec::new();
        for id in &options.ids {
            let identity = find(id)?;
            let idx = list_identities().iter().position(|i| i.id == identity.id).unwrap_or(0);
            v.push((idx, identity));
        }
        v
    };
    let jobs: Vec<(&Identity, Params)> = selected
        .iter()
        .flat_map(|&(idx, identity)| {
            (0..identity.grid.len()).map(move |g| (identity, jittered_point(identity, idx, g, options.seed)))
        })
        .collect();
    let threads = options.parallelism.clamp(1, jobs.len().max(1));
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<VerificationReport>> = vec![None; jobs.len()];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some((identity, params)) = jobs.get(i) else {
                            break;
                        };
                        done.push((i, run(identity, params.clone(), policy, options.timing)));
                    }
                    done
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("verifier thread panicked") {
                slots[i] = Some(r);
            }
        }
    });
    Ok(slots.into_iter().map(|r| r.expect("every job ran")).collect())
}

/// Grid point `g` of `identity`, multiplicatively jittered for nonzero seeds.
/// Integer parameters and points that would leave the domain stay put.
fn jittered_point(identity: &Identity, idx: usize, g: usize, seed: u64) -> Params {
    let base = identity.point(g);
    if seed == 0 {
        return base;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((idx as u64) << 40) ^ ((g as u64) << 20));
    let mut p = base.clone();
    for spec in &identity.params {
        let u: f64 = rng.random_range(-1.0..=1.0);
        if spec.domain.integer {
            continue;
        }
        let v = p[spec.name] * (1.0 + 0.005 * u);
        if spec.domain.contains(v) {
            p.insert(spec.name.to_string(), v);
        }
    }
    if identity.check_params(&p).is_ok() {
        p
    } else {
        base
    }
}

/// Catalog metadata as JSON.
pub fn catalog_json() -> serde_json::Value {
    serde_json::to_value(list_identities()).expect("catalog serializes")
}

/// Count of reports by status: (pass, fail, skipped).
pub fn tally(reports: &[VerificationReport]) -> (usize, usize, usize) {
    reports.iter().fold((0, 0, 0), |(p, f, s), r| match r.status {
        Status::Pass => (p + 1, f, s),
        Status::Fail => (p, f + 1, s),
        Status::Skipped => (p, f, s + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domains() {
        let d = ParamDomain::left_open(0.0, 1.0);
        assert!(!d.contains(0.0) && d.contains(1.0) && !d.contains(f64::NAN));
        assert!(!ParamDomain::integers(0.0, 5.0).contains(1.5));
        assert_eq!(ParamDomain::open(-2.0, 0.0).to_string(), "(-2, 0)");
    }

    #[test]
    fn catalog_shape() {
        let all = list_identities();
        assert_eq!(all.len(), 24);
        for (k, identity) in all.iter().enumerate() {
            assert_eq!(identity.id, format!("I{:02}", k + 1));
            assert!(!identity.reference.is_empty());
            assert!(identity.tol_abs > 0.0 && identity.tol_rel > 0.0);
            assert!(!identity.grid.is_empty());
            for g in 0..identity.grid.len() {
                assert_eq!(identity.grid[g].len(), identity.params.len(), "{}", identity.id);
                identity.check_params(&identity.point(g)).unwrap();
            }
        }
    }

    #[test]
    fn rejects_bad_points() {
        let p = EvalPolicy::default();
        assert!(matches!(verify("I99", &Params::new(), &p), Err(Error::UnknownIdentity(_))));
        let params = Params::from([("alpha".to_string(), 0.5)]);
        assert!(matches!(verify("I14", &params, &p), Err(Error::OutOfDomain { .. })));
        assert!(matches!(verify("I14", &Params::new(), &p), Err(Error::MissingParameter(_))));
        let params = Params::from([("alpha".to_string(), -0.5), ("beta".to_string(), 1.0)]);
        assert!(matches!(verify("I14", &params, &p), Err(Error::UnknownParameter(_))));
    }

    #[test]
    fn jitter_stays_in_domain() {
        for (idx, identity) in list_identities().iter().enumerate() {
            for g in 0..identity.grid.len() {
                let p = jittered_point(identity, idx, g, 7);
                identity.check_params(&p).unwrap();
                assert_eq!(p, jittered_point(identity, idx, g, 7));
            }
        }
    }
}
