//! C ABI for `umbral-special`.
//!
//! Every function returns an [`UmbralStatus`]; values come back through out
//! pointers. A null policy pointer means the default policy. The message of
//! the last failure on the calling thread is available from
//! [`umbral_last_error`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use umbral_special::identities::{self, Params, Status, VerificationReport};
use umbral_special::{gamma, specfun, EvalPolicy, Error, Path, SeriesResult};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UmbralStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Pole = 3,
    Overflow = 4,
    NonConvergence = 5,
    LimitExceeded = 6,
    Quadrature = 7,
    UnknownIdentity = 8,
    InvalidArgument = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UmbralPath {
    Series = 0,
    ExtendedSeries = 1,
    Asymptotic = 2,
    ClosedForm = 3,
}

impl From<Path> for UmbralPath {
    fn from(p: Path) -> Self {
        match p {
            Path::Series => UmbralPath::Series,
            Path::ExtendedSeries => UmbralPath::ExtendedSeries,
            Path::Asymptotic => UmbralPath::Asymptotic,
            Path::ClosedForm => UmbralPath::ClosedForm,
        }
    }
}

impl From<UmbralPath> for Path {
    fn from(p: UmbralPath) -> Self {
        match p {
            UmbralPath::Series => Path::Series,
            UmbralPath::ExtendedSeries => Path::ExtendedSeries,
            UmbralPath::Asymptotic => Path::Asymptotic,
            UmbralPath::ClosedForm => Path::ClosedForm,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct UmbralSeriesResult {
    pub value: f64,
    pub terms_used: u64,
    pub tail_estimate: f64,
    pub path: UmbralPath,
}

impl From<SeriesResult> for UmbralSeriesResult {
    fn from(r: SeriesResult) -> Self {
        Self {
            value: r.value,
            terms_used: r.terms_used as u64,
            tail_estimate: r.tail_estimate,
            path: r.path.into(),
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UmbralReportStatus {
    Pass = 0,
    Fail = 1,
    Skipped = 2,
}

/// One verification record. Non-finite or missing numbers are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct UmbralReport {
    /// NUL-terminated identity id, e.g. "I01".
    pub id: [c_char; 8],
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub seconds: f64,
    pub status: UmbralReportStatus,
}

impl From<&VerificationReport> for UmbralReport {
    fn from(r: &VerificationReport) -> Self {
        let mut id = [0 as c_char; 8];
        for (dst, src) in id.iter_mut().zip(r.id.bytes().take(7)) {
            *dst = src as c_char;
        }
        Self {
            id,
            lhs: r.lhs.unwrap_or(f64::NAN),
            rhs: r.rhs.unwrap_or(f64::NAN),
            abs_err: r.abs_err.unwrap_or(f64::NAN),
            rel_err: r.rel_err.unwrap_or(f64::NAN),
            tol_abs: r.tol_abs,
            tol_rel: r.tol_rel,
            seconds: r.seconds,
            status: match r.status {
                Status::Pass => UmbralReportStatus::Pass,
                Status::Fail => UmbralReportStatus::Fail,
                Status::Skipped => UmbralReportStatus::Skipped,
            },
        }
    }
}

/// Opaque evaluation policy.
pub struct UmbralPolicy {
    inner: EvalPolicy,
}

/// Opaque list of verification reports.
pub struct UmbralReportList {
    reports: Vec<UmbralReport>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> UmbralStatus {
    match e {
        Error::Pole(_) | Error::ParameterPole(_) => UmbralStatus::Pole,
        Error::Overflow(_) => UmbralStatus::Overflow,
        Error::Domain(_) | Error::OutOfDomain { .. } => UmbralStatus::Domain,
        Error::NonConvergence { .. } => UmbralStatus::NonConvergence,
        Error::DegreeLimit { .. } | Error::OrderLimit { .. } | Error::NodeLimit { .. } => UmbralStatus::LimitExceeded,
        Error::NonFiniteIntegrand { .. } | Error::InvalidPlan(_) | Error::AccelerationDivergence(_) => {
            UmbralStatus::Quadrature
        }
        Error::UnknownIdentity(_) => UmbralStatus::UnknownIdentity,
        Error::MissingParameter(_) | Error::UnknownParameter(_) => UmbralStatus::InvalidArgument,
    }
}

/// Runs `f`, records failures and converts panics into a status.
fn guard(f: impl FnOnce() -> Result<(), UmbralStatusError>) -> UmbralStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            UmbralStatus::Ok
        }
        Ok(Err(UmbralStatusError(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            UmbralStatus::Panic
        }
    }
}

struct UmbralStatusError(UmbralStatus, String);

impl From<Error> for UmbralStatusError {
    fn from(e: Error) -> Self {
        UmbralStatusError(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> UmbralStatusError {
    UmbralStatusError(UmbralStatus::NullPointer, format!("{what} is null"))
}

unsafe fn policy_ref(p: *const UmbralPolicy) -> EvalPolicy {
    if p.is_null() {
        EvalPolicy::default()
    } else {
        (*p).inner
    }
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), UmbralStatusError> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, UmbralStatusError> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| UmbralStatusError(UmbralStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length in bytes.
#[no_mangle]
pub unsafe extern "C" fn umbral_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// New policy with default tolerances; free with [`umbral_policy_free`].
#[no_mangle]
pub extern "C" fn umbral_policy_new() -> *mut UmbralPolicy {
    Box::into_raw(Box::new(UmbralPolicy {
        inner: EvalPolicy::default(),
    }))
}

#[no_mangle]
pub unsafe extern "C" fn umbral_policy_free(policy: *mut UmbralPolicy) {
    if !policy.is_null() {
        drop(Box::from_raw(policy));
    }
}

#[no_mangle]
pub unsafe extern "C" fn umbral_policy_set_tolerances(policy: *mut UmbralPolicy, rel_tol: f64, abs_tol: f64) -> UmbralStatus {
    guard(|| {
        let p = policy.as_mut().ok_or_else(|| null("policy"))?;
        let candidate = EvalPolicy {
            rel_tol,
            abs_tol,
            ..p.inner
        };
        candidate.validate()?;
        p.inner = candidate;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn umbral_policy_set_max_terms(policy: *mut UmbralPolicy, max_terms: u64) -> UmbralStatus {
    guard(|| {
        let p = policy.as_mut().ok_or_else(|| null("policy"))?;
        let candidate = EvalPolicy {
            max_terms: max_terms as usize,
            ..p.inner
        };
        candidate.validate()?;
        p.inner = candidate;
        Ok(())
    })
}

/// Forces one evaluation path; `enabled = false` restores automatic choice.
#[no_mangle]
pub unsafe extern "C" fn umbral_policy_force_path(policy: *mut UmbralPolicy, path: UmbralPath, enabled: bool) -> UmbralStatus {
    guard(|| {
        let p = policy.as_mut().ok_or_else(|| null("policy"))?;
        p.inner.forced_path = enabled.then(|| path.into());
        Ok(())
    })
}

unsafe fn series(
    policy: *const UmbralPolicy,
    out: *mut UmbralSeriesResult,
    f: impl FnOnce(&EvalPolicy) -> umbral_special::Result<SeriesResult>,
) -> UmbralStatus {
    guard(|| {
        let r = f(&policy_ref(policy))?;
        write(out, r.into())
    })
}

/// Spherical Bessel j_n(x).
#[no_mangle]
pub unsafe extern "C" fn umbral_sph_j(
    policy: *const UmbralPolicy,
    n: i32, x: f64,
    out: *mut UmbralSeriesResult,
) -> UmbralStatus {
    series(policy, out, |p| specfun::sph_j(n, x, p))
}

/// Bessel J_ν(x), x ≥ 0.
#[no_mangle]
pub unsafe extern "C" fn umbral_cyl_j(
    policy: *const UmbralPolicy,
    nu: f64, x: f64,
    out: *mut UmbralSeriesResult,
) -> UmbralStatus {
    series(policy, out, |p| specfun::cyl_j(nu, x, p))
}

/// Struve H_α(x).
#[no_mangle]
pub unsafe extern "C" fn umbral_struve_h(
    policy: *const UmbralPolicy,
    alpha: f64, x: f64,
    out: *mut UmbralSeriesResult,
) -> UmbralStatus {
    series(policy, out, |p| specfun::struve_h(alpha, x, p))
}

/// Humbert J_{μ,ν}(z).
#[no_mangle]
pub unsafe extern "C" fn umbral_humbert2(
    policy: *const UmbralPolicy,
    mu: f64, nu: f64, z: f64,
    out: *mut UmbralSeriesResult,
) -> UmbralStatus {
    series(policy, out, |p| specfun::humbert2(mu, nu, z, p))
}

/// Humbert J_{μ,ν,ρ}(z).
#[no_mangle]
pub unsafe extern "C" fn umbral_humbert3(
    policy: *const UmbralPolicy,
    mu: f64, nu: f64, rho: f64, z: f64,
    out: *mut UmbralSeriesResult,
) -> UmbralStatus {
    series(policy, out, |p| specfun::humbert3(mu, nu, rho, z, p))
}

/// ₁F₂(a; b1, b2; z).
#[no_mangle]
pub unsafe extern "C" fn umbral_hyp1f2(
    policy: *const UmbralPolicy,
    a: f64, b1: f64, b2: f64, z: f64,
    out: *mut UmbralSeriesResult,
) -> UmbralStatus {
    series(policy, out, |p| specfun::hyp1f2(a, b1, b2, z, p))
}

/// Δ_{α,β,γ}(x).
#[no_mangle]
pub unsafe extern "C" fn umbral_delta(
    policy: *const UmbralPolicy,
    alpha: f64, beta: f64, gamma_: f64, x: f64,
    out: *mut UmbralSeriesResult,
) -> UmbralStatus {
    series(policy, out, |p| specfun::delta_fn(alpha, beta, gamma_, x, p))
}

/// S₁(ν, x).
#[no_mangle]
pub unsafe extern "C" fn umbral_s1(
    policy: *const UmbralPolicy,
    nu: f64, x: f64,
    out: *mut UmbralSeriesResult,
) -> UmbralStatus {
    series(policy, out, |p| specfun::s1(nu, x, p))
}

/// S₂(ν, x).
#[no_mangle]
pub unsafe extern "C" fn umbral_s2(
    policy: *const UmbralPolicy,
    nu: f64, x: f64,
    out: *mut UmbralSeriesResult,
) -> UmbralStatus {
    series(policy, out, |p| specfun::s2(nu, x, p))
}

/// Anger function 𝐉_ν(x).
#[no_mangle]
pub unsafe extern "C" fn umbral_anger(policy: *const UmbralPolicy, nu: f64, x: f64, out: *mut f64) -> UmbralStatus {
    guard(|| write(out, specfun::anger(nu, x, &policy_ref(policy))?))
}

/// Weber function 𝐄_ν(x).
#[no_mangle]
pub unsafe extern "C" fn umbral_weber(policy: *const UmbralPolicy, nu: f64, x: f64, out: *mut f64) -> UmbralStatus {
    guard(|| write(out, specfun::weber(nu, x, &policy_ref(policy))?))
}

#[no_mangle]
pub unsafe extern "C" fn umbral_gamma(x: f64, out: *mut f64) -> UmbralStatus {
    guard(|| write(out, gamma::gamma(x)?))
}

/// 1/Γ(x); exact zero at the poles.
#[no_mangle]
pub unsafe extern "C" fn umbral_rgamma(x: f64, out: *mut f64) -> UmbralStatus {
    guard(|| write(out, gamma::rgamma(x)))
}

/// Number of identities in the catalog.
#[no_mangle]
pub extern "C" fn umbral_identity_count() -> usize {
    identities::list_identities().len()
}

/// Verifies identity `id` at the point given by `count` parallel
/// name/value arrays.
#[no_mangle]
pub unsafe extern "C" fn umbral_verify(
    policy: *const UmbralPolicy,
    id: *const c_char,
    names: *const *const c_char,
    values: *const f64,
    count: usize,
    out: *mut UmbralReport,
) -> UmbralStatus {
    guard(|| {
        let id = c_str(id, "id")?;
        let mut params = Params::new();
        if count > 0 {
            if names.is_null() || values.is_null() {
                return Err(null("parameter arrays"));
            }
            for i in 0..count {
                let name = c_str(*names.add(i), "parameter name")?;
                params.insert(name.to_string(), *values.add(i));
            }
        }
        let report = identities::verify(id, &params, &policy_ref(policy))?;
        write(out, (&report).into())
    })
}

/// Runs every identity over its default grid; free the list with
/// [`umbral_report_list_free`].
#[no_mangle]
pub unsafe extern "C" fn umbral_verify_all(
    policy: *const UmbralPolicy,
    parallelism: usize,
    out: *mut *mut UmbralReportList,
) -> UmbralStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let reports = identities::verify_all(&policy_ref(policy), parallelism.max(1))?;
        let list = UmbralReportList {
            reports: reports.iter().map(UmbralReport::from).collect(),
        };
        out.write(Box::into_raw(Box::new(list)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn umbral_report_list_len(list: *const UmbralReportList) -> usize {
    list.as_ref().map_or(0, |l| l.reports.len())
}

#[no_mangle]
pub unsafe extern "C" fn umbral_report_list_get(
    list: *const UmbralReportList,
    index: usize,
    out: *mut UmbralReport,
) -> UmbralStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        let r = l.reports.get(index).ok_or_else(|| {
            UmbralStatusError(
                UmbralStatus::InvalidArgument,
                format!("index {index} out of range for {} reports", l.reports.len()),
            )
        })?;
        write(out, *r)
    })
}

#[no_mangle]
pub unsafe extern "C" fn umbral_report_list_free(list: *mut UmbralReportList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}
