use std::f64::consts::PI;

use super::{central_d1, central_d2, Binding, Identity, ParamDomain, ParamSpec, Sides, FD_STEP};
use crate::error::Result;
use crate::gamma::{cos_pi, factorial, gamma, rgamma, sin_pi};
use crate::quad::{
    integrate, integrate_finite, integrate_laguerre, integrate_oscillatory, integrate_real_line, CellSpacing,
    Domain, QuadraturePlan, Strategy, Symmetry,
};
use crate::specfun::{
    anger, cyl_j, delta_fn, humbert2, humbert3, hyp1f2, mod_i0, rayleigh_jn, s1, s1_algebraic_tail, s1_parts, s2,
    s2_over_x_algebraic_tail, s2_parts, sph_j, sph_j_deriv, struve_algebraic_tail, struve_h, struve_h_parts, weber,
    EvalPolicy,
};
use crate::sum::NeumaierSum;

/// Phase of J_{μ,ν}(z) for large z is this constant times z^{1/3}.
const HUMBERT_PHASE: f64 = 2.598_076_211_353_316; // 3√3/2
const HUMBERT_CELLS: usize = 20;
/// Where the asymptotic tails of the Struve and S-integrals take over.
const TAIL_START: f64 = 60.0;
/// Double generating sums run over |m|, |n| ≤ this.
pub const GENERATING_ORDER: i32 = 14;

fn specs(list: &[(&'static str, ParamDomain)]) -> Vec<ParamSpec> {
    list.iter().map(|&(name, domain)| ParamSpec { name, domain }).collect()
}

/// Cartesian product of per-parameter grids, first parameter slowest.
fn product(axes: &[&[f64]]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

const fn bind(route: &'static str, modules: &'static [&'static str]) -> Binding {
    Binding { route, modules }
}

fn j(n: i32, x: f64, p: &EvalPolicy) -> Result<f64> {
    Ok(sph_j(n, x, p)?.value)
}

fn h(alpha: f64, x: f64, p: &EvalPolicy) -> Result<f64> {
    Ok(struve_h(alpha, x, p)?.value)
}

fn bj(nu: f64, x: f64, p: &EvalPolicy) -> Result<f64> {
    Ok(cyl_j(nu, x, p)?.value)
}

fn finite(f: impl Fn(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<f64> {
    Ok(integrate_finite(f, a, b, &QuadraturePlan::finite(a, b).with_targets(tol, tol))?.value)
}

fn cells(spacing: CellSpacing, start_x: f64, max_cells: usize, antilimit: bool, tol: f64) -> QuadraturePlan {
    QuadraturePlan::new(
        Domain::SemiInfinite(0.0),
        Strategy::Oscillatory {
            spacing,
            start_x,
            max_cells,
            antilimit,
        },
    )
    .with_targets(tol, tol)
}

fn uniform(period: f64) -> CellSpacing {
    CellSpacing::Uniform { period }
}

/// Smallest offset + kπ at or beyond `x`.
fn zero_after(offset: f64, x: f64) -> f64 {
    offset + ((x - offset) / PI).ceil() * PI
}

/// Σ_{m,n=-M}^{M} u^m v^n c(m, n)
fn double_sum(u: f64, v: f64, order: i32, c: impl Fn(i32, i32) -> Result<f64>) -> Result<f64> {
    let mut s = NeumaierSum::new();
    for m in -order..=order {
        for n in -order..=order {
            s.add(u.powi(m) * v.powi(n) * c(m, n)?);
        }
    }
    Ok(s.value())
}

/// Σ_{|m|,|n| ≤ order} u^m v^n J_{m,n}(x)
pub fn humbert_generating_sum(u: f64, v: f64, x: f64, order: i32, p: &EvalPolicy) -> Result<f64> {
    double_sum(u, v, order, |m, n| Ok(humbert2(m as f64, n as f64, x, p)?.value))
}

/// Σ_{|m|,|n| ≤ order} u^m v^n Δ_{m,n,γ}(x)
pub fn delta_generating_sum(u: f64, v: f64, x: f64, gamma_: f64, order: i32, p: &EvalPolicy) -> Result<f64> {
    double_sum(u, v, order, |m, n| Ok(delta_fn(m as f64, n as f64, gamma_, x, p)?.value))
}

pub(super) fn build() -> Vec<Identity> {
    vec![
        i01(),
        i02(),
        i03(),
        i04(),
        i05(),
        i06(),
        i07(),
        i08(),
        i09(),
        i10(),
        i11(),
        i12(),
        i13(),
        i14(),
        i15(),
        i16(),
        i17(),
        i18(),
        i19(),
        i20(),
        i21(),
        i22(),
        i23(),
        i24(),
    ]
}

fn i01() -> Identity {
    Identity {
        id: "I01",
        description: "∫_ℝ j_0(x) dx = π",
        reference: "umbral Gaussian reduction of j_0",
        params: Vec::new(),
        grid: vec![Vec::new()],
        lhs: bind("accelerated quadrature of j_0 over ℝ", &["quad", "specfun::sph_j"]),
        rhs: bind("constant π", &[]),
        relational: false,
        tol_abs: 1e-8,
        tol_rel: 1e-8,
        window_note: "absolutely convergent after pairing half-periods",
        constraint: None,
        eval: |_, p| {
            let plan = cells(uniform(PI), 0.0, 60, false, 1e-12);
            let r = integrate_real_line(|x| j(0, x, p), &plan, Symmetry::Even)?;
            Ok(Sides::new(r.value, PI))
        },
    }
}

/// j_0 continued to negative squared arguments.
fn j0_of_square(w: f64) -> f64 {
    if w > 0.0 {
        let r = w.sqrt();
        r.sin() / r
    } else if w < 0.0 {
        let r = (-w).sqrt();
        r.sinh() / r
    } else {
        1.0
    }
}

fn i02() -> Identity {
    Identity {
        id: "I02",
        description: "Σ_n t^n/n! j_n(x) = j_0(√(x² − 2xt)), truncated at n = 25",
        reference: "generating function of the spherical Bessel functions",
        params: specs(&[("t", ParamDomain::closed(-1.0, 1.0)), ("x", ParamDomain::left_open(0.0, 10.0))]),
        grid: product(&[&[-0.75, -0.25, 0.25, 0.75], &[0.5, 2.0, 5.0]]),
        lhs: bind("truncated series of sph_j values", &["specfun::sph_j"]),
        rhs: bind("sin/sinh closed form", &[]),
        relational: false,
        tol_abs: 1e-12,
        tol_rel: 1e-12,
        window_note: "the omitted terms are below 1e-17 on the domain",
        constraint: None,
        eval: |q, p| {
            let (t, x) = (q["t"], q["x"]);
            let mut s = NeumaierSum::new();
            for n in 0..=25 {
                s.add(t.powi(n) / factorial(n as usize) * j(n, x, p)?);
            }
            Ok(Sides::new(s.value(), j0_of_square(x * x - 2.0 * x * t)))
        },
    }
}

fn i03() -> Identity {
    Identity {
        id: "I03",
        description: "j_n(x) = (−x)^n (x⁻¹ d/dx)^n j_0(x)",
        reference: "Rayleigh formula",
        params: specs(&[("n", ParamDomain::integers(0.0, 30.0)), ("x", ParamDomain::left_open(0.0, 30.0))]),
        grid: product(&[&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0], &[1.0, 3.0, 7.0]]),
        lhs: bind("series with precision ladder", &["specfun::sph_j"]),
        rhs: bind("operator applied symbolically to sin x / x", &["specfun::rayleigh"]),
        relational: false,
        tol_abs: 1e-10,
        tol_rel: 1e-6,
        window_note: "closed form loses digits to cancellation for x ≪ n",
        constraint: None,
        eval: |q, p| {
            let (n, x) = (q["n"], q["x"]);
            Ok(Sides::new(j(n as i32, x, p)?, rayleigh_jn(n as usize, x)?))
        },
    }
}

/// d^n/dx^n (sin x / x) by Leibniz' rule.
fn leibniz_sinc(n: usize, x: f64) -> f64 {
    let mut s = NeumaierSum::new();
    let mut binom = 1.0;
    for k in 0..=n {
        let d_sin = (x + (n - k) as f64 * PI / 2.0).sin();
        let d_inv = if k % 2 == 0 { 1.0 } else { -1.0 } * factorial(k) / x.powi(k as i32 + 1);
        s.add(binom * d_sin * d_inv);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    s.value()
}

fn i04() -> Identity {
    Identity {
        id: "I04",
        description: "n-th derivative of j_0 as a finite sum over j_{n−k} with Hermite coefficients",
        reference: "successive derivatives through two-variable Hermite polynomials",
        params: specs(&[("n", ParamDomain::integers(0.0, 20.0)), ("x", ParamDomain::left_open(0.0, 20.0))]),
        grid: product(&[&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0], &[0.5, 2.0, 5.0]]),
        lhs: bind("Hermite-weighted sum of sph_j", &["specfun::sph_j", "specfun::sph_j_deriv"]),
        rhs: bind("Leibniz rule on sin x · x⁻¹", &[]),
        relational: false,
        tol_abs: 1e-10,
        tol_rel: 1e-6,
        window_note: "right side cancels heavily for x ≪ 1",
        constraint: None,
        eval: |q, p| {
            let (n, x) = (q["n"] as usize, q["x"]);
            Ok(Sides::new(sph_j_deriv(n, x, p)?, leibniz_sinc(n, x)))
        },
    }
}

/// b_m = ∫_ℝ j_m, both half-lines integrated.
fn b_coefficient(m: usize, p: &EvalPolicy) -> Result<f64> {
    let start = m as f64 * PI / 2.0 + 2.0 * PI;
    let plan = cells(uniform(PI), start, 80, false, 1e-13);
    Ok(integrate_real_line(|x| j(m as i32, x, p), &plan, Symmetry::General)?.value)
}

fn b_closed_form(m: usize) -> f64 {
    if m % 2 == 1 {
        0.0
    } else {
        let n = m / 2;
        PI.sqrt() * gamma(n as f64 + 0.5).unwrap_or(f64::NAN) / factorial(n)
    }
}

fn i05() -> Identity {
    Identity {
        id: "I05",
        description: "b_m = ∫_ℝ j_m: b_{2n} = √π Γ(n+1/2)/n!, b_{2n+1} = 0",
        reference: "coefficient comparison in the generating function",
        params: specs(&[("m", ParamDomain::integers(0.0, 12.0))]),
        grid: product(&[&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]]),
        lhs: bind("accelerated quadrature of j_m over both half-lines", &["quad", "specfun::sph_j"]),
        rhs: bind("gamma ratio", &[]),
        relational: false,
        tol_abs: 1e-10,
        tol_rel: 1e-6,
        window_note: "oscillatory tails start at mπ/2 + 2π",
        constraint: None,
        eval: |q, p| {
            let m = q["m"] as usize;
            Ok(Sides::new(b_coefficient(m, p)?, b_closed_form(m)))
        },
    }
}

fn i06() -> Identity {
    Identity {
        id: "I06",
        description: "Σ_n b_n t^n/n! = π I_0(t)",
        reference: "resummation of the b_n series into a modified Bessel function",
        params: specs(&[("t", ParamDomain::closed(-1.0, 1.0))]),
        grid: product(&[&[0.25, 0.5, 1.0]]),
        lhs: bind("series of quadrature-computed b_n, n ≤ 20", &["quad", "specfun::sph_j"]),
        rhs: bind("π I_0 series", &["specfun::mod_i0"]),
        relational: false,
        tol_abs: 1e-8,
        tol_rel: 1e-8,
        window_note: "terms beyond n = 20 are below 1e-18 for |t| ≤ 1",
        constraint: None,
        eval: |q, p| {
            let t = q["t"];
            let mut s = NeumaierSum::new();
            for n in 0..=20 {
                s.add(t.powi(n as i32) / factorial(n) * b_coefficient(n, p)?);
            }
            Ok(Sides::new(s.value(), PI * mod_i0(t, p)?))
        },
    }
}

/// ∫_0^∞ j_0(√(a x² + b x)) dx with cells aligned to the asymptotic zeros.
fn quadratic_half_line(a: f64, b: f64) -> Result<f64> {
    let ra = a.sqrt();
    let f = |x: f64| Ok(j0_of_square(a * x * x + b * x));
    let period = PI / ra;
    // zeros of sin(√a x + b/(2√a))
    let shift = b / (2.0 * a);
    let k = ((b.abs() / a + 1.0 + shift) / period).ceil().max(1.0);
    let start = k * period - shift;
    let head = finite(f, 0.0, start, 1e-13)?;
    let tail = integrate_oscillatory(f, start, period, &cells(uniform(period), start, 80, false, 1e-12))?;
    Ok(head + tail.value)
}

fn i07() -> Identity {
    Identity {
        id: "I07",
        description: "∫_ℝ j_0(√(a x² + b x)) dx = (π/√a) I_0(b/(2√a))",
        reference: "integral of j_0 at a quadratic argument",
        params: specs(&[("a", ParamDomain::left_open(0.0, 4.0)), ("b", ParamDomain::closed(-2.0, 2.0))]),
        grid: product(&[&[0.5, 1.0, 2.0], &[0.5, 1.0]]),
        lhs: bind("accelerated quadrature of both half-lines", &["quad"]),
        rhs: bind("π I_0 series", &["specfun::mod_i0"]),
        relational: false,
        tol_abs: 1e-8,
        tol_rel: 1e-8,
        window_note: "negative radicands continue j_0 to sinh r / r",
        constraint: None,
        eval: |q, p| {
            let (a, b) = (q["a"], q["b"]);
            let lhs = quadratic_half_line(a, b)? + quadratic_half_line(a, -b)?;
            let ra = a.sqrt();
            Ok(Sides::new(lhs, PI / ra * mod_i0(b / (2.0 * ra), p)?))
        },
    }
}

/// (x/2)^α / (√π Γ(α + 3/2))
fn struve_source(alpha: f64, x: f64) -> f64 {
    (x / 2.0).powf(alpha) * rgamma(alpha + 1.5) / PI.sqrt()
}

const STRUVE_ORDERS: &[f64] = &[0.0, 0.5, 1.0, 1.7];
const STRUVE_POINTS: &[f64] = &[0.5, 2.0, 5.0];

fn i08() -> Identity {
    Identity {
        id: "I08",
        description: "2 H'_α = H_{α−1} − H_{α+1} + (x/2)^α/(√π Γ(α+3/2))",
        reference: "Struve differentiation formula",
        params: specs(&[("alpha", ParamDomain::closed(0.0, 10.0)), ("x", ParamDomain::left_open(0.0, 20.0))]),
        grid: product(&[STRUVE_ORDERS, STRUVE_POINTS]),
        lhs: bind("finite difference of struve_h", &["specfun::struve", "fd"]),
        rhs: bind("neighbouring orders of struve_h", &["specfun::struve"]),
        relational: true,
        tol_abs: 1e-6,
        tol_rel: 1e-6,
        window_note: "finite difference step 1e-3",
        constraint: Some(|q| (q["x"] > 2.0 * FD_STEP).then_some(()).ok_or("x must exceed the stencil".into())),
        eval: |q, p| {
            let (a, x) = (q["alpha"], q["x"]);
            let d = central_d1(|y| h(a, y, p), x, FD_STEP)?;
            let rhs = 0.5 * (h(a - 1.0, x, p)? - h(a + 1.0, x, p)? + struve_source(a, x));
            Ok(Sides::new(d, rhs))
        },
    }
}

fn i09() -> Identity {
    Identity {
        id: "I09",
        description: "H_{α−1} + H_{α+1} = (2α/x) H_α + (x/2)^α/(√π Γ(α+3/2))",
        reference: "Struve three-term recursion",
        params: specs(&[("alpha", ParamDomain::closed(0.0, 10.0)), ("x", ParamDomain::left_open(0.0, 20.0))]),
        grid: product(&[STRUVE_ORDERS, STRUVE_POINTS]),
        lhs: bind("struve_h at α ± 1", &["specfun::struve"]),
        rhs: bind("struve_h at α", &["specfun::struve"]),
        relational: true,
        tol_abs: 1e-6,
        tol_rel: 1e-6,
        window_note: "all orders evaluated by the same series engine",
        constraint: None,
        eval: |q, p| {
            let (a, x) = (q["alpha"], q["x"]);
            let lhs = h(a - 1.0, x, p)? + h(a + 1.0, x, p)?;
            let rhs = 2.0 * a / x * h(a, x, p)? + struve_source(a, x);
            Ok(Sides::new(lhs, rhs))
        },
    }
}

fn i10() -> Identity {
    Identity {
        id: "I10",
        description: "x² H''_α + x H'_α + (x² − α²) H_α = 4 (x/2)^{α+1}/(√π Γ(α+1/2))",
        reference: "inhomogeneous Bessel equation for Struve functions",
        params: specs(&[("alpha", ParamDomain::closed(0.0, 10.0)), ("x", ParamDomain::left_open(0.0, 20.0))]),
        grid: product(&[STRUVE_ORDERS, STRUVE_POINTS]),
        lhs: bind("Bessel operator by finite differences", &["specfun::struve", "fd"]),
        rhs: bind("power times reciprocal gamma", &[]),
        relational: false,
        tol_abs: 1e-6,
        tol_rel: 1e-6,
        window_note: "finite difference step 1e-3",
        constraint: Some(|q| (q["x"] > 2.0 * FD_STEP).then_some(()).ok_or("x must exceed the stencil".into())),
        eval: |q, p| {
            let (a, x) = (q["alpha"], q["x"]);
            let f = |y| h(a, y, p);
            let lhs = x * x * central_d2(f, x, FD_STEP)? + x * central_d1(f, x, FD_STEP)? + (x * x - a * a) * f(x)?;
            let rhs = 4.0 * (x / 2.0).powf(a + 1.0) * rgamma(a + 0.5) / PI.sqrt();
            Ok(Sides::new(lhs, rhs))
        },
    }
}

fn i11() -> Identity {
    Identity {
        id: "I11",
        description: "H_α(x) = (x/2)^{α+1} ∫_0^∞ e^{−s} J_{1/2,α+1/2}(s (x/2)²) ds",
        reference: "Struve functions as a Laplace transform of a Humbert function",
        params: specs(&[("alpha", ParamDomain::closed(0.0, 10.0)), ("x", ParamDomain::left_open(0.0, 3.0))]),
        grid: product(&[&[0.0, 0.5, 1.0, 1.5], &[0.5, 1.0, 2.0]]),
        lhs: bind("Gauss-Laguerre quadrature of humbert2", &["quad::laguerre", "specfun::humbert"]),
        rhs: bind("struve_h", &["specfun::struve"]),
        relational: false,
        tol_abs: 1e-8,
        tol_rel: 1e-8,
        window_note: "Laguerre convergence slows as (x/2)² grows",
        constraint: None,
        eval: |q, p| {
            let (a, x) = (q["alpha"], q["x"]);
            let w = (x / 2.0) * (x / 2.0);
            let r = integrate_laguerre(|s| Ok(humbert2(0.5, a + 0.5, s * w, p)?.value), 0.0, 64)?;
            Ok(Sides::new((x / 2.0).powf(a + 1.0) * r.value, h(a, x, p)?))
        },
    }
}

fn i12() -> Identity {
    Identity {
        id: "I12",
        description: "∫_ℝ J_{μ,ν}(x²) dx = √π/(Γ(μ+1/2) Γ(ν+1/2))",
        reference: "Gaussian-type integral of the Humbert function",
        params: specs(&[("mu", ParamDomain::closed(0.0, 2.0)), ("nu", ParamDomain::closed(0.0, 2.0))]),
        grid: vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![0.5, 0.5], vec![1.0, 0.5], vec![1.0, 1.0], vec![1.5, 2.0]],
        lhs: bind("antilimit of phase-aligned cells", &["quad::oscillatory", "specfun::humbert"]),
        rhs: bind("gamma ratio", &[]),
        relational: false,
        tol_abs: 1e-6,
        tol_rel: 1e-6,
        window_note: "the integral diverges classically; the left side is the Levin antilimit",
        constraint: None,
        eval: |q, p| {
            let (mu, nu) = (q["mu"], q["nu"]);
            let spacing = CellSpacing::PowerPhase {
                scale: HUMBERT_PHASE,
                power: 2.0 / 3.0,
            };
            let start = (2.0 / HUMBERT_PHASE).powf(1.5);
            let plan = cells(spacing, start, HUMBERT_CELLS, true, 1e-10);
            let r = integrate(|x| Ok(humbert2(mu, nu, x * x, p)?.value), &plan)?;
            Ok(Sides::new(2.0 * r.value, PI.sqrt() * rgamma(mu + 0.5) * rgamma(nu + 0.5)))
        },
    }
}

fn i13() -> Identity {
    Identity {
        id: "I13",
        description: "∫_0^∞ x^{α−1} J_{μ,ν}(x) dx = Γ(α)/(Γ(μ−α+1) Γ(ν−α+1))",
        reference: "Mellin transform of the Humbert function",
        params: specs(&[
            ("alpha", ParamDomain::open(0.0, 1.0)),
            ("mu", ParamDomain::closed(0.0, 2.0)),
            ("nu", ParamDomain::closed(0.0, 2.0)),
        ]),
        grid: vec![
            vec![0.5, 0.0, 0.0],
            vec![0.25, 0.5, 0.5],
            vec![0.75, 1.0, 0.5],
            vec![0.5, 1.0, 1.0],
            vec![0.5, 2.0, 1.5],
            vec![0.9, 0.0, 2.0],
        ],
        lhs: bind("substituted head plus antilimit of cells", &["quad::oscillatory", "specfun::humbert"]),
        rhs: bind("gamma ratio", &[]),
        relational: false,
        tol_abs: 1e-6,
        tol_rel: 1e-6,
        window_note: "window α ∈ (0, 1), μ, ν ∈ [0, 2]; regularized by Levin antilimit",
        constraint: None,
        eval: |q, p| {
            let (a, mu, nu) = (q["alpha"], q["mu"], q["nu"]);
            let spacing = CellSpacing::PowerPhase {
                scale: HUMBERT_PHASE,
                power: 1.0 / 3.0,
            };
            let start = (2.0 / HUMBERT_PHASE).powi(3);
            // x = u^{1/α} removes the x^{α−1} singularity
            let head = finite(|u| Ok(humbert2(mu, nu, u.powf(1.0 / a), p)?.value / a), 0.0, start.powf(a), 1e-13)?;
            let plan = cells(spacing, start, HUMBERT_CELLS, true, 1e-10);
            let f = |x: f64| Ok(x.powf(a - 1.0) * humbert2(mu, nu, x, p)?.value);
            let tail = integrate_oscillatory(f, start, spacing, &plan)?;
            let rhs = gamma(a)? * rgamma(mu - a + 1.0) * rgamma(nu - a + 1.0);
            Ok(Sides::new(head + tail.value, rhs))
        },
    }
}

fn i14() -> Identity {
    Identity {
        id: "I14",
        description: "∫_0^∞ H_α(x) dx = −cot(απ/2), −2 < α < 0",
        reference: "integral of the Struve function over the half-line",
        params: specs(&[("alpha", ParamDomain::open(-2.0, 0.0))]),
        grid: product(&[&[-1.75, -1.5, -1.0, -0.5, -0.25]]),
        lhs: bind(
            "series quadrature to x ≈ 60, accelerated Y_α tail, term-wise algebraic tail",
            &["quad", "specfun::struve", "specfun::asymptotic"],
        ),
        rhs: bind("trigonometric closed form", &[]),
        relational: false,
        tol_abs: 1e-6,
        tol_rel: 1e-6,
        window_note: "−2 < α < 0",
        constraint: None,
        eval: |q, p| {
            let a = q["alpha"];
            // x = u^{1/(α+2)} flattens the x^{α+1} behaviour at the origin
            let pw = 1.0 / (a + 2.0);
            let near = finite(|u| Ok(h(a, u.powf(pw), p)? * pw * u.powf(pw - 1.0)), 0.0, 1.0, 1e-13)?;
            let x0 = zero_after(a * PI / 2.0 + PI / 4.0, TAIL_START);
            let mid = finite(|x| h(a, x, p), 1.0, x0, 1e-13)?;
            let plan = cells(uniform(PI), x0, 60, false, 1e-11);
            let osc = integrate_oscillatory(|x| Ok(struve_h_parts(a, x).oscillatory), x0, PI, &plan)?;
            let (alg, _) = struve_algebraic_tail(a, x0);
            let rhs = -cos_pi(a / 2.0) / sin_pi(a / 2.0);
            Ok(Sides::new(near + mid + osc.value + alg, rhs))
        },
    }
}

fn i15() -> Identity {
    Identity {
        id: "I15",
        description: "Δ_{α,β,γ}(x) = Γ(γ)/(Γ(1+α) Γ(1+β)) ₁F₂(γ; 1+α, 1+β; −x²/4)",
        reference: "auxiliary three-parameter function and its hypergeometric form",
        params: specs(&[
            ("alpha", ParamDomain::closed(0.0, 5.0)),
            ("beta", ParamDomain::closed(0.0, 5.0)),
            ("gamma", ParamDomain::left_open(0.0, 5.0)),
            ("x", ParamDomain::left_open(0.0, 6.0)),
        ]),
        grid: product(&[&[0.0, 0.5, 1.0], &[0.0, 0.5, 1.0], &[0.5, 1.0], &[0.5, 1.0, 2.0, 5.0]]),
        lhs: bind("generalized Gauss-Laguerre quadrature of humbert2", &["quad::laguerre", "specfun::humbert"]),
        rhs: bind("₁F₂ series", &["specfun::hyp1f2"]),
        relational: false,
        tol_abs: 1e-12,
        tol_rel: 1e-9,
        window_note: "Laguerre weight s^{γ−1}",
        constraint: None,
        eval: |q, p| {
            let (a, b, g, x) = (q["alpha"], q["beta"], q["gamma"], q["x"]);
            let w = x * x / 4.0;
            let r = integrate_laguerre(|s| Ok(humbert2(a, b, s * w, p)?.value), g - 1.0, 96)?;
            let rhs = gamma(g)? * rgamma(1.0 + a) * rgamma(1.0 + b) * hyp1f2(g, 1.0 + a, 1.0 + b, -w, p)?.value;
            Ok(Sides::new(r.value, rhs))
        },
    }
}

const GENERATING_POINTS: &[[f64; 3]] = &[[1.0, 1.0, 0.5], [0.8, 1.2, 0.6], [1.1, 0.9, 0.3], [1.2, 1.1, 0.8]];

fn i16() -> Identity {
    Identity {
        id: "I16",
        description: "Σ_{m,n} u^m v^n J_{m,n}(x) = exp(u + v − x/(uv)), |m|, |n| ≤ 14",
        reference: "double generating function of the Humbert functions",
        params: specs(&[
            ("u", ParamDomain::closed(0.5, 1.5)),
            ("v", ParamDomain::closed(0.5, 1.5)),
            ("x", ParamDomain::left_open(0.0, 1.0)),
        ]),
        grid: GENERATING_POINTS.iter().map(|p| p.to_vec()).collect(),
        lhs: bind("truncated double sum of humbert2", &["specfun::humbert"]),
        rhs: bind("exponential", &[]),
        relational: false,
        tol_abs: 1e-12,
        tol_rel: 1e-10,
        window_note: "truncation error below 1e-11 on the domain",
        constraint: None,
        eval: |q, p| {
            let (u, v, x) = (q["u"], q["v"], q["x"]);
            let lhs = humbert_generating_sum(u, v, x, GENERATING_ORDER, p)?;
            Ok(Sides::new(lhs, (u + v - x / (u * v)).exp()))
        },
    }
}

fn i17() -> Identity {
    Identity {
        id: "I17",
        description: "Σ_{m,n} u^m v^n Δ_{m,n,γ}(x) = e^{u+v} Γ(γ) (1 + (x/2)²/(uv))^{−γ}, |m|, |n| ≤ 14",
        reference: "generating function of the auxiliary Δ function",
        params: specs(&[
            ("u", ParamDomain::closed(0.5, 1.5)),
            ("v", ParamDomain::closed(0.5, 1.5)),
            ("x", ParamDomain::left_open(0.0, 1.0)),
            ("gamma", ParamDomain::left_open(0.0, 4.0)),
        ]),
        grid: GENERATING_POINTS
            .iter()
            .flat_map(|p| [1.0, 2.0].map(|g| vec![p[0], p[1], p[2], g]))
            .collect(),
        lhs: bind("truncated double sum of delta_fn", &["specfun::delta"]),
        rhs: bind("binomial closed form", &[]),
        relational: false,
        tol_abs: 1e-12,
        tol_rel: 1e-10,
        window_note: "(x/2)² < uv",
        constraint: Some(|q| {
            let w = q["x"] * q["x"] / 4.0;
            (w < q["u"] * q["v"]).then_some(()).ok_or("(x/2)² must be below uv".into())
        }),
        eval: |q, p| {
            let (u, v, x, g) = (q["u"], q["v"], q["x"], q["gamma"]);
            let lhs = delta_generating_sum(u, v, x, g, GENERATING_ORDER, p)?;
            let w = x * x / 4.0;
            Ok(Sides::new(lhs, (u + v).exp() * gamma(g)? * (1.0 + w / (u * v)).powf(-g)))
        },
    }
}

fn i18() -> Identity {
    Identity {
        id: "I18",
        description: "J_μ J_ν = (x/2)^{μ+ν} ∫_0^∞ e^{−s} s^{μ+ν} J_{μ,ν,μ+ν}(s² x²/4) ds",
        reference: "product of two Bessel functions through a three-index Humbert function",
        params: specs(&[
            ("mu", ParamDomain::closed(0.0, 3.0)),
            ("nu", ParamDomain::closed(0.0, 3.0)),
            ("x", ParamDomain::left_open(0.0, 4.0)),
        ]),
        grid: product(&[&[0.0, 0.5], &[0.0, 0.5], &[0.5, 1.0, 3.0]])
            .into_iter()
            .filter(|g| g[0] == g[1])
            .chain(product(&[&[1.0], &[2.0], &[0.5, 1.0, 3.0]]))
            .collect(),
        lhs: bind("product of cyl_j", &["specfun::cyl_j"]),
        rhs: bind("generalized Gauss-Laguerre quadrature of humbert3", &["quad::laguerre", "specfun::humbert"]),
        relational: false,
        tol_abs: 1e-12,
        tol_rel: 1e-8,
        window_note: "Laguerre integrand grows like exp(c √s) for larger x",
        constraint: None,
        eval: |q, p| {
            let (mu, nu, x) = (q["mu"], q["nu"], q["x"]);
            let w = x * x / 4.0;
            let r = integrate_laguerre(|s| Ok(humbert3(mu, nu, mu + nu, s * s * w, p)?.value), mu + nu, 96)?;
            let rhs = (x / 2.0).powf(mu + nu) * r.value;
            Ok(Sides::new(bj(mu, x, p)? * bj(nu, x, p)?, rhs))
        },
    }
}

fn i19() -> Identity {
    Identity {
        id: "I19",
        description: "∫_0^∞ (x/2)^{−μ−ν} J_μ J_ν dx = √π Γ(μ+ν)/(Γ(μ+1/2) Γ(ν+1/2) Γ(μ+ν+1/2))",
        reference: "integral of a Bessel product via its Humbert representation",
        params: specs(&[("mu", ParamDomain::closed(0.0, 3.0)), ("nu", ParamDomain::closed(0.0, 3.0))]),
        grid: vec![vec![0.5, 0.5], vec![0.25, 0.5], vec![0.75, 0.75], vec![1.0, 0.5], vec![1.0, 1.0], vec![1.5, 1.0]],
        lhs: bind("accelerated quadrature of the Bessel product", &["quad", "specfun::cyl_j"]),
        rhs: bind("gamma ratio", &[]),
        relational: false,
        tol_abs: 1e-6,
        tol_rel: 1e-6,
        window_note: "μ + ν ∈ (0.5, 3) and |μ − ν| ≠ 1",
        constraint: Some(|q| {
            let (mu, nu) = (q["mu"], q["nu"]);
            if !(mu + nu > 0.5 && mu + nu < 3.0) {
                Err("μ + ν must lie in (0.5, 3)".into())
            } else if ((mu - nu).abs() - 1.0).abs() < 1e-9 {
                Err("|μ − ν| = 1 leaves no smooth tail to accelerate".into())
            } else {
                Ok(())
            }
        }),
        eval: |q, p| {
            let (mu, nu) = (q["mu"], q["nu"]);
            let f = |x: f64| Ok((x / 2.0).powf(-mu - nu) * bj(mu, x, p)? * bj(nu, x, p)?);
            let r = integrate(f, &cells(uniform(PI), 10.0 * PI, 80, false, 1e-11))?;
            let rhs = PI.sqrt() * gamma(mu + nu)? * rgamma(mu + 0.5) * rgamma(nu + 0.5) * rgamma(mu + nu + 0.5);
            Ok(Sides::new(r.value, rhs))
        },
    }
}

fn i20() -> Identity {
    Identity {
        id: "I20",
        description: "Anger–Weber decomposition: 𝐉_n = J_n for integer n (kind 0), 𝐄_0 = −H_0 (kind 1)",
        reference: "matrix form of the Anger and Weber functions",
        params: specs(&[
            ("kind", ParamDomain::integers(0.0, 1.0)),
            ("n", ParamDomain::integers(0.0, 10.0)),
            ("x", ParamDomain::left_open(0.0, 30.0)),
        ]),
        grid: product(&[&[0.0], &[0.0, 1.0, 2.0, 3.0], &[0.5, 2.0, 5.0, 20.0]])
            .into_iter()
            .chain(product(&[&[1.0], &[0.0], &[0.5, 2.0, 5.0, 20.0]]))
            .collect(),
        lhs: bind("S₁/S₂ combination", &["specfun::anger"]),
        rhs: bind("Bessel or Struve series", &["specfun::cyl_j", "specfun::struve"]),
        relational: false,
        tol_abs: 1e-10,
        tol_rel: 1e-10,
        window_note: "kind 1 only at n = 0",
        constraint: Some(|q| {
            (q["kind"] == 0.0 || q["n"] == 0.0)
                .then_some(())
                .ok_or("kind 1 is defined only for n = 0".into())
        }),
        eval: |q, p| {
            let (n, x) = (q["n"], q["x"]);
            if q["kind"] == 0.0 {
                Ok(Sides::new(anger(n, x, p)?, bj(n, x, p)?))
            } else {
                Ok(Sides::new(weber(0.0, x, p)?, -h(0.0, x, p)?))
            }
        },
    }
}

fn i21() -> Identity {
    Identity {
        id: "I21",
        description: "∫_0^∞ S₁(ν, x) dx = cos(νπ/2)",
        reference: "half-line integral of the first Anger-Weber component",
        params: specs(&[("nu", ParamDomain::closed(-1.5, 1.5))]),
        grid: product(&[&[-0.5, 0.0, 0.5, 1.0, 1.5]]),
        lhs: bind(
            "series quadrature to x ≈ 60, accelerated oscillatory tail, term-wise algebraic tail",
            &["quad", "specfun::anger", "specfun::asymptotic"],
        ),
        rhs: bind("cosine", &[]),
        relational: false,
        tol_abs: 1e-6,
        tol_rel: 1e-6,
        window_note: "|ν| ≤ 1.5",
        constraint: None,
        eval: |q, p| {
            let nu = q["nu"];
            let x0 = zero_after(3.0 * PI / 4.0, TAIL_START);
            let head = finite(|x| Ok(s1(nu, x, p)?.value), 0.0, x0, 1e-13)?;
            let plan = cells(uniform(PI), x0, 60, false, 1e-11);
            let osc = integrate_oscillatory(|x| Ok(s1_parts(nu, x).oscillatory), x0, PI, &plan)?;
            let (alg, _) = s1_algebraic_tail(nu, x0);
            Ok(Sides::new(head + osc.value + alg, cos_pi(nu / 2.0)))
        },
    }
}

fn i22() -> Identity {
    Identity {
        id: "I22",
        description: "∫_0^∞ S₂(ν, x)/x dx = sin(νπ/2)/ν",
        reference: "half-line integral of the second Anger-Weber component",
        params: specs(&[("nu", ParamDomain::closed(-1.5, 1.5))]),
        grid: product(&[&[-0.5, 0.5, 1.0, 1.5]]),
        lhs: bind(
            "series quadrature to x ≈ 60, accelerated oscillatory tail, term-wise algebraic tail",
            &["quad", "specfun::anger", "specfun::asymptotic"],
        ),
        rhs: bind("sine over ν", &[]),
        relational: false,
        tol_abs: 1e-6,
        tol_rel: 1e-6,
        window_note: "0 < |ν| ≤ 1.5",
        constraint: Some(|q| (q["nu"] != 0.0).then_some(()).ok_or("ν must be nonzero".into())),
        eval: |q, p| {
            let nu = q["nu"];
            let x0 = zero_after(PI / 4.0, TAIL_START);
            let head = finite(|x| Ok(s2(nu, x, p)?.value / x), 0.0, x0, 1e-13)?;
            let plan = cells(uniform(PI), x0, 60, false, 1e-11);
            let osc = integrate_oscillatory(|x| Ok(s2_parts(nu, x).oscillatory / x), x0, PI, &plan)?;
            let (alg, _) = s2_over_x_algebraic_tail(nu, x0);
            Ok(Sides::new(head + osc.value + alg, sin_pi(nu / 2.0) / nu))
        },
    }
}

fn i23() -> Identity {
    Identity {
        id: "I23",
        description: "x² j''_n + 2x j'_n + (x² − n(n+1)) j_n = 0",
        reference: "spherical Bessel differential equation",
        params: specs(&[("n", ParamDomain::integers(0.0, 30.0)), ("x", ParamDomain::left_open(0.0, 30.0))]),
        grid: product(&[&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0], &[0.5, 2.0, 5.0]]),
        lhs: bind("ODE residual by finite differences", &["specfun::sph_j", "fd"]),
        rhs: bind("zero", &[]),
        relational: false,
        tol_abs: 1e-6,
        tol_rel: 1e-6,
        window_note: "relative error taken against x²|j''_n|",
        constraint: Some(|q| (q["x"] > 2.0 * FD_STEP).then_some(()).ok_or("x must exceed the stencil".into())),
        eval: |q, p| {
            let (n, x) = (q["n"], q["x"]);
            let f = |y| j(n as i32, y, p);
            let d2 = central_d2(f, x, FD_STEP)?;
            let lhs = x * x * d2 + 2.0 * x * central_d1(f, x, FD_STEP)? + (x * x - n * (n + 1.0)) * f(x)?;
            Ok(Sides::new(lhs, 0.0).with_scale(x * x * d2))
        },
    }
}

fn i24() -> Identity {
    Identity {
        id: "I24",
        description: "shift operators: (ν/x ∓ d/dx) J_ν = J_{ν±1} (family 0, 1); \
                      (α/x ∓ d/dx) H_α = H_{α±1} ∓ source (family 2, 3)",
        reference: "raising and lowering operators on Bessel and Struve functions",
        params: specs(&[
            ("family", ParamDomain::integers(0.0, 3.0)),
            ("nu", ParamDomain::closed(0.0, 10.0)),
            ("x", ParamDomain::left_open(0.0, 20.0)),
        ]),
        grid: product(&[&[0.0, 1.0, 2.0, 3.0], &[0.5, 1.5, 2.5], &[0.5, 2.0, 5.0]]),
        lhs: bind("operator applied by finite differences", &["specfun::cyl_j", "specfun::struve", "fd"]),
        rhs: bind("neighbouring order", &["specfun::cyl_j", "specfun::struve"]),
        relational: true,
        tol_abs: 1e-6,
        tol_rel: 1e-6,
        window_note: "finite difference step 1e-3",
        constraint: Some(|q| (q["x"] > 2.0 * FD_STEP).then_some(()).ok_or("x must exceed the stencil".into())),
        eval: |q, p| {
            let (fam, nu, x) = (q["family"] as u8, q["nu"], q["x"]);
            let f = |order: f64, y: f64| if fam < 2 { bj(order, y, p) } else { h(order, y, p) };
            let d = central_d1(|y| f(nu, y), x, FD_STEP)?;
            let v = f(nu, x)?;
            let s = match fam {
                0 => Sides::new(nu / x * v - d, f(nu + 1.0, x)?),
                1 => Sides::new(nu / x * v + d, f(nu - 1.0, x)?),
                // the lowering side has no source term
                2 => Sides::new(nu / x * v - d, f(nu + 1.0, x)? - struve_source(nu, x)),
                _ => Sides::new(nu / x * v + d, f(nu - 1.0, x)?),
            };
            Ok(s)
        },
    }
}
