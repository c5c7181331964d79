use std::f64::consts::PI;

use umbral_special::gamma::gamma;
use umbral_special::quad::{
    integrate, integrate_finite, integrate_laguerre, integrate_oscillatory, integrate_real_line, CellSpacing, Domain,
    QuadStatus, QuadraturePlan, Strategy, Symmetry,
};
use umbral_special::specfun::{cyl_j, humbert2, sph_j, struve_h};
use umbral_special::{EvalPolicy, Error, Result};

fn p() -> EvalPolicy {
    EvalPolicy::default()
}

fn oscillatory(start_x: f64, spacing: CellSpacing, max_cells: usize, antilimit: bool, tol: f64) -> QuadraturePlan {
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

#[test]
fn finite_examples() {
    let plan = QuadraturePlan::finite(0.0, 1.0);
    let r = integrate(|x| Ok(x * x), &plan).unwrap();
    assert!((r.value - 1.0 / 3.0).abs() <= 1e-14);
    assert_eq!(r.status, QuadStatus::Converged);

    let r = integrate(|x: f64| Ok(x.sin()), &QuadraturePlan::finite(0.0, PI)).unwrap();
    assert!((r.value - 2.0).abs() <= 1e-14);

    // oracle: Σ (−1)^k / (4^k (k!)² (2k+1)), summed independently here
    let mut series = 0.0;
    let mut c = 1.0;
    for k in 0..30 {
        if k > 0 {
            c *= -1.0 / (4.0 * (k * k) as f64);
        }
        series += c / (2 * k + 1) as f64;
    }
    assert!((series - 0.9197304100897603).abs() < 1e-15);
    let r = integrate(|x| Ok(cyl_j(0.0, x, &p())?.value), &plan).unwrap();
    assert!((r.value - 0.9197304100897603).abs() <= 1e-14, "{}", r.value);
}

#[test]
fn non_finite_integrand_is_an_error() {
    let err = integrate(|x: f64| Ok(1.0 / (x - 0.5)), &QuadraturePlan::finite(0.0, 1.0)).unwrap_err();
    assert!(matches!(err, Error::NonFiniteIntegrand { .. }));
}

#[test]
fn invalid_plans() {
    assert!(matches!(
        QuadraturePlan::finite(1.0, 0.0).validate(),
        Err(Error::InvalidPlan(_))
    ));
    let plan = QuadraturePlan::new(Domain::SemiInfinite(0.0), Strategy::Laguerre { sigma: 0.0, nodes: 4 });
    assert!(matches!(plan.validate(), Err(Error::NodeLimit { .. })));
    assert!(integrate_laguerre(|_| Ok(1.0), -1.5, 16).is_err());
}

#[test]
fn laguerre_examples() {
    assert!((integrate_laguerre(|_| Ok(1.0), 0.0, 16).unwrap().value - 1.0).abs() < 1e-14);
    assert!((integrate_laguerre(|_| Ok(1.0), 1.0, 16).unwrap().value - 1.0).abs() < 1e-14);

    // H_{1/2}(1) = (1/2)^{3/2} ∫ e^{−s} J_{1/2,1}(s/4) ds
    let r = integrate_laguerre(|s| Ok(humbert2(0.5, 1.0, 0.25 * s, &p())?.value), 0.0, 64).unwrap();
    let h = struve_h(0.5, 1.0, &p()).unwrap().value;
    assert!((0.5f64.powf(1.5) * r.value - h).abs() <= 1e-10);
}

#[test]
fn laguerre_is_exact_for_low_degree_polynomials() {
    for sigma in [0.0, -0.5, 0.5, 1.5] {
        for nodes in [8usize, 16, 32] {
            for k in [0, 1, nodes, 2 * nodes - 1] {
                let r = integrate_laguerre(|s: f64| Ok(s.powi(k as i32)), sigma, nodes).unwrap();
                let exact = gamma(sigma + k as f64 + 1.0).unwrap();
                let rel = (r.value - exact).abs() / exact;
                assert!(rel <= 1e-13, "σ={sigma}, n={nodes}, k={k}: rel {rel:e}");
            }
        }
    }
}

#[test]
fn oscillatory_examples() {
    let sinc = |x: f64| Ok(if x == 0.0 { 1.0 } else { x.sin() / x });
    let r = integrate(sinc, &oscillatory(PI, CellSpacing::Uniform { period: PI }, 60, false, 1e-12)).unwrap();
    assert!((r.value - PI / 2.0).abs() <= 1e-9, "{}", r.value);

    // J_0 zeros approach (k − 1/4)π
    let start = 0.75 * PI + 10.0 * PI;
    let r = integrate(
        |x| Ok(cyl_j(0.0, x, &p())?.value),
        &oscillatory(start, CellSpacing::Uniform { period: PI }, 60, false, 1e-12),
    )
    .unwrap();
    assert!((r.value - 1.0).abs() <= 1e-8, "{}", r.value);
}

#[test]
fn compact_support_tail_is_zero() {
    let bump = |x: f64| Ok(if x < 3.0 { (x * (3.0 - x)).powi(2) } else { 0.0 });
    let plan = oscillatory(1.0, CellSpacing::Uniform { period: 1.0 }, 40, false, 1e-12);
    let tail = integrate_oscillatory(bump, 1.0, 1.0, &plan).unwrap();
    let direct = integrate_finite(bump, 1.0, 3.0, &QuadraturePlan::finite(1.0, 3.0)).unwrap();
    assert!((tail.value - direct.value).abs() <= 1e-12);
}

#[test]
fn real_line_examples() {
    let plan = QuadraturePlan::new(Domain::RealLine, Strategy::Adaptive);
    let r = integrate_real_line(|x: f64| Ok((-x * x).exp()), &plan, Symmetry::Even).unwrap();
    assert!((r.value - PI.sqrt()).abs() <= 1e-12);
    let r = integrate_real_line(|x: f64| Ok((-x * x).exp()), &plan, Symmetry::General).unwrap();
    assert!((r.value - PI.sqrt()).abs() <= 1e-12);

    let plan = oscillatory(PI, CellSpacing::Uniform { period: PI }, 60, false, 1e-12);
    let r = integrate_real_line(|x| Ok(sph_j(0, x, &p())?.value), &plan, Symmetry::Even).unwrap();
    assert!((r.value - PI).abs() <= 1e-8);

    // J_{0,0}(x²): the cell phase grows like (3√3/2) x^{2/3}; regularized value
    let phase = 1.5 * 3f64.sqrt();
    let start = (2.0 / phase).powf(1.5);
    let plan = oscillatory(start, CellSpacing::PowerPhase { scale: phase, power: 2.0 / 3.0 }, 20, true, 1e-10);
    let r = integrate_real_line(|x| Ok(humbert2(0.0, 0.0, x * x, &p())?.value), &plan, Symmetry::Even).unwrap();
    assert!((r.value - 0.5641895835477563).abs() <= 1e-6, "{}", r.value);
}

fn brute_cells(f: impl Fn(f64) -> Result<f64>, start: f64, cells: usize) -> (f64, f64) {
    let mut sum = 0.0;
    let mut prev = 0.0;
    for k in 0..cells {
        let (a, b) = (start + k as f64 * PI, start + (k + 1) as f64 * PI);
        prev = sum;
        sum += integrate_finite(&f, a, b, &QuadraturePlan::finite(a, b).with_targets(1e-15, 1e-13))
            .unwrap()
            .value;
    }
    (prev, sum)
}

#[test]
fn accelerated_matches_brute_force_cells() {
    for decay in [1.5, 2.0] {
        let f = move |x: f64| Ok(x.cos() / (1.0 + x).powf(decay));
        let start = 0.5 * PI;
        let (prev, last) = brute_cells(f, start, 10_000);
        // the mean of two consecutive partial sums cancels the leading alternating error
        let brute = 0.5 * (prev + last);
        let fast = integrate_oscillatory(f, start, PI, &oscillatory(start, CellSpacing::Uniform { period: PI }, 60, false, 1e-12))
            .unwrap();
        assert!((fast.value - brute).abs() <= 1e-7, "decay {decay}: {} vs {brute}", fast.value);
    }
}
