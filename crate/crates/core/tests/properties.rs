use std::f64::consts::PI;

use proptest::prelude::*;

use umbral_special::gamma::{gamma, rgamma};
use umbral_special::identities::{delta_generating_sum, humbert_generating_sum, sweep, SweepOptions};
use umbral_special::quad::{integrate, QuadraturePlan};
use umbral_special::specfun::{cyl_j, humbert2, rayleigh_jn, sph_j, struve_h};
use umbral_special::umbral::{reduce, UmbralExpr};
use umbral_special::{EvalPolicy, Path};

fn policy() -> EvalPolicy {
    EvalPolicy::default()
}

fn damped(k: f64) -> impl Fn(f64) -> umbral_special::Result<f64> {
    move |x: f64| Ok((k * x).cos() * (-0.3 * x).exp())
}

fn quad(f: impl Fn(f64) -> umbral_special::Result<f64>, a: f64, b: f64) -> f64 {
    integrate(f, &QuadraturePlan::finite(a, b).with_targets(1e-14, 1e-13)).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadrature_is_additive(a in -3.0..0.0f64, split in 0.05..0.95f64, len in 0.5..6.0f64, k in 0.0..8.0f64) {
        let b = a + len;
        let c = a + split * len;
        let whole = quad(damped(k), a, b);
        let parts = quad(damped(k), a, c) + quad(damped(k), c, b);
        prop_assert!((whole - parts).abs() <= 1e-12 * (1.0 + whole.abs()));
    }

    #[test]
    fn quadrature_is_deterministic(a in -3.0..0.0f64, len in 0.5..6.0f64, k in 0.0..8.0f64) {
        let plan = QuadraturePlan::finite(a, a + len);
        let r1 = integrate(damped(k), &plan).unwrap();
        let r2 = integrate(damped(k), &plan).unwrap();
        prop_assert_eq!(r1.value.to_bits(), r2.value.to_bits());
        prop_assert_eq!(r1.error_estimate.to_bits(), r2.error_estimate.to_bits());
    }

    #[test]
    fn sph_j_parity(n in 0i32..8, x in 0.1..30.0f64) {
        let p = policy();
        let pos = sph_j(n, x, &p).unwrap().value;
        let neg = sph_j(n, -x, &p).unwrap().value;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((neg - sign * pos).abs() <= 1e-14 * pos.abs().max(1e-300) + 1e-300);
    }

    #[test]
    fn sph_j_matches_half_integer_bessel(n in 0i32..6, x in 0.2..40.0f64) {
        let p = policy();
        let sph = sph_j(n, x, &p).unwrap().value;
        let cyl = (PI / (2.0 * x)).sqrt() * cyl_j(n as f64 + 0.5, x, &p).unwrap().value;
        prop_assert!((sph - cyl).abs() <= 1e-11 * (1.0 + sph.abs()));
    }

    #[test]
    fn sph_j_series_and_rayleigh_agree(n in 0usize..6, x in 2.0..20.0f64) {
        let series = sph_j(n as i32, x, &policy()).unwrap().value;
        let closed = rayleigh_jn(n, x).unwrap();
        prop_assert!((series - closed).abs() <= 1e-10);
    }

    #[test]
    fn forced_paths_agree_for_struve(alpha in 0.0..2.0f64, x in 0.5..20.0f64) {
        let p = policy();
        let auto = struve_h(alpha, x, &p).unwrap().value;
        let extended = struve_h(alpha, x, &p.with_forced_path(Path::ExtendedSeries)).unwrap().value;
        prop_assert!((auto - extended).abs() <= 1e-10 * (1.0 + auto.abs()));
    }

    #[test]
    fn reciprocal_gamma_is_reciprocal(x in 0.1..30.0f64) {
        prop_assert!((gamma(x).unwrap() * rgamma(x) - 1.0).abs() <= 1e-13);
    }

    #[test]
    fn gamma_recurrence(x in 0.1..30.0f64) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs());
    }

    #[test]
    fn reduce_is_linear(c1 in -5.0..5.0f64, c2 in -5.0..5.0f64, e1 in 0.0..6.0f64, e2 in 0.0..6.0f64, s in -3.0..3.0f64) {
        let a = UmbralExpr::new(1).unwrap().with_term(c1, &[e1]).unwrap();
        let b = UmbralExpr::new(1).unwrap().with_term(c2, &[e2]).unwrap();
        let sum = a.clone().concat(&b).unwrap().scale(s);
        let split = s * (reduce(&a) + reduce(&b));
        prop_assert!((reduce(&sum) - split).abs() <= 1e-14 * (1.0 + split.abs()));
    }

    #[test]
    fn humbert_symmetric_in_indices(mu in 0.0..3.0f64, nu in 0.0..3.0f64, z in -5.0..5.0f64) {
        let p = policy();
        let a = humbert2(mu, nu, z, &p).unwrap().value;
        let b = humbert2(nu, mu, z, &p).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-14 * (1.0 + a.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn humbert_generating_truncation_shrinks(u in 0.8..1.2f64, v in 0.8..1.2f64, x in 0.2..0.8f64) {
        let p = policy();
        let closed = (u + v - x / (u * v)).exp();
        let errs: Vec<f64> = [4, 8, 12]
            .iter()
            .map(|&k| (humbert_generating_sum(u, v, x, k, &p).unwrap() - closed).abs())
            .collect();
        prop_assert!(errs[1] <= errs[0] + 1e-12 * closed, "{errs:?}");
        prop_assert!(errs[2] <= errs[1] + 1e-12 * closed, "{errs:?}");
        prop_assert!(errs[2] < 1e-6 * closed);
    }

    #[test]
    fn delta_generating_truncation_shrinks(u in 0.9..1.2f64, v in 0.9..1.2f64, x in 0.2..0.6f64, g in 1.0..2.0f64) {
        let p = policy();
        let closed = (u + v).exp() * gamma(g).unwrap() * (1.0 + (x / 2.0).powi(2) / (u * v)).powf(-g);
        let errs: Vec<f64> = [4, 8, 12]
            .iter()
            .map(|&k| (delta_generating_sum(u, v, x, g, k, &p).unwrap() - closed).abs())
            .collect();
        prop_assert!(errs[1] <= errs[0] + 1e-12 * closed, "{errs:?}");
        prop_assert!(errs[2] <= errs[1] + 1e-12 * closed, "{errs:?}");
    }
}

#[test]
fn sweep_is_independent_of_parallelism() {
    let run = |parallelism| {
        let options = SweepOptions {
            parallelism,
            seed: 7,
            timing: false,
            ids: ["I02", "I03", "I08", "I15", "I18"].map(String::from).to_vec(),
        };
        serde_json::to_string(&sweep(&policy(), &options).unwrap()).unwrap()
    };
    let serial = run(1);
    assert_eq!(serial, run(4));
    assert_eq!(serial, run(3));
}
