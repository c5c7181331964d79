//! Gamma function, its reciprocal, and the two-variable Hermite polynomials.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which Γ(x) is finite in f64.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// Highest degree accepted by [`hermite2`].
pub const HERMITE_MAX_DEGREE: usize = 200;

fn factorials() -> &'static [f64; 171] {
    static TABLE: OnceLock<[f64; 171]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [1.0; 171];
        for k in 1..171 {
            t[k] = t[k - 1] * k as f64;
        }
        t
    })
}

/// n! for n <= 170, `inf` above.
pub fn factorial(n: usize) -> f64 {
    if n <= 170 {
        factorials()[n]
    } else {
        f64::INFINITY
    }
}

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let a = x.abs();
    let r = a - 2.0 * (a / 2.0).floor();
    let v = if r == 0.0 || r == 1.0 {
        0.0
    } else if r < 1.0 {
        sin_pi_half(r.min(1.0 - r))
    } else {
        let s = r - 1.0;
        -sin_pi_half(s.min(1.0 - s))
    };
    sign * v
}

/// cos(πx) with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let a = x.abs();
    let r = a - 2.0 * (a / 2.0).floor();
    if r == 0.5 || r == 1.5 {
        return 0.0;
    }
    if r < 0.5 {
        sin_pi_half(0.5 - r)
    } else if r < 1.5 {
        -cos_mid(r - 1.0)
    } else {
        sin_pi_half(r - 1.5)
    }
}

// cos(π s) for s in [-1/2, 1/2]
fn cos_mid(s: f64) -> f64 {
    let s = s.abs();
    if s <= 0.25 {
        (PI * s).cos()
    } else {
        (PI * (0.5 - s)).sin()
    }
}

// sin(π t) for t in [0, 1/2]
fn sin_pi_half(t: f64) -> f64 {
    if t <= 0.25 {
        (PI * t).sin()
    } else {
        (PI * (0.5 - t)).cos()
    }
}

fn lanczos_sum(z: f64) -> f64 {
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    a
}

fn gamma_positive(x: f64) -> f64 {
    if x == x.floor() && x <= 171.0 {
        return factorials()[x as usize - 1];
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let a = lanczos_sum(z);
    let p = t.powf((z + 0.5) / 2.0);
    (2.0 * PI).sqrt() * p * (p * (-t).exp()) * a
}

/// Γ(x) for real x.
///
/// Non-positive integers are poles. Arguments above [`GAMMA_MAX_ARG`] overflow.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow(format!("gamma({x}) exceeds f64 range")));
    }
    if x >= 0.5 {
        Ok(gamma_positive(x))
    } else {
        let g = gamma_positive(1.0 - x);
        Ok(PI / (sin_pi(x) * g))
    }
}

/// 1/Γ(x), entire; exactly zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        if x > GAMMA_MAX_ARG {
            return (-ln_gamma_positive(x)).exp();
        }
        1.0 / gamma_positive(x)
    } else {
        let y = 1.0 - x;
        if y > GAMMA_MAX_ARG {
            // Γ(1-x) overflows; fold through logarithms
            let s = sin_pi(x);
            return s.signum() * (ln_gamma_positive(y) + s.abs().ln() - PI.ln()).exp();
        }
        sin_pi(x) * gamma_positive(y) / PI
    }
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        return ln_gamma_positive(x + 1.0) - x.ln();
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma needs x > 0, got {x}")));
    }
    if x == x.floor() && x <= 171.0 {
        return Ok(factorials()[x as usize - 1].ln());
    }
    Ok(ln_gamma_positive(x))
}

/// Coefficients n!/(k!(n-2k)!) of H_n(y, z) = Σ_k c_k y^(n-2k) z^k.
#[derive(Debug, Clone, PartialEq)]
pub struct Hermite2Coeffs {
    degree: usize,
    coeffs: Vec<f64>,
}

impl Hermite2Coeffs {
    pub fn new(degree: usize) -> Result<Self> {
        if degree > HERMITE_MAX_DEGREE {
            return Err(Error::DegreeLimit {
                degree,
                limit: HERMITE_MAX_DEGREE,
            });
        }
        let mut coeffs = Vec::with_capacity(degree / 2 + 1);
        let mut c = 1.0;
        coeffs.push(c);
        for k in 0..degree / 2 {
            let m = (degree - 2 * k) as f64;
            c = c * (m * (m - 1.0)) / (k + 1) as f64;
            coeffs.push(c);
        }
        Ok(Self { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, y: f64, z: f64) -> f64 {
        let mut acc = NeumaierSum::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc.add(c * y.powi((self.degree - 2 * k) as i32) * z.powi(k as i32));
        }
        acc.value()
    }
}

/// Two-variable Hermite polynomial H_n(y, z).
pub fn hermite2(n: usize, y: f64, z: f64) -> Result<f64> {
    Ok(Hermite2Coeffs::new(n)?.eval(y, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn known_values() {
        assert!(rel(gamma(4.5).unwrap(), 11.631_728_396_567_448) < 1e-13);
        assert!(rel(rgamma(1.5), std::f64::consts::FRAC_2_SQRT_PI) < 1e-13);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-14);
        // values from mpmath at 30 digits
        assert!(rel(gamma(0.1).unwrap(), 9.513_507_698_668_731) < 1e-13);
        assert!(rel(gamma(-2.7).unwrap(), -0.931_082_784_838_963_9) < 1e-13);
        assert!(rel(gamma(100.3).unwrap(), 3.711_481_867_182_676_7e156) < 1e-12);
        assert_eq!(gamma(6.0).unwrap(), 120.0);
    }

    #[test]
    fn poles_and_overflow() {
        assert_eq!(gamma(0.0), Err(Error::Pole(0.0)));
        assert_eq!(gamma(-3.0), Err(Error::Pole(-3.0)));
        assert!(matches!(gamma(172.0), Err(Error::Overflow(_))));
        assert_eq!(rgamma(-3.0), 0.0);
        assert_eq!(rgamma(0.0), 0.0);
        assert!(rgamma(175.0) > 0.0 && rgamma(175.0) < 1e-300);
        assert_eq!(rgamma(200.0), 0.0);
    }

    #[test]
    fn trig_exact_zeros() {
        for k in -6..6 {
            assert_eq!(sin_pi(k as f64), 0.0);
            assert_eq!(cos_pi(k as f64 + 0.5), 0.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((cos_pi(1.0) + 1.0).abs() < 1e-16);
        for &x in &[0.1, 0.3, 0.7, 1.2, 1.9, -0.4, 2.25] {
            assert!((sin_pi(x) - (PI * x).sin()).abs() < 1e-15);
            assert!((cos_pi(x) - (PI * x).cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[0.3, 1.7, 10.5, 50.25] {
            assert!((ln_gamma(x).unwrap() - gamma(x).unwrap().ln()).abs() < 1e-13);
        }
        assert!(ln_gamma(-1.0).is_err());
        assert!((ln_gamma(1000.0).unwrap() - 5_905.220_423_209_181).abs() < 1e-9);
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite2(3, 2.0, 1.0).unwrap(), 20.0);
        assert_eq!(hermite2(2, 2.0, -1.0).unwrap(), 2.0);
        assert_eq!(hermite2(0, 5.0, 7.0).unwrap(), 1.0);
        assert!(matches!(
            hermite2(201, 1.0, 1.0),
            Err(Error::DegreeLimit { .. })
        ));
        assert_eq!(Hermite2Coeffs::new(4).unwrap().coeffs(), &[1.0, 12.0, 12.0]);
    }
}
