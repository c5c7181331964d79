//! Functions reachable from `umbral eval` and `umbral table`.

use serde::Serialize;

use umbral_special::gamma::{gamma, ln_gamma, rgamma};
use umbral_special::specfun::{
    anger, cyl_j, delta_fn, humbert2, humbert3, hyp1f2, mod_i0, rayleigh_jn, s1, s2, sph_j, sph_j_deriv, struve_h,
    weber,
};
use umbral_special::umbral::{reduce, sph_j0_shifted_integral, sph_j_image, DEFAULT_ORDER};
use umbral_special::{EvalPolicy, Error, Path, Result, SeriesResult};

#[derive(Debug, Clone, Serialize)]
pub struct Output {
    pub value: f64,
    pub path: Option<Path>,
    pub terms_used: Option<usize>,
    pub tail_estimate: Option<f64>,
}

impl From<SeriesResult> for Output {
    fn from(r: SeriesResult) -> Self {
        Self {
            value: r.value,
            path: Some(r.path),
            terms_used: Some(r.terms_used),
            tail_estimate: Some(r.tail_estimate),
        }
    }
}

impl From<f64> for Output {
    fn from(value: f64) -> Self {
        Self {
            value,
            path: None,
            terms_used: None,
            tail_estimate: None,
        }
    }
}

fn order(n: f64) -> Result<usize> {
    if n >= 0.0 {
        Ok(n as usize)
    } else {
        Err(Error::Domain(format!("order must be non-negative, got {n}")))
    }
}

type Eval = fn(&[f64], &EvalPolicy) -> Result<Output>;

pub struct Function {
    pub name: &'static str,
    pub args: &'static [&'static str],
    /// Arguments that must be whole numbers.
    pub integer_args: &'static [&'static str],
    pub summary: &'static str,
    eval: Eval,
}

impl Function {
    pub fn call(&self, args: &[f64], policy: &EvalPolicy) -> Result<Output> {
        (self.eval)(args, policy)
    }
}

pub const FUNCTIONS: &[Function] = &[
    Function {
        name: "sph_j",
        args: &["n", "x"],
        integer_args: &["n"],
        summary: "spherical Bessel j_n(x)",
        eval: |a, p| Ok(sph_j(a[0] as i32, a[1], p)?.into()),
    },
    Function {
        name: "sph_j_deriv",
        args: &["n", "x"],
        integer_args: &["n"],
        summary: "n-th derivative of j_0 at x",
        eval: |a, p| Ok(sph_j_deriv(order(a[0])?, a[1], p)?.into()),
    },
    Function {
        name: "rayleigh",
        args: &["n", "x"],
        integer_args: &["n"],
        summary: "j_n(x) from the Rayleigh closed form",
        eval: |a, _| Ok(rayleigh_jn(order(a[0])?, a[1])?.into()),
    },
    Function {
        name: "sph_j_umbral",
        args: &["n", "x"],
        integer_args: &["n"],
        summary: "j_n(x) through its umbral image",
        eval: |a, _| {
            let (factor, expr) = sph_j_image(order(a[0])? as u32, a[1], DEFAULT_ORDER)?;
            Ok((factor * reduce(&expr)).into())
        },
    },
    Function {
        name: "b_series",
        args: &["x"],
        integer_args: &[],
        summary: "b(t) = Σ b_n tⁿ/n! at t = x via the umbral engine",
        eval: |a, _| Ok(sph_j0_shifted_integral(a[0])?.into()),
    },
    Function {
        name: "cyl_j",
        args: &["nu", "x"],
        integer_args: &[],
        summary: "Bessel J_ν(x)",
        eval: |a, p| Ok(cyl_j(a[0], a[1], p)?.into()),
    },
    Function {
        name: "mod_i0",
        args: &["x"],
        integer_args: &[],
        summary: "modified Bessel I_0(x)",
        eval: |a, p| Ok(mod_i0(a[0], p)?.into()),
    },
    Function {
        name: "struve_h",
        args: &["alpha", "x"],
        integer_args: &[],
        summary: "Struve H_α(x)",
        eval: |a, p| Ok(struve_h(a[0], a[1], p)?.into()),
    },
    Function {
        name: "humbert2",
        args: &["mu", "nu", "x"],
        integer_args: &[],
        summary: "two-index Humbert function J_{μ,ν}(x)",
        eval: |a, p| Ok(humbert2(a[0], a[1], a[2], p)?.into()),
    },
    Function {
        name: "humbert3",
        args: &["mu", "nu", "rho", "x"],
        integer_args: &[],
        summary: "three-index Humbert function J_{μ,ν,ρ}(x)",
        eval: |a, p| Ok(humbert3(a[0], a[1], a[2], a[3], p)?.into()),
    },
    Function {
        name: "hyp1f2",
        args: &["a", "b1", "b2", "x"],
        integer_args: &[],
        summary: "₁F₂(a; b1, b2; x)",
        eval: |a, p| Ok(hyp1f2(a[0], a[1], a[2], a[3], p)?.into()),
    },
    Function {
        name: "delta",
        args: &["alpha", "beta", "gamma", "x"],
        integer_args: &[],
        summary: "Δ_{α,β,γ}(x)",
        eval: |a, p| Ok(delta_fn(a[0], a[1], a[2], a[3], p)?.into()),
    },
    Function {
        name: "s1",
        args: &["nu", "x"],
        integer_args: &[],
        summary: "first Anger-Weber component S₁(ν, x)",
        eval: |a, p| Ok(s1(a[0], a[1], p)?.into()),
    },
    Function {
        name: "s2",
        args: &["nu", "x"],
        integer_args: &[],
        summary: "second Anger-Weber component S₂(ν, x)",
        eval: |a, p| Ok(s2(a[0], a[1], p)?.into()),
    },
    Function {
        name: "anger",
        args: &["nu", "x"],
        integer_args: &[],
        summary: "Anger function 𝐉_ν(x)",
        eval: |a, p| Ok(anger(a[0], a[1], p)?.into()),
    },
    Function {
        name: "weber",
        args: &["nu", "x"],
        integer_args: &[],
        summary: "Weber function 𝐄_ν(x)",
        eval: |a, p| Ok(weber(a[0], a[1], p)?.into()),
    },
    Function {
        name: "gamma",
        args: &["x"],
        integer_args: &[],
        summary: "Γ(x)",
        eval: |a, _| Ok(gamma(a[0])?.into()),
    },
    Function {
        name: "rgamma",
        args: &["x"],
        integer_args: &[],
        summary: "1/Γ(x)",
        eval: |a, _| Ok(rgamma(a[0]).into()),
    },
    Function {
        name: "ln_gamma",
        args: &["x"],
        integer_args: &[],
        summary: "ln Γ(x) for x > 0",
        eval: |a, _| Ok(ln_gamma(a[0])?.into()),
    },
];

pub fn find(name: &str) -> Option<&'static Function> {
    FUNCTIONS.iter().find(|f| f.name == name)
}
