//! Special functions of Bessel type evaluated by series, extended-precision
//! series and asymptotic expansions, an umbral operator calculus that maps
//! Gaussian and Laplace-type integrals onto those series, quadrature drivers,
//! and a catalog of integral identities that can be verified numerically.

// `!(x > 0.0)` also rejects NaN; quadrature constants keep their published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
mod exact;
pub mod gamma;
pub mod identities;
pub mod quad;
pub mod specfun;
pub mod sum;
pub mod umbral;

pub use error::{Error, Result};
pub use specfun::{EvalPolicy, Path, SeriesResult};
