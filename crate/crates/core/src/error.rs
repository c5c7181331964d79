use thiserror::Error;

/// Errors produced by evaluators, quadrature and the identity registry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at x = {0}")]
    Pole(f64),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degree {degree} exceeds the supported maximum {limit}")]
    DegreeLimit { degree: usize, limit: usize },
    #[error("order {order} exceeds the supported maximum {limit}")]
    OrderLimit { order: usize, limit: usize },
    #[error("series did not converge within {max_terms} terms")]
    NonConvergence { max_terms: usize },
    #[error("parameter pole: {0}")]
    ParameterPole(String),
    #[error("integrand returned {value} at x = {x}")]
    NonFiniteIntegrand { x: f64, value: f64 },
    #[error("node count {nodes} outside [{min}, {max}]")]
    NodeLimit { nodes: usize, min: usize, max: usize },
    #[error("invalid quadrature plan: {0}")]
    InvalidPlan(String),
    #[error("sequence acceleration failed: {0}")]
    AccelerationDivergence(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("parameter `{name}` = {value} outside its domain {domain}")]
    OutOfDomain {
        name: String,
        value: f64,
        domain: String,
    },
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("unexpected parameter `{0}`")]
    UnknownParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
