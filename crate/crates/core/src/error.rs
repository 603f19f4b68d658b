use thiserror::Error;

/// A numeric evaluation left the domain of a function.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("log of non-positive value {0}")]
    LogNonPositive(f64),
    #[error("sqrt of negative value {0}")]
    SqrtNegative(f64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite result in {0}")]
    NonFinite(&'static str),
    #[error("metric coefficient G = {value} is not positive at t = {t}, theta = {theta}")]
    NonPositiveMetric { t: f64, theta: f64, value: f64 },
}

/// Malformed metric expression text.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("parse error at byte {offset}: expected {}", expected.join(" | "))]
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
    },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                *offset
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("model invalid: {0}")]
    Invalid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown surface `{0}`")]
    UnknownSurface(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("boundary length mu({h}) = {mu} is not positive")]
    NonPositiveMu { h: f64, mu: f64 },
    #[error("invalid schedule: {0}")]
    Schedule(String),
    #[error("invalid tolerance: {0}")]
    Tolerance(String),
}

/// Input errors surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum InputError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
