use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("disconnected diagram: generator sigma_{0} never occurs")]
    DisconnectedDiagram(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("parity error: {0}")]
    Parity(String),
    #[error("negative genus: c - s + 2 - l = {0}")]
    NegativeGenus(i64),
    #[error("polynomial is not representable in z = x - 1/x")]
    NotRepresentable,
    #[error("coefficient does not fit in 64 bits")]
    Overflow,
    #[error("uncovered case: {0}")]
    UncoveredCase(String),
    #[error("odd pretzel parameter {0}")]
    OddParam(i64),
    #[error("pretzel parameter must be nonzero")]
    ZeroParam,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax(_) => "syntax_error",
            Error::Range(_) => "range_error",
            Error::DisconnectedDiagram(_) => "disconnected_diagram",
            Error::SelfLoop(_) => "self_loop",
            Error::NotConnected => "not_connected",
            Error::NotBipartite => "not_bipartite",
            Error::Parity(_) => "parity_error",
            Error::NegativeGenus(_) => "negative_genus",
            Error::NotRepresentable => "not_representable",
            Error::Overflow => "overflow",
            Error::UncoveredCase(_) => "uncovered_case",
            Error::OddParam(_) => "odd_param",
            Error::ZeroParam => "zero_param",
            Error::InvalidInput(_) => "invalid_input",
            Error::Internal(_) => "internal",
        }
    }

    /// Internal errors signal a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::NotRepresentable | Error::Overflow)
    }
}
