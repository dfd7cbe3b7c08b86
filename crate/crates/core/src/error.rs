use thiserror::Error;

use crate::automata::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid machine: {}", format_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("malformed configuration: {0}")]
    MalformedConfiguration(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("stroke decomposition is undefined for a stuck run (stuck at position {0})")]
    StuckTrace(usize),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
