use thiserror::Error;

use crate::solver::SolverError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("invalid instance: {0}")]
    Semantic(String),

    #[error("{what} exceeds the configured limit ({actual} > {limit})")]
    ResourceCap {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("assignment is not total on the formula's variables (missing variable {0})")]
    PartialAssignment(u32),

    #[error("formula is not in the {0} class")]
    NotInClass(crate::backdoor::BaseClass),

    #[error("backdoor verification failed: {0}")]
    BackdoorVerification(String),

    #[error("backdoor class mismatch: expected {expected}, got {got}")]
    WrongClass {
        expected: crate::backdoor::BaseClass,
        got: crate::backdoor::BaseClass,
    },

    #[error("`{0}` is not a hypothesis of the instance")]
    NotAHypothesis(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("assignment does not satisfy the encoding")]
    NotAModel,

    #[error(transparent)]
    Solver(#[from] SolverError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
