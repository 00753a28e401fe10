//! SAT solving: DIMACS serialization, the built-in DPLL solver, and
//! external solvers speaking DIMACS in and SAT-competition output out.

mod dimacs;
mod dpll;
mod external;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dimacs::{parse_dimacs, parse_solver_output, to_dimacs, write_dimacs, SolverOutput};
pub use dpll::builtin_solve;
pub use external::ExternalSolver;

use crate::cnf::Cnf;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("external solver `{0}` not found")]
    NotFound(String),

    #[error("external solver exited with {code:?} without a status line")]
    NoStatus { code: Option<i32>, stderr: String },

    #[error("malformed solver output: {0}")]
    Malformed(String),

    #[error("solver model does not satisfy the query formula")]
    InvalidModel,

    #[error("empty solver command")]
    EmptyCommand,

    #[error("solver io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolverResult {
    /// A total model, indexed by variable.
    Sat(Vec<bool>),
    Unsat,
}

impl SolverResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolverResult::Sat(_))
    }

    pub fn model(&self) -> Option<&[bool]> {
        match self {
            SolverResult::Sat(m) => Some(m),
            SolverResult::Unsat => None,
        }
    }

    pub fn status(&self) -> &'static str {
        if self.is_sat() {
            "SATISFIABLE"
        } else {
            "UNSATISFIABLE"
        }
    }
}

/// Which solver answers queries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Solver {
    #[default]
    Builtin,
    External(ExternalSolver),
}

impl Solver {
    /// External solver from a command template (see [`ExternalSolver`]).
    pub fn external(template: &str) -> Self {
        Solver::External(ExternalSolver::new(template))
    }

    pub fn external_program(program: impl Into<PathBuf>) -> Self {
        Solver::External(ExternalSolver::program(program))
    }

    /// Solves `cnf`; every returned model is checked against `cnf`.
    pub fn solve(&self, cnf: &Cnf) -> Result<SolverResult, SolverError> {
        let result = match self {
            Solver::Builtin => builtin_solve(cnf),
            Solver::External(ext) => ext.solve(cnf)?,
        };
        if let SolverResult::Sat(model) = &result {
            if model.len() < cnf.num_vars() as usize || !cnf.is_satisfied_by_model(model) {
                return Err(SolverError::InvalidModel);
            }
        }
        Ok(result)
    }
}

/// Solves with the built-in solver.
pub fn solve(cnf: &Cnf) -> SolverResult {
    builtin_solve(cnf)
}
