use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use super::{dimacs, SolverError, SolverResult};
use crate::cnf::Cnf;

/// A solver process invoked on a DIMACS file.
///
/// The command template is split on whitespace; every `{}` token is replaced
/// by the path of the DIMACS file, which is appended when no token is `{}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalSolver {
    argv: Vec<String>,
}

impl ExternalSolver {
    pub fn new(template: &str) -> Self {
        ExternalSolver { argv: template.split_whitespace().map(str::to_owned).collect() }
    }

    /// A program taking the DIMACS path as its only argument.
    pub fn program(path: impl Into<PathBuf>) -> Self {
        ExternalSolver { argv: vec![path.into().to_string_lossy().into_owned()] }
    }

    pub fn solve(&self, cnf: &Cnf) -> Result<SolverResult, SolverError> {
        let (program, args) = self.argv.split_first().ok_or(SolverError::EmptyCommand)?;
        let mut file = tempfile::Builder::new().suffix(".cnf").tempfile()?;
        file.write_all(dimacs::to_dimacs(cnf).as_bytes())?;
        file.flush()?;
        let path = file.path().to_string_lossy().into_owned();

        let mut args: Vec<String> = args.to_vec();
        if args.iter().any(|a| a == "{}") {
            args.iter_mut().filter(|a| *a == "{}").for_each(|a| *a = path.clone());
        } else {
            args.push(path);
        }
        let output = Command::new(program).args(&args).output().map_err(|e| {
            if e.kind() == std::io::ErrorKind::NotFound {
                SolverError::NotFound(program.clone())
            } else {
                SolverError::Io(e)
            }
        })?;
        let stdout = String::from_utf8_lossy(&output.stdout);
        let parsed = dimacs::parse_solver_output(&stdout)?;
        let code = output.status.code();
        let status = match (parsed.status, code) {
            (Some(s), _) => s,
            (None, Some(10)) => true,
            (None, Some(20)) => false,
            (None, _) => {
                return Err(SolverError::NoStatus {
                    code,
                    stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
                })
            }
        };
        if !status {
            return Ok(SolverResult::Unsat);
        }
        let n = cnf.num_vars() as usize;
        let mut model = vec![false; n];
        for x in parsed.values {
            let v = x.unsigned_abs() as usize;
            if v == 0 || v > n {
                return Err(SolverError::Malformed(format!("value {x} outside 1..={n}")));
            }
            model[v - 1] = x > 0;
        }
        Ok(SolverResult::Sat(model))
    }
}
