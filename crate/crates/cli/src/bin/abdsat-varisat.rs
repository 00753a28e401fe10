//! DIMACS-in, SAT-competition-out wrapper around the varisat CDCL solver.
//!
//! Usage: `abdsat-varisat <file.cnf>`. Prints `s SATISFIABLE` with a `v`
//! line and exits with 10, or prints `s UNSATISFIABLE` and exits with 20.

use std::fs::File;
use std::process::ExitCode;

use varisat::Solver;

fn main() -> ExitCode {
    let Some(path) = std::env::args().nth(1) else {
        eprintln!("usage: abdsat-varisat <file.cnf>");
        return ExitCode::from(1);
    };
    let file = match File::open(&path) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{path}: {e}");
            return ExitCode::from(1);
        }
    };
    let mut solver = Solver::new();
    if let Err(e) = solver.add_dimacs_cnf(file) {
        eprintln!("{path}: {e}");
        return ExitCode::from(1);
    }
    match solver.solve() {
        Ok(true) => {
            let mut line = String::from("v");
            for lit in solver.model().unwrap_or_default() {
                line.push_str(&format!(" {}", lit.to_dimacs()));
            }
            println!("s SATISFIABLE\n{line} 0");
            ExitCode::from(10)
        }
        Ok(false) => {
            println!("s UNSATISFIABLE");
            ExitCode::from(20)
        }
        Err(e) => {
            eprintln!("solver error: {e}");
            ExitCode::from(1)
        }
    }
}
