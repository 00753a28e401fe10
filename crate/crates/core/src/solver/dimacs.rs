use std::fmt::Write as _;
use std::io::{self, Write};

use super::SolverError;
use crate::cnf::{Clause, Cnf, Lit};
use crate::error::{Error, Result};

/// DIMACS text with variables numbered from 1.
pub fn to_dimacs(cnf: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.num_vars(), cnf.len());
    for c in cnf.clauses() {
        for l in c.lits() {
            write!(out, "{} ", l.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

pub fn write_dimacs(cnf: &Cnf, w: &mut impl Write) -> io::Result<()> {
    w.write_all(to_dimacs(cnf).as_bytes())
}

/// Parses DIMACS CNF. Comment lines are skipped and clauses may span lines.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(u32, usize)> = None;
    let mut cnf = Cnf::new(0);
    let mut current: Vec<Lit> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", v, c] => {
                    let v = v.parse().map_err(|_| syntax(line_no, "bad variable count"))?;
                    let c = c.parse().map_err(|_| syntax(line_no, "bad clause count"))?;
                    header = Some((v, c));
                    cnf.ensure_vars(v);
                }
                _ => return Err(syntax(line_no, "expected `p cnf <vars> <clauses>`")),
            }
            continue;
        }
        if header.is_none() {
            return Err(syntax(line_no, "clause before header"));
        }
        for tok in line.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| syntax(line_no, &format!("bad literal `{tok}`")))?;
            if x == 0 {
                cnf.push(Clause::new(current.drain(..)));
            } else {
                current.push(Lit::from_dimacs(x).ok_or_else(|| syntax(line_no, "bad literal"))?);
            }
        }
    }
    if !current.is_empty() {
        cnf.push(Clause::new(current));
    }
    match header {
        None => Err(syntax(0, "missing `p cnf` header")),
        Some((_, c)) if c != cnf.len() => Err(Error::Semantic(format!(
            "header announces {c} clauses, found {}",
            cnf.len()
        ))),
        Some(_) => Ok(cnf),
    }
}

fn syntax(line: usize, msg: &str) -> Error {
    Error::Syntax { line, msg: msg.to_owned() }
}

/// Status and values read from SAT-competition style output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverOutput {
    /// `Some(true)` for SATISFIABLE, `Some(false)` for UNSATISFIABLE.
    pub status: Option<bool>,
    pub values: Vec<i64>,
}

/// Reads `s` and `v` lines; other lines are ignored.
pub fn parse_solver_output(stdout: &str) -> Result<SolverOutput, SolverError> {
    let mut status = None;
    let mut values = Vec::new();
    for line in stdout.lines() {
        let line = line.trim_end();
        if let Some(rest) = line.strip_prefix("s ") {
            status = match rest.trim() {
                "SATISFIABLE" => Some(true),
                "UNSATISFIABLE" => Some(false),
                other => return Err(SolverError::Malformed(format!("unknown status `{other}`"))),
            };
        } else if let Some(rest) = line.strip_prefix("v ").or_else(|| (line == "v").then_some("")) {
            for tok in rest.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| SolverError::Malformed(format!("value line `{line}`")))?;
                if x != 0 {
                    values.push(x);
                }
            }
        }
    }
    Ok(SolverOutput { status, values })
}
