//! Solution enumeration with blocking clauses and relevance queries.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::backdoor::Backdoor;
use crate::cardinality::restrict_solution_size;
use crate::cnf::{Clause, Var};
use crate::encoding::Encoding;
use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::solv::{encode_solv, SolvOptions};
use crate::solver::{Solver, SolverResult};
use crate::subset_min::{encode_subsetmin, MinOptions};

/// Distinct projected solutions of an encoding, one solver call each. A
/// blocking clause over the projection variables removes every model with
/// the same projection before the next call.
pub struct Enumerator<'a> {
    enc: Encoding,
    solver: &'a Solver,
    done: bool,
}

impl<'a> Enumerator<'a> {
    pub fn new(enc: Encoding, solver: &'a Solver) -> Self {
        Enumerator { enc, solver, done: false }
    }
}

impl Iterator for Enumerator<'_> {
    type Item = Result<Solution>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let model = match self.solver.solve(&self.enc.cnf) {
            Ok(SolverResult::Sat(model)) => model,
            Ok(SolverResult::Unsat) => {
                self.done = true;
                return None;
            }
            Err(e) => {
                self.done = true;
                return Some(Err(e.into()));
            }
        };
        let s = match self.enc.decode(&model) {
            Ok(s) => s,
            Err(e) => {
                self.done = true;
                return Some(Err(e));
            }
        };
        let blocking = Clause::new(
            self.enc.projection.vars.iter().map(|&(h, v)| if s.contains(h) { v.neg() } else { v.pos() }),
        );
        self.enc.add_clauses([blocking]);
        Some(Ok(s))
    }
}

/// Every distinct projection of `enc`, in discovery order.
pub fn enumerate(enc: &Encoding, solver: &Solver) -> Result<Vec<Solution>> {
    Enumerator::new(enc.clone(), solver).collect()
}

/// All solutions of size at most `max_size` (all solutions when `None`),
/// sorted.
pub fn enumerate_solutions(
    p: &Instance,
    b: &Backdoor,
    opts: &SolvOptions,
    max_size: Option<usize>,
    solver: &Solver,
) -> Result<Vec<Solution>> {
    let mut enc = encode_solv(p, b, &SolvOptions { decoupled: true, ..*opts })?;
    if let Some(k) = max_size {
        restrict_solution_size(&mut enc, k);
    }
    let mut out = enumerate(&enc, solver)?;
    out.sort();
    Ok(out)
}

/// All subset-minimal solutions, sorted: `{∅}` when the empty set is a
/// solution, otherwise the union over every hypothesis `h*` of the minimal
/// solutions containing `h*`.
pub fn enumerate_minimal(p: &Instance, b: &Backdoor, opts: &MinOptions, solver: &Solver) -> Result<Vec<Solution>> {
    let mut empty = encode_solv(p, b, &SolvOptions { decoupled: true, ..opts.solv })?;
    restrict_solution_size(&mut empty, 0);
    if solver.solve(&empty.cnf)?.is_sat() {
        return Ok(vec![Solution::default()]);
    }
    let mut found = BTreeSet::new();
    for &h in p.hyps() {
        let enc = encode_subsetmin(p, b, h, opts)?;
        for s in Enumerator::new(enc, solver) {
            found.insert(s?);
        }
    }
    Ok(found.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelevanceMode {
    /// `h*` occurs in some solution.
    AnySolution,
    /// `h*` occurs in some subset-minimal solution.
    MinimalSolution,
}

/// Decides relevance of `h_star`, returning a witness solution if relevant.
pub fn relevance_witness(
    p: &Instance,
    b: &Backdoor,
    h_star: Var,
    mode: RelevanceMode,
    opts: &MinOptions,
    solver: &Solver,
) -> Result<Option<Solution>> {
    if !p.is_hyp(h_star) {
        let name = if h_star.index() < p.num_vars() { p.names().name(h_star).to_owned() } else { h_star.to_string() };
        return Err(Error::NotAHypothesis(name));
    }
    let enc = match mode {
        RelevanceMode::AnySolution => {
            let mut enc = encode_solv(p, b, &SolvOptions { decoupled: true, ..opts.solv })?;
            let s = enc.solution_var(h_star).expect("decoupled encodings project every hypothesis");
            enc.add_clauses([Clause::unit(s.pos())]);
            enc
        }
        RelevanceMode::MinimalSolution => encode_subsetmin(p, b, h_star, opts)?,
    };
    match solver.solve(&enc.cnf)? {
        SolverResult::Sat(model) => Ok(Some(enc.decode(&model)?)),
        SolverResult::Unsat => Ok(None),
    }
}

pub fn relevance(p: &Instance, b: &Backdoor, h_star: Var, mode: RelevanceMode) -> Result<bool> {
    Ok(relevance_witness(p, b, h_star, mode, &MinOptions::default(), &Solver::Builtin)?.is_some())
}
