//! Complete DPLL: two-watched-literal unit propagation, branching on the
//! first unassigned variable with the positive phase first, chronological
//! backtracking. Deterministic.

use super::SolverResult;
use crate::cnf::{Cnf, Lit};

const UNDEF: u8 = 2;

struct Dpll {
    clauses: Vec<Vec<Lit>>,
    /// literal code -> clauses watching that literal
    watches: Vec<Vec<usize>>,
    values: Vec<u8>,
    trail: Vec<Lit>,
    qhead: usize,
    /// (trail length before the decision, decision literal, already flipped)
    decisions: Vec<(usize, Lit, bool)>,
}

impl Dpll {
    fn value(&self, l: Lit) -> Option<bool> {
        match self.values[l.var().index()] {
            UNDEF => None,
            v => Some((v == 1) == l.is_positive()),
        }
    }

    fn assign(&mut self, l: Lit) {
        self.values[l.var().index()] = l.is_positive() as u8;
        self.trail.push(l);
    }

    /// Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let falsified = !self.trail[self.qhead];
            self.qhead += 1;
            let watchers = std::mem::take(&mut self.watches[falsified.code()]);
            let mut keep = Vec::with_capacity(watchers.len());
            let mut conflict = false;
            let mut iter = watchers.into_iter();
            for ci in iter.by_ref() {
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                let first_val = match self.values[first.var().index()] {
                    UNDEF => None,
                    v => Some((v == 1) == first.is_positive()),
                };
                if first_val == Some(true) {
                    keep.push(ci);
                    continue;
                }
                let replacement = (2..clause.len()).find(|&k| {
                    let l = clause[k];
                    match self.values[l.var().index()] {
                        UNDEF => true,
                        v => (v == 1) == l.is_positive(),
                    }
                });
                if let Some(k) = replacement {
                    clause.swap(1, k);
                    let new_watch = clause[1];
                    self.watches[new_watch.code()].push(ci);
                    continue;
                }
                keep.push(ci);
                if first_val == Some(false) {
                    conflict = true;
                    break;
                }
                self.assign(first);
            }
            keep.extend(iter);
            self.watches[falsified.code()] = keep;
            if conflict {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for l in self.trail.drain(len..) {
            self.values[l.var().index()] = UNDEF;
        }
        self.qhead = self.qhead.min(len);
    }

    /// Flips the most recent unflipped decision; false when none is left.
    fn backtrack(&mut self) -> bool {
        while let Some((pos, lit, flipped)) = self.decisions.pop() {
            self.undo_to(pos);
            if !flipped {
                self.decisions.push((pos, !lit, true));
                self.assign(!lit);
                return true;
            }
        }
        false
    }
}

pub fn builtin_solve(cnf: &Cnf) -> SolverResult {
    let n = cnf.num_vars() as usize;
    let mut solver = Dpll {
        clauses: Vec::new(),
        watches: vec![Vec::new(); 2 * n],
        values: vec![UNDEF; n],
        trail: Vec::new(),
        qhead: 0,
        decisions: Vec::new(),
    };
    let mut units = Vec::new();
    for c in cnf.clauses() {
        match c.len() {
            0 => return SolverResult::Unsat,
            1 => units.push(c.lits()[0]),
            _ if c.is_tautological() => {}
            _ => {
                let lits = c.lits().to_vec();
                let ci = solver.clauses.len();
                solver.watches[lits[0].code()].push(ci);
                solver.watches[lits[1].code()].push(ci);
                solver.clauses.push(lits);
            }
        }
    }
    for u in units {
        match solver.value(u) {
            Some(true) => {}
            Some(false) => return SolverResult::Unsat,
            None => solver.assign(u),
        }
    }

    let mut next_var = 0;
    loop {
        if !solver.propagate() {
            if !solver.backtrack() {
                return SolverResult::Unsat;
            }
            next_var = 0;
            continue;
        }
        while next_var < n && solver.values[next_var] != UNDEF {
            next_var += 1;
        }
        if next_var == n {
            let model = solver.values.iter().map(|&v| v == 1).collect();
            return SolverResult::Sat(model);
        }
        let decision = crate::cnf::Var(next_var as u32).pos();
        solver.decisions.push((solver.trail.len(), decision, false));
        solver.assign(decision);
    }
}
