//! Sequential-counter encoding of "at most k of these literals are true".

use crate::cnf::{Clause, Lit, Var};
use crate::encoding::{Encoding, Role};

/// Clauses enforcing that at most `k` of `lits` are true, over auxiliaries
/// drawn from `fresh`. Uses `O(|lits| · k)` clauses and registers.
pub fn at_most_k(lits: &[Lit], k: usize, mut fresh: impl FnMut() -> Var) -> Vec<Clause> {
    let n = lits.len();
    if k >= n {
        return Vec::new();
    }
    if k == 0 {
        return lits.iter().map(|&l| Clause::unit(!l)).collect();
    }
    // r[i][j]: at least j+1 of lits[..=i] are true
    let r: Vec<Vec<Var>> = (0..n - 1).map(|_| (0..k).map(|_| fresh()).collect()).collect();
    let mut out = Vec::new();
    out.push(Clause::new([!lits[0], r[0][0].pos()]));
    out.extend(r[0][1..].iter().map(|v| Clause::unit(v.neg())));
    for i in 1..n - 1 {
        out.push(Clause::new([!lits[i], r[i][0].pos()]));
        out.push(Clause::new([r[i - 1][0].neg(), r[i][0].pos()]));
        for j in 1..k {
            out.push(Clause::new([!lits[i], r[i - 1][j - 1].neg(), r[i][j].pos()]));
            out.push(Clause::new([r[i - 1][j].neg(), r[i][j].pos()]));
        }
        out.push(Clause::new([!lits[i], r[i - 1][k - 1].neg()]));
    }
    out.push(Clause::new([!lits[n - 1], r[n - 2][k - 1].neg()]));
    out
}

/// Restricts `enc` to models where at most `k` projected hypotheses are true.
pub fn restrict_solution_size(enc: &mut Encoding, k: usize) {
    let lits: Vec<Lit> = enc.projection.vars.iter().map(|&(_, v)| v.pos()).collect();
    let clauses = at_most_k(&lits, k, || enc.fresh(Role::Counter));
    enc.add_clauses(clauses);
}
