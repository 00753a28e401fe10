//! Parametric instance families for measuring encoding size.
//!
//! Both families have exactly `n` variables and a strong backdoor
//! `b0, …, b{k-1}` of size `k` for both base classes. Every backdoor
//! variable occurs in a single clause that reduces to an existing clause
//! or vanishes, so all `2^k` reducts look alike and the blocks of an
//! encoding have nearly equal size.

use super::Instance;
use crate::cnf::{Clause, Cnf, Lit, Var, VarTable};
use crate::error::{Error, Result};

/// An implication chain `h → x0 → … → x{L-1} → m` with `L = n - k - 2`,
/// plus `b_j ∨ x_j ∨ ¬h` for every backdoor variable. The least-model
/// unrolling needs a quadratic number of step variables in `L`.
pub fn horn_chain_family(n: usize, k: usize) -> Result<(Instance, Vec<Var>)> {
    if n < 2 * k + 3 {
        return Err(Error::Semantic(format!("chain family needs n >= 2k + 3, got n = {n}, k = {k}")));
    }
    let len = n - k - 2;
    let mut names = VarTable::new();
    let h = declare(&mut names, "h");
    let m = declare(&mut names, "m");
    let x: Vec<Var> = (0..len).map(|i| declare(&mut names, &format!("x{i}"))).collect();
    let b: Vec<Var> = (0..k).map(|j| declare(&mut names, &format!("b{j}"))).collect();

    let mut theory = Cnf::new(n as u32);
    theory.push(Clause::new([h.neg(), x[0].pos()]));
    for w in x.windows(2) {
        theory.push(Clause::new([w[0].neg(), w[1].pos()]));
    }
    theory.push(Clause::new([x[len - 1].neg(), m.pos()]));
    for (j, &bj) in b.iter().enumerate() {
        theory.push(Clause::new([bj.pos(), x[j].pos(), h.neg()]));
    }
    Ok((Instance::new(names, [h], [m], theory)?, b))
}

/// Hypotheses split into two groups around a hub `c`: `a → c` for the
/// first group, `z → ¬c` for the second, and `c → m`. Resolution derives
/// `¬a ∨ ¬z` for every cross pair, so each Krom block spends a quadratic
/// number of clauses in `n - k - 2` on inconsistency witnesses. Backdoor
/// variable `b_j` occurs in `b_j ∨ ¬a_j ∨ m`.
pub fn krom_pairs_family(n: usize, k: usize) -> Result<(Instance, Vec<Var>)> {
    if n < 2 * k + 4 {
        return Err(Error::Semantic(format!("pairs family needs n >= 2k + 4, got n = {n}, k = {k}")));
    }
    let q = n - k - 2;
    let mut names = VarTable::new();
    let m = declare(&mut names, "m");
    let c = declare(&mut names, "c");
    let hyps: Vec<Var> = (0..q)
        .map(|i| declare(&mut names, &format!("{}{i}", if i % 2 == 0 { 'a' } else { 'z' })))
        .collect();
    let b: Vec<Var> = (0..k).map(|j| declare(&mut names, &format!("b{j}"))).collect();

    let mut theory = Cnf::new(n as u32);
    theory.push(Clause::new([c.neg(), m.pos()]));
    for (i, &h) in hyps.iter().enumerate() {
        theory.push(Clause::new([h.neg(), Lit::new(c, i % 2 == 0)]));
    }
    for (j, &bj) in b.iter().enumerate() {
        theory.push(Clause::new([bj.pos(), hyps[2 * j].neg(), m.pos()]));
    }
    Ok((Instance::new(names, hyps, [m], theory)?, b))
}

fn declare(names: &mut VarTable, name: &str) -> Var {
    names.insert(name).expect("family variable names are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backdoor::{verify_strong_backdoor, BaseClass};

    #[test]
    fn families_have_n_variables_and_a_backdoor_of_size_k() {
        for (n, k) in [(12, 1), (16, 3), (20, 6)] {
            for family in [horn_chain_family, krom_pairs_family] {
                let (p, b) = family(n, k).unwrap();
                assert_eq!(p.num_vars(), n);
                assert_eq!(b.len(), k);
                for class in [BaseClass::Horn, BaseClass::Krom] {
                    assert!(verify_strong_backdoor(p.theory(), &b, class).unwrap());
                }
            }
        }
        assert!(horn_chain_family(4, 1).is_err());
    }
}
