//! Helpers shared by the integration tests: proptest strategies for small
//! formulas and truth-table reasoning independent of the library.

#![allow(dead_code)]

use abdsat::{Clause, Cnf, Formula, Lit, Var};
use proptest::prelude::*;

pub fn lit_strategy(num_vars: u32) -> impl Strategy<Value = Lit> {
    (0..num_vars, any::<bool>()).prop_map(|(v, p)| Lit::new(Var(v), p))
}

/// Random CNF over exactly `num_vars` variables.
pub fn cnf_strategy(num_vars: u32, max_clauses: usize, max_width: usize) -> impl Strategy<Value = Cnf> {
    prop::collection::vec(prop::collection::vec(lit_strategy(num_vars), 0..=max_width), 0..=max_clauses)
        .prop_map(move |cs| Cnf::from_clauses(num_vars, cs.into_iter().map(Clause::new)))
}

/// Random CNF with a random variable count in `1..=max_vars`.
pub fn any_cnf(max_vars: u32, max_clauses: usize, max_width: usize) -> impl Strategy<Value = Cnf> {
    (1..=max_vars).prop_flat_map(move |n| cnf_strategy(n, max_clauses, max_width))
}

/// Random Horn formula: clauses keep at most their first positive literal.
pub fn horn_strategy(num_vars: u32, max_clauses: usize, max_width: usize) -> impl Strategy<Value = Cnf> {
    cnf_strategy(num_vars, max_clauses, max_width).prop_map(move |cnf| {
        Cnf::from_clauses(
            num_vars,
            cnf.clauses().iter().map(|c| {
                let mut seen = false;
                Clause::new(c.lits().iter().map(|&l| {
                    if l.is_positive() && std::mem::replace(&mut seen, true) {
                        !l
                    } else {
                        l
                    }
                }))
            }),
        )
    })
}

/// Random Krom formula with clauses of width at most 2.
pub fn krom_strategy(num_vars: u32, max_clauses: usize) -> impl Strategy<Value = Cnf> {
    cnf_strategy(num_vars, max_clauses, 2)
}

pub fn formula_strategy(num_vars: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => any::<bool>().prop_map(Formula::constant),
        6 => (0..num_vars).prop_map(|v| Formula::atom(Var(v))),
    ];
    leaf.prop_recursive(5, 40, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            prop::collection::vec(inner.clone(), 0..4).prop_map(Formula::and),
            prop::collection::vec(inner.clone(), 0..4).prop_map(Formula::or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

pub fn bit(mask: u64, v: Var) -> bool {
    mask >> v.0 & 1 == 1
}

/// Clause truth under a total bitmask assignment, tautologies included.
pub fn clause_holds(c: &Clause, mask: u64) -> bool {
    c.is_tautological() || c.lits().iter().any(|l| bit(mask, l.var()) == l.is_positive())
}

pub fn cnf_holds(cnf: &Cnf, mask: u64) -> bool {
    cnf.clauses().iter().all(|c| clause_holds(c, mask))
}

/// Every total assignment over the first `n` variables satisfying `cnf`.
pub fn models(cnf: &Cnf, n: u32) -> Vec<u64> {
    (0..1u64 << n).filter(|&m| cnf_holds(cnf, m)).collect()
}

pub fn entails(cnf: &Cnf, n: u32, c: &Clause) -> bool {
    models(cnf, n).iter().all(|&m| clause_holds(c, m))
}

pub fn mask_to_model(mask: u64, n: u32) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// Every non-tautological clause over the first `n` variables.
pub fn all_clauses(n: u32) -> Vec<Clause> {
    let mut out = Vec::new();
    for code in 0..3u64.pow(n) {
        let mut lits = Vec::new();
        let mut rest = code;
        for v in 0..n {
            match rest % 3 {
                1 => lits.push(Var(v).pos()),
                2 => lits.push(Var(v).neg()),
                _ => {}
            }
            rest /= 3;
        }
        out.push(Clause::new(lits));
    }
    out
}

/// Every subset of `vars` of size at most `k`.
pub fn subsets_up_to(vars: &[Var], k: usize) -> Vec<Vec<Var>> {
    (0..1u64 << vars.len())
        .filter(|m| m.count_ones() as usize <= k)
        .map(|m| vars.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &v)| v).collect())
        .collect()
}

/// Seeded corpus instances with their planted backdoors, verified.
pub fn corpus(class: abdsat::BaseClass, seeds: std::ops::Range<u64>) -> Vec<(abdsat::Instance, abdsat::Backdoor)> {
    seeds
        .map(|seed| {
            let (p, planted) = abdsat::instance::corpus_instance(seed, class).unwrap();
            let b = abdsat::Backdoor::verified(p.theory(), planted, class).unwrap();
            (p, b)
        })
        .collect()
}

/// Every subset of the hypotheses of `p`.
pub fn all_candidates(p: &abdsat::Instance) -> Vec<abdsat::Solution> {
    (0..1u64 << p.hyps().len()).map(|m| abdsat::Solution::from_mask(p.hyps(), m)).collect()
}
