mod common;

use abdsat::cardinality::at_most_k;
use abdsat::instance::{oracle_solve, oracle_subset_minimal, random_instance, Limits, Planted};
use abdsat::solver::builtin_solve;
use abdsat::subset_min::decode_minimal_solution;
use abdsat::{
    encode_subsetmin, enumerate_minimal, enumerate_solutions, relevance, BaseClass, Clause, Cnf, Lit, MinOptions,
    RelevanceMode, SolvOptions, Solver, Var,
};
use common::*;
use proptest::prelude::*;

const CLASSES: [BaseClass; 2] = [BaseClass::Horn, BaseClass::Krom];

#[test]
fn subset_min_encoding_matches_the_oracle_on_the_corpus() {
    for class in CLASSES {
        for (p, b) in corpus(class, 0..120) {
            let minimal = oracle_subset_minimal(&p).unwrap();
            for &h in p.hyps() {
                let enc = encode_subsetmin(&p, &b, h, &MinOptions::default()).unwrap();
                let result = builtin_solve(&enc.cnf);
                let expected = minimal.iter().any(|s| s.contains(h));
                assert_eq!(result.is_sat(), expected, "{class}, h = {h:?}, instance:\n{}", p.to_text());
                if let Some(model) = result.model() {
                    let s = decode_minimal_solution(&enc, model).unwrap();
                    assert!(s.contains(h));
                    assert!(minimal.contains(&s), "decoded {:?} is not minimal in\n{}", p.solution_names(&s), p.to_text());
                }
            }
        }
    }
}

#[test]
fn enumeration_matches_the_oracle_on_the_corpus() {
    for class in CLASSES {
        for (p, b) in corpus(class, 0..120) {
            let mut all = oracle_solve(&p).unwrap();
            all.sort();
            let found = enumerate_solutions(&p, &b, &SolvOptions::default(), None, &Solver::Builtin).unwrap();
            assert_eq!(found, all, "{class}, instance:\n{}", p.to_text());
            let small = enumerate_solutions(&p, &b, &SolvOptions::default(), Some(1), &Solver::Builtin).unwrap();
            let expected: Vec<_> = all.iter().filter(|s| s.len() <= 1).cloned().collect();
            assert_eq!(small, expected);
            let min = enumerate_minimal(&p, &b, &MinOptions::default(), &Solver::Builtin).unwrap();
            assert_eq!(min, oracle_subset_minimal(&p).unwrap(), "{class}, instance:\n{}", p.to_text());
        }
    }
}

#[test]
fn relevance_matches_the_oracle_on_the_corpus() {
    for class in CLASSES {
        for (p, b) in corpus(class, 0..60) {
            let all = oracle_solve(&p).unwrap();
            let minimal = oracle_subset_minimal(&p).unwrap();
            for &h in p.hyps() {
                assert_eq!(relevance(&p, &b, h, RelevanceMode::AnySolution).unwrap(), all.iter().any(|s| s.contains(h)));
                assert_eq!(
                    relevance(&p, &b, h, RelevanceMode::MinimalSolution).unwrap(),
                    minimal.iter().any(|s| s.contains(h))
                );
            }
        }
    }
}

#[test]
fn oracle_minimal_solutions_are_an_antichain_covering_all_solutions() {
    for class in CLASSES {
        for (p, _) in corpus(class, 0..200) {
            let all = oracle_solve(&p).unwrap();
            let minimal = oracle_subset_minimal(&p).unwrap();
            for (i, a) in minimal.iter().enumerate() {
                assert!(all.contains(a));
                for c in &minimal[i + 1..] {
                    assert!(!a.is_subset(c) && !c.is_subset(a));
                }
            }
            assert!(all.iter().all(|s| minimal.iter().any(|m| m.is_subset(s))));
        }
    }
}

#[test]
fn random_instances_are_deterministic_and_carry_their_backdoor() {
    let limits = Limits { vars: 7, hyps: 3, mans: 2, clauses: 10, width: 4 };
    for (seed, class, k) in [(1, BaseClass::Horn, 0), (2, BaseClass::Krom, 2), (3, BaseClass::Horn, 3)] {
        let (p, b) = random_instance(seed, limits, Planted { class, k }).unwrap();
        assert!(b.len() <= k);
        assert!(abdsat::backdoor::verify_strong_backdoor(p.theory(), &b, class).unwrap());
        let (q, c) = random_instance(seed, limits, Planted { class, k }).unwrap();
        assert_eq!(p.to_text(), q.to_text());
        assert_eq!(b, c);
    }
}

#[test]
fn skiing_enumeration_with_a_counter() {
    let ex = abdsat::instance::skiing_example();
    let b = abdsat::Backdoor::smallest(ex.theory(), BaseClass::Horn, 3).unwrap();
    let all = enumerate_solutions(&ex, &b, &SolvOptions::default(), None, &Solver::Builtin).unwrap();
    assert_eq!(all.len(), 5);
    let at_most_3 = enumerate_solutions(&ex, &b, &SolvOptions::default(), Some(3), &Solver::Builtin).unwrap();
    assert_eq!(all, at_most_3);
    let none = enumerate_solutions(&ex, &b, &SolvOptions::default(), Some(0), &Solver::Builtin).unwrap();
    assert!(none.is_empty());
}

proptest! {
    #[test]
    fn counter_bounds_the_number_of_true_literals(n in 1u32..=6, k in 0usize..=7, forced in any::<u64>()) {
        let lits: Vec<Lit> = (0..n).map(|i| Var(i).pos()).collect();
        let mut next = n;
        let mut cnf = Cnf::new(n);
        cnf.extend(at_most_k(&lits, k, || {
            next += 1;
            Var(next - 1)
        }));
        let forced: Vec<Var> = (0..n).map(Var).filter(|v| bit(forced, *v)).collect();
        cnf.extend(forced.iter().map(|v| Clause::unit(v.pos())));
        prop_assert_eq!(builtin_solve(&cnf).is_sat(), forced.len() <= k);
    }
}
